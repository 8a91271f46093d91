import json
from importlib import resources

import pytest

from padicq.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run_cli(capsys, *argv)
    assert code == 0, out
    return json.loads(out)


def test_group_order(capsys):
    env = run_json(capsys, "group", "5")
    assert env["command"] == "group"
    assert env["payload"]["order"] == 300
    assert set(env) == {"command", "parameters", "payload", "elapsed_ms", "version"}


def test_group_classes(capsys):
    env = run_json(capsys, "group", "3", "--classes")
    assert env["payload"]["classes"]["count"] == 9
    assert sum(env["payload"]["classes"]["sizes"]) == 72


def test_group_structure(capsys):
    env = run_json(capsys, "group", "3", "--structure")
    assert env["payload"]["structure"]["ok"] is True


def test_group_rejects_nonprime(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["group", "4"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit):
        main(["group", "2"])


def test_chartable_json(capsys):
    env = run_json(capsys, "chartable", "7")
    assert len(env["payload"]["labels"]) == 19
    assert len(env["payload"]["values"]) == 19


def test_chartable_csv(capsys):
    code, out = run_cli(capsys, "chartable", "3", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].split(",")[0] == "label"
    assert lines[1].split(",")[0] == "size"
    assert len(lines) == 11


def test_cg_p3(capsys):
    env = run_json(capsys, "cg", "3", "1", "1")
    names = [c[0] for c in env["payload"]["constituents"]]
    assert names == ["1d_0", "1d_1", "1d_2", "1d_3"]
    assert env["payload"]["entanglement"]["ok"] is True


def test_cg_p7_two_doublets(capsys):
    env = run_json(capsys, "cg", "7", "1", "2")
    assert [c[0] for c in env["payload"]["constituents"]] == ["2d_1", "2d_3"]


def test_cg_p5(capsys):
    env = run_json(capsys, "cg", "5", "1", "1")
    assert [c[0] for c in env["payload"]["constituents"]] == ["1d_0", "1d_1", "2d_2"]


def test_cg_p2_surrogate(capsys):
    env = run_json(capsys, "cg", "2", "1", "1")
    assert [c[0] for c in env["payload"]["constituents"]] == ["1d_0", "1d_1", "2d_1"]


def test_cg_bad_index(capsys):
    assert main(["cg", "5", "1", "7"]) == 2


def test_gates_factorize(capsys):
    env = run_json(capsys, "gates", "--rep", "u2", "--report", "factorize")
    assert env["payload"]["counts"]["spectral_unfactorizable"] == 18
    assert len(env["payload"]["elements"]) == 72


def test_gates_cosets(capsys):
    env = run_json(capsys, "gates", "--rep", "u2", "--basis", "b38", "--report", "cosets")
    assert env["payload"]["sizes"] == {"H3": 18, "Ent1": 18, "Ent2": 18, "S": 18}
    assert env["payload"]["swap_identity_error"] < 1e-9
    assert env["payload"]["klein_quotient_ok"] is True


def test_gates_cosets_wrong_basis(capsys):
    assert main(["gates", "--rep", "u2", "--basis", "gap", "--report", "cosets"]) == 2


def test_gates_subgroups(capsys):
    env = run_json(capsys, "gates", "--rep", "u4", "--report", "subgroups")
    assert env["payload"]["orders"][0] == 12
    labels = {h["label"] for h in env["payload"]["hits"]}
    assert {"K1", "K2", "K3", "K4", "K6"} <= labels


def test_gates_gatesets(capsys):
    env = run_json(capsys, "gates", "--report", "gatesets")
    assert env["payload"]["g1p3"]["CZ"][0][0] == [-1.0, 0.0]
    assert set(env["payload"]) == {"abu", "g1p3", "b40"}


def test_universality_abu(capsys):
    env = run_json(capsys, "universality", "--set", "abu")
    assert "finite" in env["payload"]["verdict"]
    assert env["payload"]["steps"][0]["order"] == 10368


def test_universality_g1p3(capsys):
    env = run_json(capsys, "universality", "--set", "g1p3")
    assert env["payload"]["verdict"].startswith("dense in SO(4)")
    assert env["payload"]["closure_dim"] == 6


def test_universality_small_cap(capsys):
    env = run_json(capsys, "universality", "--set", "g1p3", "--cap", "100")
    assert env["payload"]["steps"][0]["kind"] == "exceeds_cap"


def test_deterministic_payloads(capsys):
    env1 = run_json(capsys, "group", "5", "--classes")
    env2 = run_json(capsys, "group", "5", "--classes")
    env1.pop("elapsed_ms")
    env2.pop("elapsed_ms")
    assert json.dumps(env1, sort_keys=True) == json.dumps(env2, sort_keys=True)


def test_csv_rejected_for_nontabular(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["cg", "3", "1", "1", "--format", "csv"])
    assert exc.value.code == 2


def test_schemas_ship_with_package():
    base = resources.files("padicq") / "schemas"
    names = {p.name for p in base.iterdir()}
    assert {
        "envelope.schema.json", "group.schema.json", "chartable.schema.json",
        "cg.schema.json", "gates.schema.json", "universality.schema.json",
    } <= names
    for p in base.iterdir():
        json.loads(p.read_text())
