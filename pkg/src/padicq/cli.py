"""Command-line frontend: every pipeline as a subcommand with JSON output.

Exit codes: 0 success, 2 usage error, 3 internal verification failure.
Payloads are deterministic (sorted keys); complex numbers are [re, im]
pairs and matrices are row-major.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from . import __version__, clebsch, entangle, gates, reps, universality
from .group import conjugacy_classes, enumerate_group, verify_structure
from .modp import is_prime, make_context

MAX_P = 31


def matrix_json(m) -> list:
    m = np.asarray(m, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def envelope(command: str, parameters: dict, payload: dict, t0: float) -> dict:
    return {
        "command": command,
        "parameters": parameters,
        "payload": payload,
        "elapsed_ms": round((time.perf_counter() - t0) * 1e3, 3),
        "version": __version__,
    }


def _emit(env: dict, fmt: str, csv_text: str | None = None) -> None:
    if fmt == "csv":
        if csv_text is None:
            raise SystemExit(2)
        sys.stdout.write(csv_text)
    else:
        json.dump(env, sys.stdout, sort_keys=True)
        sys.stdout.write("\n")


def _odd_prime(value: str) -> int:
    p = int(value)
    if p == 2 or not is_prime(p) or p > MAX_P:
        raise argparse.ArgumentTypeError(f"p must be an odd prime <= {MAX_P}, got {value}")
    return p


def _prime_or_two(value: str) -> int:
    p = int(value)
    if not is_prime(p) or p > MAX_P:
        raise argparse.ArgumentTypeError(f"p must be a prime <= {MAX_P}, got {value}")
    return p


def cmd_group(args) -> dict:
    t0 = time.perf_counter()
    ctx = make_context(args.p)
    payload: dict = {"p": args.p, "order": len(enumerate_group(ctx))}
    if args.classes:
        table = conjugacy_classes(ctx)
        payload["classes"] = {
            "count": len(table),
            "sizes": list(table.sizes),
            "representatives": [[a, b, c, d, 1 if s == 1 else -1] for (a, b, c, d, s) in table.reps],
        }
    if args.structure:
        report = verify_structure(ctx)
        payload["structure"] = {
            "ok": report.ok,
            "checks": [{"name": n, "ok": ok, "detail": d} for n, ok, d in report.checks],
        }
    return envelope("group", {"p": args.p, "classes": args.classes, "structure": args.structure},
                    payload, t0)


def cmd_chartable(args) -> tuple[dict, str]:
    t0 = time.perf_counter()
    ctx = make_context(args.p)
    table = reps.character_table(ctx)
    env = envelope("chartable", {"p": args.p}, reps.table_to_jsonable(table), t0)
    return env, reps.table_to_csv(table)


def cmd_cg(args) -> dict:
    t0 = time.perf_counter()
    if args.p == 2:
        if (args.j, args.l) != (1, 1):
            raise SystemExit(2)
        sigma = reps.d3_irreps()[2]
        rep_a = rep_b = sigma
    else:
        ctx = make_context(args.p)
        qubits = {ir.label[1]: ir for ir in reps.qubit_irreps(ctx)}
        if args.j not in qubits or args.l not in qubits:
            print(f"error: j, l must lie in 1..{(args.p - 1) // 2}", file=sys.stderr)
            raise SystemExit(2)
        rep_a, rep_b = qubits[args.j], qubits[args.l]
    decomp = clebsch.coupled_basis(rep_a, rep_b)
    block = clebsch.verify_block_diagonal(decomp, rep_a, rep_b)
    if not block.ok:
        raise ArithmeticError(f"block diagonalization failed: {block.first_violation}")
    ent = entangle.analyze_decomposition(decomp)
    payload = clebsch.cg_to_jsonable(decomp)
    payload["entanglement"] = entangle.report_to_jsonable(ent)
    payload["block_check"] = {
        "ok": block.ok,
        "max_offblock": block.max_offblock,
        "max_block_deviation": block.max_block_deviation,
    }
    return envelope("cg", {"p": args.p, "j": args.j, "l": args.l}, payload, t0)


_BASES = {
    "gap": None,
    "b38": ("b38", lambda: gates.BASIS_B38),
    "b1": ("b1", lambda: gates.BASIS_B1),
    "b40": ("b40", lambda: gates.BASIS_B40),
}


def _gate_rep(rep_name: str, basis: str) -> gates.RepImage:
    rep = gates.u2_rep() if rep_name == "u2" else gates.u4_rep()
    if basis != "gap":
        name, make = _BASES[basis]
        rep = gates.rebase(rep, make(), name)
    return rep


def cmd_gates(args) -> dict:
    t0 = time.perf_counter()
    params = {"rep": args.rep, "basis": args.basis, "report": args.report}

    if args.report == "gatesets":
        sets = gates.extract_gate_sets()
        payload = {
            "abu": {k: matrix_json(v) for k, v in sets.abu.items()},
            "g1p3": {k: matrix_json(v) for k, v in sets.g1p3.items()},
            "b40": {k: matrix_json(v) for k, v in sets.b40.items()},
        }
        return envelope("gates", params, payload, t0)

    rep = _gate_rep(args.rep, args.basis)

    if args.report == "factorize":
        rows = []
        counts = {"spectral_unfactorizable": 0, "product": 0, "product_swap": 0, "entangling": 0}
        for g in rep.labels:
            spectral = gates.spectral_factorizable(rep.images[g])
            kind = gates.classify_gate(rep.images[g]).kind
            counts[kind] += 1
            if not spectral:
                counts["spectral_unfactorizable"] += 1
            rows.append({"element": [g[0], g[1], g[2], g[3], 1 if g[4] == 1 else -1],
                         "spectral_factorizable": spectral, "kind": kind})
        return envelope("gates", params, {"counts": counts, "elements": rows}, t0)

    if args.report == "cosets":
        if args.rep != "u2" or args.basis != "b38":
            print("error: the coset report is defined for --rep u2 --basis b38", file=sys.stderr)
            raise SystemExit(2)
        rpt = gates.coset_report(rep)
        if not (rpt.kinds_ok and rpt.klein_ok and rpt.ent_products_in_S
                and rpt.swap_identity_error < 1e-9):
            raise ArithmeticError(f"coset verification failed: {rpt.violations[:3]}")
        payload = {
            "cosets": {
                name: [[a, b, c, d, 1 if s == 1 else -1] for (a, b, c, d, s) in els]
                for name, els in rpt.cosets.items()
            },
            "sizes": {name: len(els) for name, els in rpt.cosets.items()},
            "swap_element": list(rpt.swap_element[:4]) + [1 if rpt.swap_element[4] == 1 else -1],
            "swap_identity_error": rpt.swap_identity_error,
            "klein_quotient_ok": rpt.klein_ok,
            "ent1_times_ent2_in_swap_coset": rpt.ent_products_in_S,
        }
        return envelope("gates", params, payload, t0)

    if args.report == "subgroups":
        search = gates.factorizing_subgroup_search(_gate_rep(args.rep, "gap"), min_order=12)
        payload = {
            "hits": [
                {
                    "order": h.order,
                    "label": h.label,
                    "source": h.source,
                    "beyond_catalog": h.label is None,
                    "elements": [[a, b, c, d, 1 if s == 1 else -1] for (a, b, c, d, s) in sorted(h.elements)],
                    "subset_with_basis_order": len(h.subset_with_basis),
                }
                for h in search.hits
            ],
            "orders": search.orders(),
        }
        return envelope("gates", params, payload, t0)

    raise SystemExit(2)


def cmd_universality(args) -> dict:
    t0 = time.perf_counter()
    sets = gates.extract_gate_sets()
    if args.set == "g1p3":
        rep = universality.verify_universality(
            {"X": gates.GATE_X, "S": gates.GATE_S}, {"CZ": gates.GATE_CZ},
            name="g1p3", cap=args.cap,
            witnesses=universality.infinite_order_witnesses(gates.GATE_S, gates.GATE_CZ),
        )
    elif args.set == "abu":
        rep = universality.verify_universality(
            {"A": gates.GATE_A, "B": gates.GATE_B},
            {"U4": gates.GATE_U4, "U10": gates.GATE_U10},
            name="abu", cap=args.cap,
        )
    else:
        rep = universality.verify_universality(
            {"negX": sets.b40["negX"], "antidiag": sets.b40["antidiag"]},
            {"twoqubit": sets.b40["twoqubit"]},
            name="b40", cap=args.cap, dims=(4, 8, 16),
        )
    return envelope("universality", {"set": args.set, "cap": args.cap},
                    universality.report_to_jsonable(rep), t0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="padicq", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("group", help="order, conjugacy classes and structure of the mod-p rotation group")
    g.add_argument("p", type=_odd_prime)
    g.add_argument("--classes", action="store_true")
    g.add_argument("--structure", action="store_true")
    g.add_argument("--format", choices=("json",), default="json")
    g.set_defaults(func=lambda a: (cmd_group(a), None))

    c = sub.add_parser("chartable", help="full character table")
    c.add_argument("p", type=_odd_prime)
    c.add_argument("--format", choices=("json", "csv"), default="json")
    c.set_defaults(func=lambda a: cmd_chartable(a))

    cg = sub.add_parser("cg", help="coupled basis and entanglement report for two qubit irreps")
    cg.add_argument("p", type=_prime_or_two)
    cg.add_argument("j", type=int)
    cg.add_argument("l", type=int)
    cg.add_argument("--format", choices=("json",), default="json")
    cg.set_defaults(func=lambda a: (cmd_cg(a), None))

    ga = sub.add_parser("gates", help="gate analyses of the 4-dim irreps of the p=3 group")
    ga.add_argument("--rep", choices=("u2", "u4"), default="u2")
    ga.add_argument("--basis", choices=tuple(_BASES), default="gap")
    ga.add_argument("--report", choices=("factorize", "cosets", "subgroups", "gatesets"),
                    required=True)
    ga.add_argument("--format", choices=("json",), default="json")
    ga.set_defaults(func=lambda a: (cmd_gates(a), None))

    un = sub.add_parser("universality", help="closure and density verdict for a gate set")
    un.add_argument("--set", choices=("g1p3", "abu", "b40"), required=True)
    un.add_argument("--cap", type=int, default=200000)
    un.add_argument("--format", choices=("json",), default="json")
    un.set_defaults(func=lambda a: (cmd_universality(a), None))
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.func(args)
        env, csv_text = result if isinstance(result, tuple) else (result, None)
    except SystemExit as exc:
        return int(exc.code or 0)
    except (ArithmeticError, ValueError) as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 3
    fmt = getattr(args, "format", "json")
    if fmt == "csv" and csv_text is None:
        print("error: csv output is only available for tabular payloads", file=sys.stderr)
        return 2
    _emit(env, fmt, csv_text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
