import numpy as np
import pytest

from padicq.clebsch import (T2, SU2_CG_T, SU2_SAMPLES,
                            cg_multiplicities, cg_to_jsonable,
                            closed_form_constituents, coupled_basis,
                            decompose_characters, su2_reference_check,
                            tensor_character, verify_block_diagonal)
from padicq.dihedral import dihedral_group
from padicq.modp import make_context
from padicq.reps import d3_irreps, dihedral_irreps, qubit_irreps

TAU = 1e-9


def phase_matched_error(T, ref):
    """Max entry error after aligning each column's phase to the reference."""
    T = np.asarray(T)
    out = np.empty_like(T)
    for c in range(T.shape[1]):
        idx = np.argmax(np.abs(ref[:, c]) > 1e-8)
        ph = T[idx, c] / ref[idx, c]
        if abs(abs(ph) - 1) > 1e-6:
            return np.inf
        out[:, c] = T[:, c] / ph
    return float(np.max(np.abs(out - ref)))


def test_tensor_character_d3():
    _, _, sigma2 = d3_irreps()
    sq = tensor_character(sigma2.character(), sigma2.character())
    assert np.allclose(sq.values, [4, 1, 0], atol=TAU)


def test_tensor_with_trivial_is_identity():
    irr = dihedral_irreps(6)
    triv = irr[0]
    for rep in irr:
        prod = tensor_character(triv.character(), rep.character())
        assert np.allclose(prod.values, rep.character().values, atol=TAU)


def test_tensor_character_formula_d8():
    # chi_{1,2}(r^2) = 4 cos(pi/2) cos(pi) = 0
    irr = {r.label: r for r in dihedral_irreps(8)}
    chi = tensor_character(irr[("2d", 1)].character(), irr[("2d", 2)].character())
    grp = dihedral_group(8)
    k = grp.class_index[(0, 2)]
    assert chi.values[k] == pytest.approx(0, abs=TAU)
    for cls_id, rep_word in enumerate(grp.class_reps):
        i, kk = rep_word
        expected = 0.0 if i else 4 * np.cos(2 * np.pi * kk / 8) * np.cos(4 * np.pi * kk / 8)
        assert chi.values[cls_id] == pytest.approx(expected, abs=1e-8)


def test_cg_multiplicity_examples():
    assert cg_multiplicities(4, 1, 1) == [(("1d", 0), 1), (("1d", 1), 1), (("1d", 2), 1), (("1d", 3), 1)]
    assert cg_multiplicities(6, 1, 1) == [(("1d", 0), 1), (("1d", 1), 1), (("2d", 2), 1)]
    assert cg_multiplicities(8, 1, 2) == [(("2d", 1), 1), (("2d", 3), 1)]


def test_cg_closed_form_exhaustive():
    for n in range(4, 34, 2):
        half = (n - 2) // 2
        for j in range(1, half + 1):
            for l in range(j, half + 1):
                assert cg_multiplicities(n, j, l) == closed_form_constituents(n, j, l), (n, j, l)


def test_closed_form_rejects_bad_indices():
    with pytest.raises(ValueError):
        closed_form_constituents(5, 1, 1)
    with pytest.raises(ValueError):
        closed_form_constituents(8, 4, 1)


def test_equivalence_iff_cos_products_agree():
    for n in (8, 12, 16):
        half = (n - 2) // 2
        ks = np.arange(1, n + 1)
        pairs = [(j, l) for j in range(1, half + 1) for l in range(j, half + 1)]
        for j, l in pairs:
            for m, q in pairs:
                lhs = np.cos(2 * np.pi * j * ks / n) * np.cos(2 * np.pi * l * ks / n)
                rhs = np.cos(2 * np.pi * m * ks / n) * np.cos(2 * np.pi * q * ks / n)
                same_char = np.allclose(lhs, rhs, atol=1e-9)
                same_decomp = cg_multiplicities(n, j, l) == cg_multiplicities(n, m, q)
                assert same_char == same_decomp, (n, j, l, m, q)


def test_constituent_dims_always_four():
    for n in range(4, 34, 2):
        half = (n - 2) // 2
        for j in range(1, half + 1):
            for l in range(1, half + 1):
                total = sum(m * (1 if lab[0] == "1d" else 2)
                            for lab, m in cg_multiplicities(n, j, l))
                assert total == 4


def test_coupled_basis_p2_bell():
    sigma2 = d3_irreps()[2]
    dec = coupled_basis(sigma2, sigma2)
    assert dec.block_layout == [(("1d", 0), 1), (("1d", 1), 1), (("2d", 1), 2)]
    assert phase_matched_error(dec.basis_change, T2) < TAU
    assert verify_block_diagonal(dec, sigma2, sigma2).ok


def test_coupled_basis_p3_four_singlets(ctx3):
    q = qubit_irreps(ctx3)[0]
    dec = coupled_basis(q, q)
    assert [d for _, d in dec.block_layout] == [1, 1, 1, 1]
    assert phase_matched_error(dec.basis_change, T2) < TAU
    report = verify_block_diagonal(dec, q, q)
    assert report.ok and report.max_offblock < TAU


def test_coupled_basis_p7_two_doublets():
    ctx = make_context(7)
    q1, q2, _ = qubit_irreps(ctx)
    dec = coupled_basis(q1, q2)
    assert dec.constituents == [(("2d", 1), 1), (("2d", 3), 1)]
    assert phase_matched_error(dec.basis_change, T2) < TAU
    assert verify_block_diagonal(dec, q1, q2).ok


def test_coupled_basis_block_alignment_is_exact(ctx5):
    # the doublet block must literally equal the reference irrep matrices
    q = qubit_irreps(ctx5)[0]
    dec = coupled_basis(q, q)
    report = verify_block_diagonal(dec, q, q)
    assert report.max_block_deviation < TAU


def test_identity_is_block_diagonal(ctx3):
    q = qubit_irreps(ctx3)[0]
    dec = coupled_basis(q, q)
    M = dec.basis_change.conj().T @ np.eye(4) @ dec.basis_change
    assert np.allclose(M, np.eye(4), atol=TAU)


def test_phase_convention_first_nonzero_positive(ctx3):
    q = qubit_irreps(ctx3)[0]
    T = coupled_basis(q, q).basis_change
    for c in range(4):
        col = T[:, c]
        first = col[np.argmax(np.abs(col) > 1e-8)]
        assert abs(first.imag) < TAU and first.real > 0


def test_basis_unitary_all_primes():
    for p in (3, 5, 7):
        ctx = make_context(p)
        qs = qubit_irreps(ctx)
        for i in range(len(qs)):
            for j in range(i, len(qs)):
                T = coupled_basis(qs[i], qs[j]).basis_change
                assert np.max(np.abs(T.conj().T @ T - np.eye(4))) < TAU


def test_mixed_case_still_bell_up_to_permutation(ctx5):
    # (j,l) = (1,2) for p=5 gives t, st and a doublet; the same four Bell
    # vectors appear, in a permuted column order
    q1, q2 = qubit_irreps(ctx5)
    T = coupled_basis(q1, q2).basis_change
    bells = np.column_stack([T2[:, c] for c in range(4)])
    overlap = np.abs(bells.conj().T @ T)
    assert np.allclose(np.sort(overlap, axis=0)[-1], 1, atol=1e-8)
    assert np.allclose(np.sort(overlap, axis=0)[:-1], 0, atol=1e-8)


def test_decompose_rejects_mismatched_groups(ctx3, ctx5):
    a = qubit_irreps(ctx3)[0]
    b = qubit_irreps(ctx5)[0]
    with pytest.raises(ValueError):
        decompose_characters(a, b)


def test_su2_reference():
    assert su2_reference_check() < TAU
    # the singlet column of the reference T is psi-minus
    psi_minus = np.array([0, 1, -1, 0]) / np.sqrt(2)
    assert np.allclose(np.abs(SU2_CG_T[:, 3]), np.abs(psi_minus), atol=TAU)
    for U in SU2_SAMPLES:
        assert np.max(np.abs(U @ U.conj().T - np.eye(2))) < TAU


def test_json_export(ctx3):
    q = qubit_irreps(ctx3)[0]
    dec = coupled_basis(q, q)
    data = cg_to_jsonable(dec)
    assert data["constituents"] == [["1d_0", 1], ["1d_1", 1], ["1d_2", 1], ["1d_3", 1]]
    assert len(data["T"]) == 4 and len(data["T"][0]) == 4
    assert all(len(cell) == 2 for row in data["T"] for cell in row)
