import numpy as np
import pytest

from padicq.clebsch import coupled_basis
from padicq.entangle import (BELL_PHI_MINUS, BELL_PHI_PLUS, BELL_PSI_MINUS,
                             BELL_PSI_PLUS, analyze_decomposition,
                             is_maximally_entangled, max_entangled_pair,
                             partial_trace, partial_transpose, ppt_separable,
                             report_to_jsonable, schmidt, schmidt_rank)
from padicq.modp import make_context
from padicq.reps import d3_irreps, qubit_irreps
from tests.conftest import random_unitary

TAU = 1e-9
BELLS = (BELL_PHI_PLUS, BELL_PHI_MINUS, BELL_PSI_PLUS, BELL_PSI_MINUS)


def proj(v):
    return np.outer(v, v.conj())


def test_schmidt_bell():
    coeffs, _, _ = schmidt(BELL_PHI_PLUS)
    assert np.allclose(coeffs, [1 / np.sqrt(2)] * 2, atol=TAU)
    assert schmidt_rank(BELL_PHI_PLUS) == 2


def test_schmidt_product_state():
    state = np.array([1, 0, 0, 0], dtype=complex)
    coeffs, _, _ = schmidt(state)
    assert np.allclose(coeffs, [1, 0], atol=TAU)
    assert schmidt_rank(state) == 1


def test_schmidt_generic():
    state = np.array([np.sqrt(3) / 2, 0, 0, 0.5], dtype=complex)
    coeffs, basis_a, basis_b = schmidt(state)
    assert np.allclose(coeffs, [np.sqrt(3) / 2, 0.5], atol=TAU)
    rebuilt = sum(
        coeffs[k] * np.kron(basis_a[:, k], basis_b[:, k]) for k in range(2)
    )
    assert np.min(np.abs([np.vdot(rebuilt, state) - 1, np.vdot(rebuilt, state) + 1])) < 1e-8


def test_schmidt_rejects_unnormalized():
    with pytest.raises(ValueError):
        schmidt(np.array([1, 1, 0, 0], dtype=complex))


def test_partial_trace_bell():
    assert np.allclose(partial_trace(proj(BELL_PHI_PLUS), "A"), np.eye(2) / 2, atol=TAU)
    assert np.allclose(partial_trace(proj(BELL_PHI_PLUS), "B"), np.eye(2) / 2, atol=TAU)


def test_partial_trace_product():
    rho_a = np.array([[0.75, 0.1j], [-0.1j, 0.25]])
    rho_b = np.array([[0.5, 0.2], [0.2, 0.5]])
    rho = np.kron(rho_a, rho_b)
    assert np.allclose(partial_trace(rho, "A"), rho_b, atol=TAU)
    assert np.allclose(partial_trace(rho, "B"), rho_a, atol=TAU)


def test_partial_trace_doublet():
    doublet = (proj(BELL_PSI_PLUS) + proj(BELL_PSI_MINUS)) / 2
    assert np.allclose(partial_trace(doublet, "B"), np.eye(2) / 2, atol=TAU)
    assert np.allclose(partial_trace(doublet, "A"), np.eye(2) / 2, atol=TAU)


def test_partial_trace_preserves_trace_and_positivity(rng):
    for _ in range(25):
        # random density operator
        m = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        rho = m @ m.conj().T
        rho = rho / np.trace(rho)
        for sub in ("A", "B"):
            red = partial_trace(rho, sub)
            assert abs(np.trace(red) - 1) < 1e-8
            assert np.min(np.linalg.eigvalsh(red)) > -1e-9


def test_ppt_bell_entangled():
    separable, witness = ppt_separable(proj(BELL_PHI_PLUS))
    assert not separable
    assert witness == pytest.approx(-0.5, abs=1e-9)


def test_ppt_doublet_separable():
    doublet = (proj(BELL_PSI_PLUS) + proj(BELL_PSI_MINUS)) / 2
    separable, witness = ppt_separable(doublet)
    assert separable and witness >= -TAU


def test_ppt_maximally_mixed():
    separable, witness = ppt_separable(np.eye(4) / 4)
    assert separable and witness == pytest.approx(0.25)


def test_ppt_bell_mixture_threshold():
    # mixtures of two Bell projectors are separable exactly when balanced
    for lam, expect in ((0.5, True), (0.75, False)):
        rho = lam * proj(BELL_PSI_PLUS) + (1 - lam) * proj(BELL_PSI_MINUS)
        assert ppt_separable(rho)[0] is expect


def test_partial_transpose_involution(rng):
    m = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    rho = m @ m.conj().T / np.trace(m @ m.conj().T)
    for sub in ("A", "B"):
        assert np.allclose(partial_transpose(partial_transpose(rho, sub), sub), rho, atol=TAU)


def test_bells_maximally_entangled():
    for b in BELLS:
        assert is_maximally_entangled(b)
    assert not is_maximally_entangled(np.array([0, 1, 0, 0], dtype=complex))


def test_local_unitaries_preserve_maximal_entanglement(rng):
    for _ in range(50):
        u = random_unitary(rng, 2)
        v = random_unitary(rng, 2)
        state = np.kron(u, v) @ BELL_PHI_PLUS
        assert is_maximally_entangled(state)


def test_schmidt_local_unitary_invariance(rng):
    state = np.array([0.5, 0.5, 0.5, -0.5], dtype=complex)
    base = schmidt(state)[0]
    for _ in range(100):
        u = random_unitary(rng, 2)
        v = random_unitary(rng, 2)
        coeffs = schmidt(np.kron(u, v) @ state)[0]
        assert np.allclose(coeffs, base, atol=TAU)


def test_analyze_p3_four_singlets(ctx3):
    q = qubit_irreps(ctx3)[0]
    report = analyze_decomposition(coupled_basis(q, q))
    assert report.ok
    assert [b.dim for b in report.blocks] == [1, 1, 1, 1]
    assert all(b.max_entangled for b in report.blocks)


def test_analyze_p2_doublet_separable():
    sigma2 = d3_irreps()[2]
    report = analyze_decomposition(coupled_basis(sigma2, sigma2))
    assert report.ok
    doublet = [b for b in report.blocks if b.dim == 2][0]
    assert doublet.projector_separable and doublet.entangled_basis_found


def test_singlet_triplet_reference_case():
    # the familiar 1 + 3 split: triplet projector separable, singlet maximally entangled
    triplet_cols = np.column_stack(
        [np.array([1, 0, 0, 0]), BELL_PSI_PLUS, np.array([0, 0, 0, 1])]
    ).astype(complex)
    rho_triplet = (triplet_cols @ triplet_cols.conj().T) / 3
    separable, witness = ppt_separable(rho_triplet)
    assert separable and witness >= -TAU
    assert is_maximally_entangled(BELL_PSI_MINUS)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_all_blocks_classified_across_primes(p):
    ctx = make_context(p)
    qs = qubit_irreps(ctx)
    for i in range(len(qs)):
        for j in range(i, len(qs)):
            report = analyze_decomposition(coupled_basis(qs[i], qs[j]))
            assert report.ok, (p, i, j, report)
            for b in report.blocks:
                if b.dim == 1:
                    assert b.max_entangled
                else:
                    assert b.projector_separable


def test_max_entangled_pair_search():
    block = np.column_stack([BELL_PHI_MINUS, BELL_PSI_PLUS])
    assert max_entangled_pair(block) is not None
    # |0> ⊗ C^2 contains no entangled vector at all
    prod_block = np.column_stack(
        [np.array([1, 0, 0, 0]), np.array([0, 1, 0, 0])]
    ).astype(complex)
    assert max_entangled_pair(prod_block) is None


def test_report_jsonable(ctx3):
    q = qubit_irreps(ctx3)[0]
    data = report_to_jsonable(analyze_decomposition(coupled_basis(q, q)))
    assert data["ok"] is True
    assert len(data["blocks"]) == 4
    assert all(isinstance(b["max_entangled"], bool) for b in data["blocks"])
