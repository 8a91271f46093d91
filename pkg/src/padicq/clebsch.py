"""Clebsch-Gordan decomposition of a tensor product of two 2-dim irreps.

Multiplicities come from character inner products; the coupled basis is
built by isotypic projection

    P_i = (dim_i / |G|) * sum_g conj(chi_i(g)) (rho_A ⊗ rho_B)(g)

followed by an in-block change of basis that aligns every block with the
reference matrices of its constituent irrep, so the conjugated tensor
representation is block-diagonal with literal irrep blocks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dihedral import DihedralGroup
from .group import GpGroup
from .reps import (TAU, Character, Irrep, Label, char_inner_product,
                   d3_irreps, dihedral_irreps, label_sort_key)

CHAR_INT_TOL = 1e-6


def group_irreps(group) -> list[Irrep]:
    cached = getattr(group, "_irreps_cache", None)
    if cached is not None:
        return cached
    if isinstance(group, DihedralGroup):
        out = d3_irreps() if group.n == 3 else dihedral_irreps(group.n)
    elif isinstance(group, GpGroup):
        from .reps import all_irreps

        out = all_irreps(group.ctx)
    else:
        raise TypeError(f"unsupported group {group!r}")
    group._irreps_cache = out
    return out


def tensor_character(chi1: Character, chi2: Character) -> Character:
    """Pointwise product chi_{rho⊗sigma} = chi_rho * chi_sigma."""
    if len(chi1.values) != len(chi2.values):
        raise ValueError("characters live on different class tables")
    return Character(values=chi1.values * chi2.values, dim=chi1.dim * chi2.dim)


def decompose_characters(rep_a: Irrep, rep_b: Irrep) -> list[tuple[Label, int]]:
    """Constituents of rep_a ⊗ rep_b with multiplicities, by inner products."""
    group = rep_a.group
    if rep_b.group is not group:
        raise ValueError("representations must live on the same group")
    chi = tensor_character(rep_a.character(), rep_b.character())
    out = []
    for ir in group_irreps(group):
        m = char_inner_product(chi, ir.character(), group.class_sizes, group.order)
        if abs(m.imag) > CHAR_INT_TOL or abs(m.real - round(m.real)) > CHAR_INT_TOL:
            raise ArithmeticError(f"non-integer multiplicity {m} for {ir.label}")
        mi = int(round(m.real))
        if mi:
            out.append((ir.label, mi))
    out.sort(key=lambda t: label_sort_key(t[0]))
    total = sum(m * (1 if lab[0] == "1d" else 2) for lab, m in out)
    if total != 4:
        raise ArithmeticError(f"constituent dimensions sum to {total}, not 4")
    return out


def cg_multiplicities(n: int, j: int, l: int) -> list[tuple[Label, int]]:
    """CG constituents of sigma^(j) ⊗ sigma^(l) of D_n (even n >= 4)."""
    irr = {ir.label: ir for ir in dihedral_irreps(n)}
    return decompose_characters(irr[("2d", j)], irr[("2d", l)])


def closed_form_constituents(n: int, j: int, l: int) -> list[tuple[Label, int]]:
    """The closed-form branch for the CG decomposition in D_n.

    Four cases: j = l = n/4 gives the four 1-dim irreps; j = l otherwise
    gives trivial + sign + the doubled-index doublet; j + l = n/2 gives
    the two parity characters + a doublet; everything else splits into
    two doublets with indices |j - l| and the folded j + l.
    """
    half = (n - 2) // 2
    if n % 2 or n < 4:
        raise ValueError("n must be even, n >= 4")
    if not (1 <= j <= half and 1 <= l <= half):
        raise ValueError(f"indices must lie in [1, {half}]")
    one = lambda *labels: [(lab, 1) for lab in labels]
    if j == l:
        if n % 4 == 0 and j == n // 4:
            return one(("1d", 0), ("1d", 1), ("1d", 2), ("1d", 3))
        jj = min(j, n // 2 - j)
        return one(("1d", 0), ("1d", 1), ("2d", 2 * jj))
    if j + l == n // 2:
        return one(("1d", 2), ("1d", 3), ("2d", n // 2 - 2 * min(j, l)))
    alpha, beta = min(j, l), max(j, l)
    m2 = alpha + beta if alpha + beta < n // 2 else n - alpha - beta
    return one(("2d", min(beta - alpha, m2)), ("2d", max(beta - alpha, m2)))


# -- coupled bases ------------------------------------------------------------------

@dataclass
class CGDecomposition:
    constituents: list[tuple[Label, int]]
    basis_change: np.ndarray            # unitary 4x4, columns = coupled basis
    block_layout: list[tuple[Label, int]]

    def block_columns(self, index: int) -> np.ndarray:
        start = sum(d for _, d in self.block_layout[:index])
        return self.basis_change[:, start : start + self.block_layout[index][1]]


def _tensor_images(rep_a: Irrep, rep_b: Irrep) -> np.ndarray:
    A = rep_a.image_stack()
    B = rep_b.image_stack()
    n = A.shape[0]
    return np.einsum("gij,gkl->gikjl", A, B).reshape(n, 4, 4)


def _fix_phase(vec: np.ndarray) -> np.ndarray:
    """Rotate so the first nonvanishing coordinate is real positive."""
    idx = np.argmax(np.abs(vec) > 1e-8)
    return vec * np.exp(-1j * np.angle(vec[idx]))


def _align_block(Q: np.ndarray, tau: np.ndarray, ref: Irrep, elements) -> np.ndarray:
    """Unitary W with (QW)^† tau(g) (QW) == ref(g) for all g (Schur averaging)."""
    d = ref.dim
    block = np.einsum("ai,gab,bj->gij", np.conj(Q), tau, Q)
    refs = ref.image_stack()
    seeds = [np.eye(d, dtype=complex)] + [
        np.outer(np.eye(d)[r], np.eye(d)[c]).astype(complex) for r in range(d) for c in range(d)
    ]
    for Z in seeds:
        S = np.einsum("gij,jk,glk->il", block, Z, np.conj(refs)) * (d / len(elements))
        u, sv, vh = np.linalg.svd(S)
        if sv[-1] < 1e-6:
            continue
        W = u @ vh
        err = np.max(np.abs(np.einsum("ji,gjk,kl->gil", np.conj(W), block, W) - refs))
        if err < 1e-7:
            flat = W.ravel()
            idx = np.argmax(np.abs(flat) > 1e-8)
            return W * np.exp(-1j * np.angle(flat[idx]))
    raise ArithmeticError(f"no intertwiner aligns the block with {ref.label}")


def coupled_basis(rep_a: Irrep, rep_b: Irrep) -> CGDecomposition:
    """Coupled basis of rep_a ⊗ rep_b, blocks ordered (dim, label) ascending.

    One-dimensional constituents get the first-nonzero-real-positive phase
    convention; two-dimensional blocks are aligned so that the conjugated
    representation reproduces the constituent's matrices exactly.
    """
    if rep_a.dim != 2 or rep_b.dim != 2:
        raise ValueError("coupled_basis expects two 2-dimensional irreps")
    group = rep_a.group
    elements = group.elements
    tau = _tensor_images(rep_a, rep_b)
    class_idx = np.array([group.class_index[g] for g in elements])
    constituents = decompose_characters(rep_a, rep_b)
    by_label = {ir.label: ir for ir in group_irreps(group)}

    columns = []
    layout: list[tuple[Label, int]] = []
    for label, mult in constituents:
        ir = by_label[label]
        if mult != 1:
            raise ArithmeticError(f"unexpected multiplicity {mult} for {label}")
        chi_g = ir.character().values[class_idx]
        P = np.einsum("g,gab->ab", np.conj(chi_g), tau) * (ir.dim / len(elements))
        evals, vecs = np.linalg.eigh(P)
        sel = evals > 0.5
        if int(np.sum(sel)) != mult * ir.dim:
            raise ArithmeticError(
                f"isotypic projector rank {int(np.sum(sel))} != {mult * ir.dim} for {label}"
            )
        Q = vecs[:, sel]
        if ir.dim == 1:
            Q = _fix_phase(Q[:, 0]).reshape(4, 1)
        else:
            Q = Q @ _align_block(Q, tau, ir, elements)
        columns.append(Q)
        layout.append((label, ir.dim))
    T = np.hstack(columns)
    if np.max(np.abs(T.conj().T @ T - np.eye(4))) > TAU:
        raise ArithmeticError("coupled basis is not unitary")
    return CGDecomposition(constituents=constituents, basis_change=T, block_layout=layout)


@dataclass
class BlockDiagonalReport:
    ok: bool
    max_offblock: float
    max_block_deviation: float
    first_violation: tuple | None  # (element, row, col, value)


def verify_block_diagonal(decomp: CGDecomposition, rep_a: Irrep, rep_b: Irrep,
                          tol: float = TAU) -> BlockDiagonalReport:
    """Check T^† (rho_A ⊗ rho_B)(g) T is block diagonal with the claimed blocks."""
    group = rep_a.group
    elements = group.elements
    tau = _tensor_images(rep_a, rep_b)
    T = decomp.basis_change
    conj = np.einsum("ai,gab,bj->gij", np.conj(T), tau, T)

    spans = []
    start = 0
    for label, d in decomp.block_layout:
        spans.append((label, start, start + d))
        start += d
    mask = np.ones((4, 4), dtype=bool)
    for _, s, e in spans:
        mask[s:e, s:e] = False

    off = np.abs(conj[:, mask])
    max_off = float(np.max(off)) if off.size else 0.0
    first = None
    if max_off > tol:
        gi = int(np.argmax(np.max(np.abs(conj[:, mask]), axis=1)))
        rows, cols = np.where(mask & (np.abs(conj[gi]) > tol))
        first = (elements[gi], int(rows[0]), int(cols[0]), complex(conj[gi, rows[0], cols[0]]))

    by_label = {ir.label: ir for ir in group_irreps(group)}
    max_dev = 0.0
    for label, s, e in spans:
        refs = by_label[label].image_stack()
        dev = float(np.max(np.abs(conj[:, s:e, s:e] - refs)))
        max_dev = max(max_dev, dev)
        if dev > tol and first is None:
            gi = int(np.argmax(np.max(np.abs(conj[:, s:e, s:e] - refs), axis=(1, 2))))
            first = (elements[gi], s, s, complex(conj[gi, s, s]))
    return BlockDiagonalReport(
        ok=max_off <= tol and max_dev <= tol,
        max_offblock=max_off,
        max_block_deviation=max_dev,
        first_violation=first,
    )


# -- reference constants -------------------------------------------------------------

_SQ2 = 1.0 / np.sqrt(2.0)

# canonical coupled basis of two 2-adic qubits: columns phi+, psi-, phi-, psi+
T2 = np.array(
    [
        [_SQ2, 0, _SQ2, 0],
        [0, _SQ2, 0, _SQ2],
        [0, -_SQ2, 0, _SQ2],
        [_SQ2, 0, -_SQ2, 0],
    ],
    dtype=complex,
)

# the spin singlet/triplet change of basis: columns |00>, psi+, |11>, psi-
SU2_CG_T = np.array(
    [
        [1, 0, 0, 0],
        [0, _SQ2, 0, _SQ2],
        [0, _SQ2, 0, -_SQ2],
        [0, 0, 1, 0],
    ],
    dtype=complex,
)
SU2_BLOCK_LAYOUT = [("triplet", 3), ("singlet", 1)]

_PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def spin_half_rotation(theta: float, axis: str) -> np.ndarray:
    """exp(-i theta sigma_axis / 2)."""
    return np.cos(theta / 2) * np.eye(2) - 1j * np.sin(theta / 2) * _PAULI[axis]


SU2_SAMPLES = [
    spin_half_rotation(theta, axis)
    for axis in ("x", "y", "z")
    for theta in (np.pi / 2, 1.0, 2.3456)
]


def su2_reference_check(samples=None, tol: float = TAU) -> float:
    """Max off-block leakage of T^†(U⊗U)T over the stored spin-1/2 samples."""
    samples = SU2_SAMPLES if samples is None else samples
    worst = 0.0
    for U in samples:
        M = SU2_CG_T.conj().T @ np.kron(U, U) @ SU2_CG_T
        worst = max(worst, float(np.max(np.abs(M[:3, 3]))), float(np.max(np.abs(M[3, :3]))))
    if worst > tol:
        raise ArithmeticError(f"singlet/triplet split failed: leakage {worst}")
    return worst


def cg_to_jsonable(decomp: CGDecomposition) -> dict:
    return {
        "constituents": [["_".join(str(x) for x in lab), m] for lab, m in decomp.constituents],
        "block_layout": [["_".join(str(x) for x in lab), d] for lab, d in decomp.block_layout],
        "T": [[[float(z.real), float(z.imag)] for z in row] for row in decomp.basis_change],
    }
