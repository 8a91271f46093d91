"""Entanglement diagnostics on 2 ⊗ 2: Schmidt form, partial trace and
transpose, the PPT separability test, and the per-block classification of
a coupled-basis decomposition (singlets maximally entangled, larger
blocks with separable normalized projectors).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

TAU = 1e-9

BELL_PHI_PLUS = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)
BELL_PHI_MINUS = np.array([1, 0, 0, -1], dtype=complex) / np.sqrt(2)
BELL_PSI_PLUS = np.array([0, 1, 1, 0], dtype=complex) / np.sqrt(2)
BELL_PSI_MINUS = np.array([0, 1, -1, 0], dtype=complex) / np.sqrt(2)


def _as_state(state) -> np.ndarray:
    v = np.asarray(state, dtype=complex).reshape(4)
    if abs(np.linalg.norm(v) - 1.0) > TAU:
        raise ValueError("state is not normalized")
    return v


def schmidt(state) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Schmidt coefficients (descending) and local bases of a pure state.

    Returns (coeffs, basis_A, basis_B) with state = sum_k coeffs[k] *
    kron(basis_A[:,k], basis_B[:,k]); rank = #coeffs above TAU.
    """
    v = _as_state(state)
    M = v.reshape(2, 2)
    u, s, vh = np.linalg.svd(M)
    return s, u, vh.conj().T


def schmidt_rank(state, tol: float = TAU) -> int:
    return int(np.sum(schmidt(state)[0] > tol))


def _as_density(rho) -> np.ndarray:
    m = np.asarray(rho, dtype=complex)
    if m.shape != (4, 4):
        raise ValueError("density operator must be 4x4")
    if np.max(np.abs(m - m.conj().T)) > TAU:
        raise ValueError("density operator is not Hermitian")
    if abs(np.trace(m) - 1.0) > TAU:
        raise ValueError("density operator must have trace 1")
    if np.min(np.linalg.eigvalsh(m)) < -TAU:
        raise ValueError("density operator is not positive semidefinite")
    return m


def partial_trace(rho, subsystem: str) -> np.ndarray:
    """Trace out subsystem 'A' (first qubit) or 'B' (second qubit)."""
    m = _as_density(rho).reshape(2, 2, 2, 2)  # (iA, iB, jA, jB)
    if subsystem == "A":
        return np.einsum("abac->bc", m)
    if subsystem == "B":
        return np.einsum("abcb->ac", m)
    raise ValueError("subsystem must be 'A' or 'B'")


def partial_transpose(rho, subsystem: str = "B") -> np.ndarray:
    m = np.asarray(rho, dtype=complex).reshape(2, 2, 2, 2)
    if subsystem == "B":
        return np.transpose(m, (0, 3, 2, 1)).reshape(4, 4)
    if subsystem == "A":
        return np.transpose(m, (2, 1, 0, 3)).reshape(4, 4)
    raise ValueError("subsystem must be 'A' or 'B'")


def ppt_separable(rho, tol: float = TAU) -> tuple[bool, float]:
    """PPT test; exact separability decision on 2 ⊗ 2.

    Returns (separable, witness) where witness is the minimal eigenvalue
    of the partial transpose (negative exactly for entangled states).
    """
    _as_density(rho)
    witness = float(np.min(np.linalg.eigvalsh(partial_transpose(rho, "B"))))
    return bool(witness >= -tol), witness


def is_maximally_entangled(state, tol: float = TAU) -> bool:
    """True iff both partial traces of the projector equal I/2."""
    v = _as_state(state)
    proj = np.outer(v, v.conj())
    half = np.eye(2) / 2
    return bool(
        np.max(np.abs(partial_trace(proj, "A") - half)) <= tol
        and np.max(np.abs(partial_trace(proj, "B") - half)) <= tol
    )


def max_entangled_pair(block: np.ndarray, tol: float = TAU) -> np.ndarray | None:
    """An orthonormal pair of maximally entangled states spanning a 2-dim block.

    The block's own columns usually qualify already; otherwise a short
    rotation search inside the block is attempted.
    """
    q1, q2 = block[:, 0], block[:, 1]
    if is_maximally_entangled(q1, tol) and is_maximally_entangled(q2, tol):
        return block
    for theta in np.linspace(0, np.pi / 2, 37):
        c, s = np.cos(theta), np.sin(theta)
        for phi in np.linspace(0, 2 * np.pi, 73):
            w1 = c * q1 + s * np.exp(1j * phi) * q2
            w2 = -s * np.exp(-1j * phi) * q1 + c * q2
            if is_maximally_entangled(w1, 1e-6) and is_maximally_entangled(w2, 1e-6):
                return np.column_stack([w1, w2])
    return None


@dataclass
class BlockReport:
    label: tuple
    dim: int
    basis: np.ndarray                 # spanning columns of the block
    max_entangled: bool | None        # 1-dim blocks: spanning vector test
    projector_separable: bool | None  # >= 2-dim blocks: PPT on P/dim
    witness: float | None
    entangled_basis_found: bool | None  # 2-dim blocks only
    ok: bool


@dataclass
class EntanglementReport:
    blocks: list[BlockReport] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(b.ok for b in self.blocks)


def analyze_decomposition(decomp, rep_a=None, rep_b=None) -> EntanglementReport:
    """Classify every block of a CGDecomposition.

    1-dim blocks must be spanned by maximally entangled states; blocks of
    dimension >= 2 must have PPT-separable normalized projectors, and
    2-dim blocks must also carry an orthonormal pair of maximally
    entangled states.
    """
    report = EntanglementReport()
    start = 0
    for label, d in decomp.block_layout:
        Q = decomp.basis_change[:, start : start + d]
        start += d
        if d == 1:
            ment = is_maximally_entangled(Q[:, 0])
            report.blocks.append(
                BlockReport(label, d, Q, ment, None, None, None, ok=ment)
            )
            continue
        rho = (Q @ Q.conj().T) / d
        sep, wit = ppt_separable(rho)
        pair_ok = None
        if d == 2:
            pair_ok = max_entangled_pair(Q) is not None
        report.blocks.append(
            BlockReport(label, d, Q, None, sep, wit, pair_ok,
                        ok=sep and (pair_ok is not False))
        )
    return report


def report_to_jsonable(report: EntanglementReport) -> dict:
    return {
        "ok": report.ok,
        "blocks": [
            {
                "label": "_".join(str(x) for x in b.label),
                "dim": b.dim,
                "basis": [[[float(z.real), float(z.imag)] for z in row] for row in b.basis],
                "max_entangled": b.max_entangled,
                "projector_separable": b.projector_separable,
                "witness": b.witness,
                "entangled_basis_found": b.entangled_basis_found,
                "ok": b.ok,
            }
            for b in report.blocks
        ],
    }
