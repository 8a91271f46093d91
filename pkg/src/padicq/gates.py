"""Gate extraction from the two faithful 4-dimensional irreps of G_3.

Stored constants (generator images, change-of-basis matrices, gate sets)
are exact: entries are built from twelfth roots of unity and square
roots, evaluated once to double precision, so matching them is a 1e-12
affair rather than a heuristic.

The analysis pipeline: build the 72-element image of a representation,
test tensor-product structure spectrally and basis-by-basis (nearest
Kronecker product via the block reshuffle), locate subgroups of
simultaneously factorizing unitaries, and emit the candidate one- and
two-qubit gate sets.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .group import G3_GEN_A, G3_GEN_B, G3_SUBGROUPS, GpElement, multiply
from .modp import make_context

TAU = 1e-9
DEFECT_TOL = 1e-8


def _e(k: int) -> complex:
    """exp(i pi k / 6)."""
    return complex(np.exp(1j * np.pi * k / 6))


_S2 = 1.0 / np.sqrt(2.0)
_S3 = np.sqrt(3.0) / 2.0

# -- generator images of the 4-dim irreps (on the canonical generating pair) --------

U2_GEN_IMAGES: dict[GpElement, np.ndarray] = {
    G3_GEN_A: np.array(
        [
            [0.5 * _e(2), 0.5 * _e(-5), 0, _e(-4) * _S2],
            [0.5j, 0.5 * _e(-4), 0, 1j * _S2],
            [_e(-4) * _S2, _e(-5) * _S2, 0, 0],
            [0, 0, -1, 0],
        ]
    ),
    G3_GEN_B: np.array(
        [
            [0, 0, _e(4) * _S2, _S2],
            [0, 0, _e(5) * _S2, _e(-5) * _S2],
            [_e(4) * _S2, 1j * _S2, 0, 0],
            [_e(4) * _S2, -1j * _S2, 0, 0],
        ]
    ),
}

U4_GEN_IMAGES: dict[GpElement, np.ndarray] = {
    G3_GEN_A: np.array(
        [
            [0, -0.5, -_S3, 0],
            [1, 0, 0, 0],
            [0, 0, 0, -1],
            [0, _S3, -0.5, 0],
        ],
        dtype=complex,
    ),
    G3_GEN_B: np.array(
        [
            [1, 0, 0, 0],
            [0, -0.5, _S3, 0],
            [0, -_S3, -0.5, 0],
            [0, 0, 0, -1],
        ],
        dtype=complex,
    ),
}

# the remaining two 4-dim irreps differ by the sign character (gen B flips sign)
U1_GEN_IMAGES = {G3_GEN_A: U2_GEN_IMAGES[G3_GEN_A], G3_GEN_B: -U2_GEN_IMAGES[G3_GEN_B]}
U3_GEN_IMAGES = {G3_GEN_A: U4_GEN_IMAGES[G3_GEN_A], G3_GEN_B: -U4_GEN_IMAGES[G3_GEN_B]}

# -- stored change-of-basis matrices (columns) -------------------------------------------------------

BASIS_B38 = np.array(
    [
        [0, 0, _e(-1) * _S2, _e(5) * _S2],
        [0, 0, _S2, _S2],
        [1, 0, 0, 0],
        [0, -1j, 0, 0],
    ]
)

BASIS_B1 = np.array(
    [
        [-_S3, 0.5, 0, 0],
        [0, 0, 0, 1],
        [0, 0, 1, 0],
        [0.5, _S3, 0, 0],
    ],
    dtype=complex,
)

BASIS_B40 = np.array(
    [
        [-1j * _S2, 0, 1j * _S2, 0],
        [0, 1j * _S2, 0, -1j * _S2],
        [0, _S2, 0, _S2],
        [_S2, 0, _S2, 0],
    ]
)

# -- stored rebased generator images and gates -------------------------------------

GATE_U10 = np.array(
    [[0, 0, _e(-5), 0], [-1j, 0, 0, 0], [0, 0, 0, _e(-4)], [0, 1, 0, 0]]
)
GATE_U4 = np.array(
    [[0, 0, 1j, 0], [0, 0, 0, 1], [_e(5), 0, 0, 0], [0, _e(4), 0, 0]]
)

U4_B1_GEN_IMAGES = {
    G3_GEN_A: np.array(
        [
            [0, 0, 0.5, _S3],
            [0, 0, -_S3, 0.5],
            [-0.5, -_S3, 0, 0],
            [-_S3, 0.5, 0, 0],
        ],
        dtype=complex,
    ),
    G3_GEN_B: np.array(
        [
            [0.5, -_S3, 0, 0],
            [-_S3, -0.5, 0, 0],
            [0, 0, -0.5, -_S3],
            [0, 0, _S3, -0.5],
        ],
        dtype=complex,
    ),
}

GATE_A = np.array([[1, 0], [0, _e(4)]])
GATE_B = np.array([[0, 1], [_e(5), 0]])
GATE_X = np.array([[0, 1], [1, 0]], dtype=complex)
GATE_S = np.array([[-0.5, _S3], [_S3, 0.5]], dtype=complex)
GATE_CZ = np.diag([-1.0, 1.0, 1.0, 1.0]).astype(complex)
SWAP = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
)
GATE_B40_NEG_X = -GATE_X
GATE_B40_ANTIDIAG = np.array([[0, 1], [_e(-4), 0]])
GATE_B40_TWOQUBIT = np.array(
    [[0, 0, -1, 0], [0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1]], dtype=complex
)


@dataclass
class GateSets:
    abu: dict[str, np.ndarray]
    g1p3: dict[str, np.ndarray]
    b40: dict[str, np.ndarray]


def extract_gate_sets() -> GateSets:
    """The three candidate gate sets read off the two faithful irreps."""
    return GateSets(
        abu={"A": GATE_A, "B": GATE_B, "U4": GATE_U4, "U10": GATE_U10},
        g1p3={"X": GATE_X, "S": GATE_S, "CZ": GATE_CZ},
        b40={
            "negX": GATE_B40_NEG_X,
            "antidiag": GATE_B40_ANTIDIAG,
            "twoqubit": GATE_B40_TWOQUBIT,
        },
    )


# -- representation images -----------------------------------------------------------

@dataclass
class RepImage:
    """A labeled unitary image of G_3: one matrix per group element."""

    name: str
    images: dict[GpElement, np.ndarray]
    basis: str = "gap"

    @property
    def labels(self) -> list[GpElement]:
        return sorted(self.images)

    def matrices(self) -> list[np.ndarray]:
        return [self.images[g] for g in self.labels]


def build_rep_image(generator_images: dict[GpElement, np.ndarray], name: str = "rep") -> RepImage:
    """Extend generator images to all 72 elements by word closure.

    Raises if the two generators do not generate, the images fail
    the homomorphism check, or the image is not faithful (fewer than 72
    distinct matrices).
    """
    ctx = make_context(3)
    gens = list(generator_images)
    dim = next(iter(generator_images.values())).shape[0]
    images: dict[GpElement, np.ndarray] = {(1, 0, 0, 0, 1): np.eye(dim, dtype=complex)}
    frontier = [(1, 0, 0, 0, 1)]
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                gh = multiply(g, h, ctx)
                if gh not in images:
                    images[gh] = images[g] @ generator_images[h]
                    nxt.append(gh)
        frontier = nxt
    if len(images) != 72:
        raise ArithmeticError(f"generators produced {len(images)} elements, expected 72")
    keys = {tuple(np.round(m.ravel() * 1e9).astype(np.int64) // 1000) for m in _ri_parts(images)}
    if len(keys) != 72:
        raise ArithmeticError("representation is not faithful: image matrices collide")
    labels = sorted(images)
    stack = np.stack([images[g] for g in labels])
    idx = {g: i for i, g in enumerate(labels)}
    prod_idx = np.array(
        [[idx[multiply(x, y, ctx)] for y in labels] for x in labels]
    )
    err = 0.0
    for i in range(72):
        err = max(err, float(np.max(np.abs(stack[i] @ stack - stack[prod_idx[i]]))))
    if err > TAU:
        raise ArithmeticError(f"homomorphism violated: max error {err}")
    return RepImage(name=name, images=images)


def _ri_parts(images: dict[GpElement, np.ndarray]):
    for m in images.values():
        yield np.concatenate([m.real.ravel(), m.imag.ravel()])


def rebase(rep: RepImage, basis: np.ndarray, basis_name: str = "custom") -> RepImage:
    """Conjugate every image by a unitary basis matrix (columns = new basis)."""
    if np.max(np.abs(basis.conj().T @ basis - np.eye(basis.shape[0]))) > TAU:
        raise ValueError("basis matrix is not unitary")
    bh = basis.conj().T
    return RepImage(
        name=rep.name,
        images={g: bh @ m @ basis for g, m in rep.images.items()},
        basis=basis_name,
    )


def u2_rep() -> RepImage:
    return build_rep_image(U2_GEN_IMAGES, "u2")


def u4_rep() -> RepImage:
    return build_rep_image(U4_GEN_IMAGES, "u4")


# -- tensor factorization tests -------------------------------------------------------

def reshuffle(U: np.ndarray) -> np.ndarray:
    """Block rearrangement R[2i+j, 2k+l] = U[2i+k, 2j+l]; rank 1 iff U = V ⊗ W."""
    return np.asarray(U).reshape(2, 2, 2, 2).transpose(0, 2, 1, 3).reshape(4, 4)


def kron_defect(U: np.ndarray) -> float:
    """Second singular value of the reshuffle (0 exactly for Kronecker products)."""
    return float(np.linalg.svd(reshuffle(U), compute_uv=False)[1])


def spectral_factorizable(U: np.ndarray, tol: float = DEFECT_TOL) -> bool:
    """True iff the eigenvalues split as {l1 m1, l1 m2, l2 m1, l2 m2}.

    Equivalent to U being a tensor product with respect to *some* basis:
    some pairing of the four eigenvalues into two pairs has equal
    pair-products.
    """
    a = np.linalg.eigvals(U)
    for (i, j), (k, l) in (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))):
        if abs(a[i] * a[j] - a[k] * a[l]) < tol:
            return True
    return False


@dataclass
class FactorizationVerdict:
    kind: str  # 'product' | 'product_swap' | 'entangling' | 'spectrally_unfactorizable'
    v: np.ndarray | None = None
    w: np.ndarray | None = None
    scalar: float | None = None


def kron_factorize(U: np.ndarray, tol: float = TAU) -> FactorizationVerdict | None:
    """Nearest-Kronecker-product factorization U = c (V ⊗ W), or None.

    V and W are scaled to |det| = 1; V's first nonzero entry is made real
    positive and the leftover phase is folded into W, leaving c real >= 0.
    """
    R = reshuffle(U)
    u, s, vh = np.linalg.svd(R)
    if s[1] > max(tol, 1e-12 * s[0]) and s[1] > tol:
        return None
    # R = outer(vecV, vecW) with a plain transpose, so vecW is vh's top row
    root = np.sqrt(s[0])
    V = (root * u[:, 0]).reshape(2, 2)
    W = (root * vh[0, :]).reshape(2, 2)
    dv, dw = abs(np.linalg.det(V)), abs(np.linalg.det(W))
    if dv < 1e-12 or dw < 1e-12:
        return None
    V = V / np.sqrt(dv)
    W = W / np.sqrt(dw)
    idx = np.argmax(np.abs(V.ravel()) > 1e-8)
    V = V * np.exp(-1j * np.angle(V.ravel()[idx]))
    c = np.trace(np.kron(V, W).conj().T @ U) / 4.0
    if abs(c) < 1e-12:
        return None
    W = W * (c / abs(c))
    c = abs(c)
    if np.max(np.abs(c * np.kron(V, W) - U)) > max(tol, 1e-8):
        return None
    return FactorizationVerdict(kind="product", v=V, w=W, scalar=float(c))


def classify_gate(U: np.ndarray, tol: float = TAU) -> FactorizationVerdict:
    """Product / product-times-SWAP / entangling, with respect to the given basis."""
    direct = kron_factorize(U, tol)
    if direct is not None:
        return direct
    swapped = kron_factorize(np.asarray(U) @ SWAP, tol)
    if swapped is not None:
        swapped.kind = "product_swap"
        return swapped
    return FactorizationVerdict(kind="entangling")


def factorization_verdict(U: np.ndarray, tol: float = TAU) -> FactorizationVerdict:
    """classify_gate with 'entangling' refined to 'spectrally_unfactorizable'
    when the eigenvalue pairing test rules out a tensor product in every
    basis (product-times-SWAP verdicts are kept: such gates can have
    unpairable spectra while still being non-entangling)."""
    verdict = classify_gate(U, tol)
    if verdict.kind == "entangling" and not spectral_factorizable(U):
        verdict = FactorizationVerdict(kind="spectrally_unfactorizable")
    return verdict


# -- eigenbases and the factorizing-subgroup search -----------------------------------

def deterministic_eigenbasis(M: np.ndarray, tol: float = 1e-8) -> np.ndarray:
    """Orthonormal eigenbasis with a reproducible convention.

    Eigenvalues are sorted by phase ascending in (-pi, pi]; inside each
    degenerate eigenspace the basis comes from projecting the canonical
    vectors and Gram-Schmidt in canonical order; every column's first
    significant entry is made real positive.
    """
    T, Z = scipy.linalg.schur(np.asarray(M, dtype=complex), output="complex")
    evals = np.diag(T)
    phases = np.angle(evals)
    phases[phases <= -np.pi + 1e-14] = np.pi
    order = np.argsort(phases, kind="stable")
    evals, Z = evals[order], Z[:, order]
    cols: list[np.ndarray] = []
    i = 0
    n = len(evals)
    while i < n:
        j = i
        while j < n and abs(evals[j] - evals[i]) < tol:
            j += 1
        space = Z[:, i:j]
        proj = space @ space.conj().T
        got: list[np.ndarray] = []
        for k in range(n):
            cand = proj @ np.eye(n)[k]
            for q in got:
                cand = cand - q * (q.conj() @ cand)
            nrm = np.linalg.norm(cand)
            if nrm > 1e-6:
                got.append(cand / nrm)
            if len(got) == j - i:
                break
        cols.extend(got)
        i = j
    basis = np.column_stack(cols)
    for k in range(n):
        idx = np.argmax(np.abs(basis[:, k]) > 1e-8)
        basis[:, k] = basis[:, k] * np.exp(-1j * np.angle(basis[idx, k]))
    return basis


def factorizing_subset(rep: RepImage, basis: np.ndarray, tol: float = DEFECT_TOL) -> frozenset[GpElement]:
    """Elements whose rebased image is a Kronecker product (always a subgroup)."""
    bh = basis.conj().T
    return frozenset(
        g for g, m in rep.images.items() if kron_defect(bh @ m @ basis) < tol
    )


def _cz_gamma(gamma: float) -> np.ndarray:
    return np.diag([1.0, 1.0, 1.0, np.exp(1j * gamma)])


def _subgroup_generators(elements: frozenset[GpElement]) -> list[GpElement]:
    ctx = make_context(3)
    from .group import closure

    pool = sorted(elements)
    gens: list[GpElement] = []
    have = {(1, 0, 0, 0, 1)}
    for g in pool:
        if g in have:
            continue
        gens.append(g)
        have = closure(gens, ctx)
        if len(have) == len(elements):
            return gens
    return gens


def _joint_eigenbasis(mats: list[np.ndarray], tol: float = 1e-8) -> np.ndarray | None:
    """Joint eigenbasis of commuting normal matrices, or None if joint
    eigenspaces stay degenerate."""
    n = mats[0].shape[0]
    spaces = [np.eye(n, dtype=complex)]
    for M in mats:
        refined = []
        for Q in spaces:
            if Q.shape[1] == 1:
                refined.append(Q)
                continue
            C = Q.conj().T @ M @ Q
            T, Z = scipy.linalg.schur(C, output="complex")
            evals = np.diag(T)
            order = np.argsort(np.angle(evals), kind="stable")
            evals, Z = evals[order], Z[:, order]
            i = 0
            while i < len(evals):
                j = i
                while j < len(evals) and abs(evals[j] - evals[i]) < tol:
                    j += 1
                refined.append(Q @ Z[:, i:j])
                i = j
        spaces = refined
    if any(Q.shape[1] != 1 for Q in spaces):
        return None
    basis = np.hstack(spaces)
    for k in range(n):
        idx = np.argmax(np.abs(basis[:, k]) > 1e-8)
        basis[:, k] = basis[:, k] * np.exp(-1j * np.angle(basis[idx, k]))
    return basis


def _basis_candidates(rep: RepImage, elements: frozenset[GpElement], limit: int = 8):
    """Bases whose columns must be product vectors if the subgroup admits
    a common tensor structure: eigenbases of nondegenerate elements, then
    joint eigenbases of commuting pairs."""
    singles = []
    degenerate = []
    for g in sorted(elements):
        evals = np.linalg.eigvals(rep.images[g])
        gap = min(abs(evals[i] - evals[j]) for i in range(4) for j in range(i + 1, 4))
        (singles if gap > 1e-6 else degenerate).append((-gap, g))
    singles.sort()
    count = 0
    for _, g in singles:
        if count >= limit:
            return
        count += 1
        yield deterministic_eigenbasis(rep.images[g])
    pool = sorted(elements)
    for i, g1 in enumerate(pool):
        for g2 in pool[i + 1 :]:
            if count >= limit:
                return
            M1, M2 = rep.images[g1], rep.images[g2]
            if np.max(np.abs(M1 @ M2 - M2 @ M1)) > 1e-9:
                continue
            joint = _joint_eigenbasis([M1, M2])
            if joint is not None:
                count += 1
                yield joint


def find_certifying_basis(rep: RepImage, elements: frozenset[GpElement],
                          grid: int = 1536) -> np.ndarray | None:
    """A unitary basis making every image of `elements` a Kronecker product.

    Strategy: the (joint) eigenvectors of subgroup elements with
    multiplicity-free spectrum are product vectors in any tensor
    structure the subgroup preserves, so only the column order and one
    relative phase (a CZ-like diagonal) remain free.  Orders are
    enumerated; the phase is located on a grid and polished.
    """
    from itertools import permutations

    from scipy.optimize import minimize_scalar

    gens = _subgroup_generators(elements)
    test = [rep.images[g] for g in gens]
    gammas = np.linspace(0, 2 * np.pi, grid, endpoint=False)
    phase_col = np.exp(1j * gammas)

    def defect_profile(P0: np.ndarray) -> np.ndarray:
        worst = np.zeros(grid)
        for M in test:
            B0 = P0.conj().T @ M @ P0
            # conjugation by diag(1,1,1,e^{i gamma}) scales row/col 3
            stack = np.broadcast_to(B0, (grid, 4, 4)).copy()
            stack[:, :3, 3] *= phase_col[:, None]
            stack[:, 3, :3] /= phase_col[:, None]
            resh = stack.reshape(grid, 2, 2, 2, 2).transpose(0, 1, 3, 2, 4).reshape(grid, 4, 4)
            sv = np.linalg.svd(resh, compute_uv=False)
            worst = np.maximum(worst, sv[:, 1])
        return worst

    def defect_at(P0: np.ndarray, gamma: float) -> float:
        Pg = P0 @ _cz_gamma(gamma)
        return max(kron_defect(Pg.conj().T @ M @ Pg) for M in test)

    for V in _basis_candidates(rep, elements):
        for perm in permutations(range(4)):
            P0 = V[:, list(perm)]
            profile = defect_profile(P0)
            k = int(np.argmin(profile))
            if profile[k] > 1e-2:
                continue
            span = 2 * np.pi / grid
            res = minimize_scalar(
                lambda t: defect_at(P0, t),
                bounds=(gammas[k] - span, gammas[k] + span),
                method="bounded",
                options={"xatol": 1e-14},
            )
            if res.fun < DEFECT_TOL:
                P = P0 @ _cz_gamma(float(res.x))
                if factorizing_subset(rep, P) >= elements:
                    return P
    return None


@dataclass
class FactorizingSubgroup:
    order: int
    label: str | None        # catalog name when the element set matches
    elements: frozenset[GpElement]
    basis: np.ndarray
    source: str              # 'eigenbasis-sweep' or 'targeted'
    subset_with_basis: frozenset[GpElement]  # all elements factorizing w.r.t. basis


@dataclass
class SubgroupSearchReport:
    rep_name: str
    hits: list[FactorizingSubgroup] = field(default_factory=list)

    def orders(self) -> list[int]:
        return sorted({h.order for h in self.hits}, reverse=True)

    def labels(self) -> set[str]:
        return {h.label for h in self.hits if h.label}

    def by_label(self, label: str) -> FactorizingSubgroup | None:
        for h in self.hits:
            if h.label == label:
                return h
        return None


def _catalog_label(elements: frozenset[GpElement]) -> str | None:
    for name, sub in G3_SUBGROUPS.items():
        if sub == elements:
            return name
    return None


# factorizing subgroups claimed for each representation (the search may
# legitimately find more; extras are reported with their own labels)
CLAIMED_FACTORIZING = {
    "u2": ("N1", "H3", "K7", "K8", "K9"),
    "u4": ("K1", "K2", "K3", "K4", "K6"),
}


def factorizing_subgroup_search(rep: RepImage, min_order: int = 2,
                                targets: tuple[str, ...] | None = None) -> SubgroupSearchReport:
    """Subgroups of simultaneously Kronecker-factorizing unitaries.

    Two passes: (1) the eigenbasis sweep over all 72 image matrices,
    recording the factorizing subset for each deterministic eigenbasis
    (such a subset is automatically a subgroup); (2) a targeted
    certificate construction for the claimed catalog subgroups, which
    frees the result from eigen-solver column and phase conventions.
    Subgroups found beyond the catalog carry label None.
    """
    if targets is None:
        targets = CLAIMED_FACTORIZING.get(rep.name, ())
    report = SubgroupSearchReport(rep_name=rep.name)
    seen: dict[frozenset[GpElement], FactorizingSubgroup] = {}

    for g in rep.labels:
        basis = deterministic_eigenbasis(rep.images[g])
        subset = factorizing_subset(rep, basis)
        if len(subset) < min_order or subset in seen:
            continue
        hit = FactorizingSubgroup(
            order=len(subset),
            label=_catalog_label(subset),
            elements=subset,
            basis=basis,
            source="eigenbasis-sweep",
            subset_with_basis=subset,
        )
        seen[subset] = hit
        report.hits.append(hit)

    for name in targets:
        sub = G3_SUBGROUPS[name]
        if any(h.elements == sub for h in report.hits):
            continue
        basis = find_certifying_basis(rep, sub)
        if basis is None:
            continue
        report.hits.append(
            FactorizingSubgroup(
                order=len(sub),
                label=name,
                elements=sub,
                basis=basis,
                source="targeted",
                subset_with_basis=factorizing_subset(rep, basis),
            )
        )

    report.hits.sort(key=lambda h: (-h.order, h.label or "~", sorted(h.elements)))
    return report


# -- coset analysis of the b38-rebased u2 representation -------------------------------

_COSET_OF = {
    (False, 1): "H3",      # b = 0, s = +1: products
    (True, 1): "Ent1",     # b != 0, s = +1: entangling
    (True, 2): "Ent2",     # b != 0, s = -1: entangling
    (False, 2): "S",       # b = 0, s = -1: SWAP-like
}
_COSET_KIND = {"H3": "product", "Ent1": "entangling", "Ent2": "entangling", "S": "product_swap"}


@dataclass
class CosetReport:
    cosets: dict[str, list[GpElement]]
    kinds_ok: bool
    swap_element: GpElement
    swap_identity_error: float
    ent_products_in_S: bool
    klein_ok: bool
    violations: list[tuple[GpElement, str, str]]


def coset_report(rep_b38: RepImage) -> CosetReport:
    """Partition the b38-rebased image into H3 / Ent1 / Ent2 / S and verify.

    Checks each element's gate classification against its coset, the
    SWAP = U10 U4 identity, Ent1 * Ent2 lying in the SWAP coset, and the
    Klein four-group quotient multiplication table.
    """
    ctx = make_context(3)
    cosets: dict[str, list[GpElement]] = {"H3": [], "Ent1": [], "Ent2": [], "S": []}
    violations = []
    for g, m in sorted(rep_b38.images.items()):
        name = _COSET_OF[(g[1] != 0, g[4])]
        cosets[name].append(g)
        kind = classify_gate(m).kind
        if kind != _COSET_KIND[name]:
            violations.append((g, name, kind))

    swap_elt = multiply(G3_GEN_A, G3_GEN_B, ctx)
    swap_err = float(np.max(np.abs(rep_b38.images[swap_elt] - SWAP)))

    ent_ok = all(
        _COSET_OF[(multiply(e1, e2, ctx)[1] != 0, multiply(e1, e2, ctx)[4])] == "S"
        and classify_gate(rep_b38.images[multiply(e1, e2, ctx)]).kind == "product_swap"
        for e1 in cosets["Ent1"]
        for e2 in cosets["Ent2"]
    )

    # quotient by H3 must be the Klein four-group
    key = {"H3": (0, 0), "Ent1": (1, 0), "Ent2": (0, 1), "S": (1, 1)}
    klein_ok = True
    reps_of = {name: els[0] for name, els in cosets.items()}
    for n1, r1 in reps_of.items():
        for n2, r2 in reps_of.items():
            prod = multiply(r1, r2, ctx)
            target = tuple((a + b) % 2 for a, b in zip(key[n1], key[n2]))
            got = key[_COSET_OF[(prod[1] != 0, prod[4])]]
            klein_ok = klein_ok and got == target

    return CosetReport(
        cosets=cosets,
        kinds_ok=not violations,
        swap_element=swap_elt,
        swap_identity_error=swap_err,
        ent_products_in_S=ent_ok,
        klein_ok=klein_ok,
        violations=violations,
    )


# -- harvested one-qubit factors -------------------------------------------------------

def collect_factors(rep: RepImage, elements) -> list[np.ndarray]:
    """Kronecker factors (both legs) of the given factorizing elements."""
    out = []
    for g in sorted(elements):
        verdict = kron_factorize(rep.images[g])
        if verdict is None:
            raise ArithmeticError(f"element {g} does not factorize in this basis")
        out.append(verdict.v)
        out.append(verdict.w)
    return out


def projective_key(m: np.ndarray, grid: float = 1e-6) -> tuple:
    """Canonical hashable form of a matrix up to global phase."""
    flat = m.ravel()
    idx = np.argmax(np.abs(flat) > 1e-8)
    normed = m * np.exp(-1j * np.angle(flat[idx]))
    return tuple(np.round(np.concatenate([normed.real.ravel(), normed.imag.ravel()]) / grid).astype(np.int64))
