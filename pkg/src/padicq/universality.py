"""Universality analysis for gate sets: finite-vs-infinite closure of the
generated matrix group, infinite-order certificates from eigenphases
(rational cosine outside {0, +-1/2, +-1} proves an angle irrational in
pi), one-parameter Lie generators, commutator closure up to dim so(4),
plane-rotation (Givens) decomposition of rotations, and the real
encoding of unitary circuits into special orthogonal ones.
"""

from __future__ import annotations

import hashlib
import json
import os
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

TAU = 1e-9
NIVEN_ALLOWED = {Fraction(0), Fraction(1, 2), Fraction(-1, 2), Fraction(1), Fraction(-1)}


# -- real encoding -------------------------------------------------------------------

def real_encode(U: np.ndarray) -> np.ndarray:
    """Embed a unitary into SO(2m) by the flag-qubit doubling.

    Each entry u becomes the 2x2 block [[Re u, -Im u], [Im u, Re u]];
    the map is a group homomorphism and lands in SO(2m).
    """
    U = np.asarray(U, dtype=complex)
    m = U.shape[0]
    out = np.zeros((2 * m, 2 * m))
    out[0::2, 0::2] = U.real
    out[0::2, 1::2] = -U.imag
    out[1::2, 0::2] = U.imag
    out[1::2, 1::2] = U.real
    return out


def real_encode_state(psi: np.ndarray) -> np.ndarray:
    """Flag-qubit encoding of a state: Re(psi) on flag 0, Im(psi) on flag 1."""
    psi = np.asarray(psi, dtype=complex)
    out = np.zeros(2 * psi.shape[0])
    out[0::2] = psi.real
    out[1::2] = psi.imag
    return out


# -- eigenphase classification ----------------------------------------------------------

@dataclass
class EigenphaseResult:
    kind: str                  # 'finite' | 'irrational' | 'unknown'
    order: int | None = None
    cosine: Fraction | None = None

    @property
    def is_infinite(self) -> bool:
        return self.kind == "irrational"


def eigenphase_order(lam: complex, kmax: int = 10000, tol: float = 1e-8) -> EigenphaseResult:
    """Classify a unit-modulus eigenvalue.

    FiniteOrder(k) for the minimal k <= kmax with lam^k = 1; otherwise an
    irrationality certificate when cos(arg lam) reconstructs as a rational
    with denominator <= 64 outside {0, +-1/2, +-1}; otherwise unknown.
    """
    lam = complex(lam)
    if abs(abs(lam) - 1.0) > 1e-6:
        raise ValueError("eigenvalue must have unit modulus")
    theta = np.angle(lam)
    ks = np.arange(1, kmax + 1)
    resid = np.abs(np.exp(1j * theta * ks) - 1.0)
    hits = np.nonzero(resid < tol)[0]
    if hits.size:
        return EigenphaseResult(kind="finite", order=int(hits[0] + 1))
    cos = float(np.cos(theta))
    frac = Fraction(cos).limit_denominator(64)
    if abs(cos - float(frac)) < 1e-9 and frac not in NIVEN_ALLOWED:
        return EigenphaseResult(kind="irrational", cosine=frac)
    return EigenphaseResult(kind="unknown")


# -- Lie generators and commutator closure -----------------------------------------------

def lie_generator(R: np.ndarray, kmax: int = 10000) -> np.ndarray:
    """Real antisymmetric generator of the closure of the cyclic group <R>.

    R must be special orthogonal with exactly one conjugate pair of
    certified-irrational eigenphases; the generator is
    Lambda diag(0,..,i,-i) Lambda^dagger with the +i slot on the first
    irrational phase in ascending order, which is a real matrix.
    """
    R = np.asarray(R, dtype=float)
    n = R.shape[0]
    if np.max(np.abs(R @ R.T - np.eye(n))) > 1e-8 or np.linalg.det(R) < 0:
        raise ValueError("input must be special orthogonal")
    evals, vecs = np.linalg.eig(R)
    order = np.argsort(np.angle(evals), kind="stable")
    evals, vecs = evals[order], vecs[:, order]
    flags = [eigenphase_order(l, kmax) for l in evals]
    irr = [i for i, f in enumerate(flags) if f.kind == "irrational"]
    if len(irr) != 2:
        raise ValueError(
            f"need exactly one irrational conjugate pair, found {len(irr)} irrational phases"
        )
    i_neg, i_pos = irr
    if abs(evals[i_neg] - np.conj(evals[i_pos])) > 1e-8:
        raise ValueError("irrational eigenphases are not a conjugate pair")
    v = vecs[:, i_neg]
    v = v / np.linalg.norm(v)
    A = -2.0 * np.imag(np.outer(v, np.conj(v)))
    if np.max(np.abs(A + A.T)) > 1e-9:
        raise ArithmeticError("generator is not antisymmetric")
    return A


def commutator_closure(seeds: list[np.ndarray], ambient_dim: int,
                       rank_tol: float = 1e-8) -> tuple[list[np.ndarray], int]:
    """Span dimension reached by repeatedly adjoining Lie brackets.

    Keeps a maximal linearly independent set under the trace inner
    product (rank decided by singular values > rank_tol); stops when the
    span stabilizes or reaches ambient_dim.
    """
    basis: list[np.ndarray] = []
    flat: list[np.ndarray] = []

    def try_add(M: np.ndarray) -> bool:
        if np.max(np.abs(M)) < rank_tol:
            return False
        stacked = np.vstack(flat + [M.ravel()]) if flat else M.ravel()[None, :]
        sv = np.linalg.svd(stacked, compute_uv=False)
        if np.sum(sv > rank_tol) == len(basis) + 1:
            basis.append(M)
            flat.append(M.ravel())
            return True
        return False

    for s in seeds:
        s = np.asarray(s, dtype=float)
        if np.max(np.abs(s + s.T)) > 1e-8:
            raise ValueError("seeds must be antisymmetric")
        try_add(s)
    frontier = list(basis)
    while frontier and len(basis) < ambient_dim:
        new = []
        for X in frontier:
            for Y in list(basis):
                B = X @ Y - Y @ X
                if try_add(B):
                    new.append(B)
                    if len(basis) == ambient_dim:
                        return basis, len(basis)
        frontier = new
    return basis, len(basis)


# -- finite closure of a gate set ------------------------------------------------------------

@dataclass
class ClosureVerdict:
    kind: str                        # 'finite' | 'exceeds_cap'
    order: int | None
    cap: int
    dim: int
    certificate: np.ndarray | None = None
    certificate_phase: EigenphaseResult | None = None
    elements: list[np.ndarray] | None = None


def _grid_keys(batch: np.ndarray, grid: float = 1e-6) -> list[bytes]:
    flat = batch.reshape(batch.shape[0], -1)
    both = np.concatenate([flat.real, flat.imag], axis=1)
    both[np.abs(both) < grid / 2] = 0.0  # entrywise cleanup against -0.0 wobble
    ints = np.round(both / grid).astype(np.int64)
    return [row.tobytes() for row in ints]


def _find_certificate(mats, kmax: int = 10000):
    for m in mats:
        for lam in np.linalg.eigvals(m):
            res = eigenphase_order(lam, kmax)
            if res.kind == "irrational":
                return m, res
    return None, None


def _monomial_form(M: np.ndarray, roots: int = 24):
    """(perm, phase exponents mod `roots`) if M is monomial over those roots."""
    n = M.shape[0]
    perm = np.full(n, -1, dtype=np.int64)
    phase = np.zeros(n, dtype=np.int64)
    for j in range(n):
        col = M[:, j]
        nz = np.nonzero(np.abs(col) > 1e-10)[0]
        if len(nz) != 1 or abs(abs(col[nz[0]]) - 1.0) > 1e-10:
            return None
        k = np.angle(col[nz[0]]) * roots / (2 * np.pi)
        if abs(k - round(k)) > 1e-8:
            return None
        perm[j] = nz[0]
        phase[j] = int(round(k)) % roots
    return perm, phase


def _mono_mul(a, b, roots: int):
    # (sigma, phi)·(tau, psi): column j maps through tau then sigma
    sa, pa = a
    sb, pb = b
    return sa[sb], (pb + pa[sb]) % roots


def _mono_inv(a, roots: int):
    sa, pa = a
    inv = np.empty_like(sa)
    inv[sa] = np.arange(len(sa))
    return inv, (-pa[inv]) % roots


def _prime_power_subgroup_order(rows: np.ndarray, p: int, k: int) -> int:
    """Order of the subgroup of (Z/p^k)^n generated by the given rows.

    Smith reduction over the local ring Z/p^k: pivot on the entry of
    globally minimal p-valuation, clear its row and column (column
    operations change coordinates but not the subgroup order), recurse.
    """
    q = p**k
    A = np.unique(rows % q, axis=0)
    A = A[np.any(A != 0, axis=1)]
    order = 1
    while A.size:
        vals = np.full(A.shape, k, dtype=np.int64)
        nz = A != 0
        v = A[nz].copy()
        cnt = np.zeros(v.shape, dtype=np.int64)
        while np.any(v % p == 0):
            m = v % p == 0
            v[m] //= p
            cnt[m] += 1
        vals[nz] = cnt
        a = int(vals.min())
        if a >= k:
            break
        r, c = np.unravel_index(int(np.argmin(vals)), vals.shape)
        unit = int(A[r, c]) // p**a
        A[r] = (A[r] * pow(unit, -1, q)) % q
        col_factors = A[:, c] // p**a
        col_factors[r] = 0
        A = (A - np.outer(col_factors, A[r])) % q
        row_factors = A[r] // p**a
        row_factors[c] = 0
        A = (A - np.outer(A[:, c], row_factors)) % q
        order *= p ** (k - a)
        A = np.delete(np.delete(A, r, axis=0), c, axis=1)
        A = A[np.any(A != 0, axis=1)] if A.size else A
    return order


def _monomial_closure(gens_mono, n: int, cap: int, roots: int = 24):
    """Exact order of a finite monomial matrix group.

    The group splits as 1 -> K -> G -> P -> 1 with P the permutation
    image (enumerated with a transversal) and K the diagonal kernel, an
    abelian subgroup of (Z/roots)^n generated by the Schreier elements;
    |G| = |P| * |K|.
    """
    ident = (np.arange(n, dtype=np.int64), np.zeros(n, dtype=np.int64))
    transversal = {ident[0].tobytes(): ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for m in frontier:
            for g in gens_mono:
                prod = _mono_mul(m, g, roots)
                kb = prod[0].tobytes()
                if kb not in transversal:
                    transversal[kb] = prod
                    nxt.append(prod)
                    if len(transversal) > cap:
                        return None
        frontier = nxt

    phase_rows = []
    for m in transversal.values():
        for g in gens_mono:
            prod = _mono_mul(m, g, roots)
            rep = transversal[prod[0].tobytes()]
            diag = _mono_mul(prod, _mono_inv(rep, roots), roots)
            phase_rows.append(diag[1])
    rows = np.array(phase_rows, dtype=np.int64)
    kernel_order = 1
    rem = roots
    p = 2
    while rem > 1:
        if rem % p == 0:
            k = 0
            while rem % p == 0:
                rem //= p
                k += 1
            kernel_order *= _prime_power_subgroup_order(rows, p, k)
        p += 1
    # the order is exact even beyond the enumeration cap: only the
    # permutation transversal is enumerated, finiteness is structural
    return kernel_order * len(transversal)


def _cache_path(gens, cap: int):
    cache_dir = os.environ.get("PADIC_QUBIT_CACHE")
    if not cache_dir:
        return None
    h = hashlib.sha256()
    for m in gens:
        h.update(_grid_keys(m[None, :, :])[0])
    h.update(str(cap).encode())
    return os.path.join(cache_dir, f"closure-{h.hexdigest()[:24]}.json")


def finite_closure(generators: list[np.ndarray], cap: int = 200000,
                   grid: float = 1e-6, keep_elements: bool = False,
                   kmax: int = 10000) -> ClosureVerdict:
    """BFS closure of the generated matrix group with canonical hashing.

    Finite(order) if the product closure completes within `cap` visited
    elements.  Otherwise ExceedsCap, carrying an infinite-order
    certificate element when one is found; a certificate also allows an
    early exit, since an infinite-order element proves the group can
    never close.  Monomial generator sets (one unimodular entry per
    row/column, phases at 24th roots) are enumerated exactly.

    Results are cached in $PADIC_QUBIT_CACHE when that directory is set.
    """
    gens = [np.asarray(g, dtype=complex) for g in generators]
    n = gens[0].shape[0]
    if any(g.shape != (n, n) for g in gens):
        raise ValueError("generators must share one dimension")

    path = _cache_path(gens, cap)
    if path and os.path.exists(path) and not keep_elements:
        data = json.loads(open(path).read())
        cert = np.array([[complex(re, im) for re, im in row] for row in data["certificate"]]) \
            if data.get("certificate") else None
        phase = None
        if data.get("certificate_cosine") is not None:
            phase = EigenphaseResult(kind="irrational",
                                     cosine=Fraction(data["certificate_cosine"]))
        return ClosureVerdict(kind=data["kind"], order=data["order"], cap=cap,
                              dim=n, certificate=cert, certificate_phase=phase)

    verdict = None
    mono = [_monomial_form(g) for g in gens]
    if all(m is not None for m in mono) and not keep_elements:
        count = _monomial_closure(mono, n, cap)
        if count is not None:
            verdict = ClosureVerdict(kind="finite", order=count, cap=cap, dim=n)
        else:
            cert, phase = _find_certificate(gens, kmax)
            verdict = ClosureVerdict(kind="exceeds_cap", order=None, cap=cap, dim=n,
                                     certificate=cert, certificate_phase=phase)

    if verdict is None:
        seen: set[bytes] = set(_grid_keys(np.eye(n, dtype=complex)[None, :, :], grid))
        store: list[np.ndarray] = [np.eye(n, dtype=complex)] if keep_elements else []
        frontier = np.eye(n, dtype=complex)[None, :, :]
        gen_stack = np.stack(gens)
        certificate = None
        cert_phase = None
        while frontier.shape[0]:
            prods = np.einsum("fij,gjk->fgik", frontier, gen_stack).reshape(-1, n, n)
            keys = _grid_keys(prods, grid)
            fresh_idx = []
            for i, k in enumerate(keys):
                if k not in seen:
                    seen.add(k)
                    fresh_idx.append(i)
            fresh = prods[fresh_idx]
            if keep_elements:
                store.extend(fresh)
            if certificate is None and fresh.shape[0]:
                certificate, cert_phase = _find_certificate(fresh[:32], kmax)
                if certificate is not None:
                    verdict = ClosureVerdict(kind="exceeds_cap", order=None, cap=cap,
                                             dim=n, certificate=certificate,
                                             certificate_phase=cert_phase)
                    break
            if len(seen) > cap:
                certificate, cert_phase = _find_certificate(fresh[:64], kmax)
                verdict = ClosureVerdict(kind="exceeds_cap", order=None, cap=cap, dim=n,
                                         certificate=certificate,
                                         certificate_phase=cert_phase)
                break
            frontier = fresh
        if verdict is None:
            verdict = ClosureVerdict(kind="finite", order=len(seen), cap=cap, dim=n,
                                     elements=store if keep_elements else None)

    if path:
        os.makedirs(os.path.dirname(path), exist_ok=True)
        payload = {
            "kind": verdict.kind,
            "order": verdict.order,
            "certificate": [[[z.real, z.imag] for z in row] for row in verdict.certificate]
            if verdict.certificate is not None else None,
            "certificate_cosine": str(verdict.certificate_phase.cosine)
            if verdict.certificate_phase and verdict.certificate_phase.cosine is not None
            else None,
        }
        with open(path, "w") as fh:
            json.dump(payload, fh)
    return verdict


# -- Givens decomposition -----------------------------------------------------------------

def _givens(m: int, j: int, k: int, theta: float) -> np.ndarray:
    G = np.eye(m)
    c, s = np.cos(theta), np.sin(theta)
    G[j, j] = c
    G[j, k] = -s
    G[k, j] = s
    G[k, k] = c
    return G


def givens_decompose(R: np.ndarray, tol: float = 1e-12) -> list[tuple[int, int, float]]:
    """Plane-rotation factorization R = prod G_{jk}(theta).

    Returns at most m(m-1)/2 triples (j, k, theta) with 1-based plane
    indices j < k, in the order they multiply back (left to right).
    Raises on non-orthogonal input or det = -1.
    """
    R = np.asarray(R, dtype=float)
    m = R.shape[0]
    if np.max(np.abs(R.T @ R - np.eye(m))) > 1e-8:
        raise ValueError("input is not orthogonal")
    if np.linalg.det(R) < 0:
        raise ValueError("input must have determinant +1")
    M = R.copy()
    triples: list[tuple[int, int, float]] = []
    for j in range(m - 1):
        last_in_col = None
        for k in range(j + 1, m):
            if abs(M[k, j]) < tol:
                continue
            r = np.hypot(M[j, j], M[k, j])
            c, s = M[j, j] / r, -M[k, j] / r
            alpha = np.arctan2(s, c)
            M[[j, k], :] = _givens(2, 0, 1, alpha) @ M[[j, k], :]
            triples.append((j + 1, k + 1, -alpha))
            last_in_col = len(triples) - 1
        if M[j, j] < 0:
            # fold a half-turn into this column to fix the sign
            if last_in_col is not None:
                a, b, th = triples[last_in_col]
                triples[last_in_col] = (a, b, th + np.pi)
                M[[a - 1, b - 1], :] = _givens(2, 0, 1, np.pi) @ M[[a - 1, b - 1], :]
            else:
                k = j + 1
                M[[j, k], :] = -M[[j, k], :]
                triples.append((j + 1, k + 1, np.pi))
    if np.max(np.abs(M - np.eye(m))) > 1e-7:
        raise ArithmeticError("triangularization did not reach the identity")
    return triples


def givens_recompose(triples: list[tuple[int, int, float]], m: int) -> np.ndarray:
    out = np.eye(m)
    for j, k, theta in triples:
        out = out @ _givens(m, j - 1, k - 1, theta)
    return out


# -- gate placement and the universality chain ------------------------------------------------

def place_gates(one_qubit: dict[str, np.ndarray], two_qubit: dict[str, np.ndarray],
                n_qubits: int) -> dict[str, np.ndarray]:
    """All placements on an n-qubit register: 1-qubit gates on every wire,
    2-qubit gates on adjacent wire pairs."""
    out: dict[str, np.ndarray] = {}
    for name, g in one_qubit.items():
        for pos in range(n_qubits):
            mat = np.kron(np.kron(np.eye(2**pos), g), np.eye(2 ** (n_qubits - pos - 1)))
            out[f"{name}@{pos}"] = mat
    for name, g in two_qubit.items():
        for pos in range(n_qubits - 1):
            mat = np.kron(np.kron(np.eye(2**pos), g), np.eye(2 ** (n_qubits - pos - 2)))
            out[f"{name}@{pos}{pos+1}"] = mat
    return out


def infinite_order_witnesses(one_qubit_gate: np.ndarray, two_qubit_gate: np.ndarray):
    """Two standard non-commuting probe words with irrational eigenphases:
    ((g ⊗ g) W)^2 and ((g ⊗ I) W (I ⊗ g))^2."""
    g, W = one_qubit_gate, two_qubit_gate
    I2 = np.eye(2)
    R1 = np.linalg.matrix_power(np.kron(g, g) @ W, 2)
    R2 = np.linalg.matrix_power(np.kron(g, I2) @ W @ np.kron(I2, g), 2)
    return np.real(R1), np.real(R2)


def _search_witnesses(gens: dict[str, np.ndarray], max_len: int = 6, kmax: int = 10000):
    """Short-word search for two non-commuting elements with certified
    irrational eigenphase (fallback when no standard witnesses exist)."""
    mats = list(gens.values())
    n = mats[0].shape[0]
    seen = set(_grid_keys(np.eye(n, dtype=complex)[None, :, :]))
    frontier = [np.eye(n, dtype=complex)]
    found: list[np.ndarray] = []
    for _ in range(max_len):
        nxt = []
        for m in frontier:
            for g in mats:
                y = m @ g
                k = _grid_keys(y[None, :, :])[0]
                if k in seen:
                    continue
                seen.add(k)
                nxt.append(y)
                if np.max(np.abs(y.imag)) < 1e-9 and abs(np.linalg.det(y) - 1) < 1e-9:
                    cert, _ = _find_certificate([y], kmax)
                    if cert is not None:
                        for prev in found:
                            if np.max(np.abs(prev @ y - y @ prev)) > 1e-8:
                                return prev, y
                        found.append(y)
        frontier = nxt
    raise ArithmeticError("no pair of non-commuting irrational-phase witnesses found")


@dataclass
class UniversalityReport:
    gate_set: str
    steps: list[tuple[str, bool, dict]] = field(default_factory=list)
    verdict: str = "undecided"
    closure_dim: int | None = None
    lie_basis: list[np.ndarray] = field(default_factory=list)
    elapsed_ms: float | None = None

    @property
    def ok(self) -> bool:
        return all(okay for _, okay, _ in self.steps)

    def add(self, name: str, ok: bool, **payload):
        self.steps.append((name, ok, payload))


def verify_universality(one_qubit: dict[str, np.ndarray], two_qubit: dict[str, np.ndarray],
                        name: str = "gates", cap: int = 200000, dims: tuple[int, ...] = (4,),
                        witnesses: tuple[np.ndarray, np.ndarray] | None = None,
                        witness_gate: str | None = None) -> UniversalityReport:
    """Chain of checks deciding density of the generated group in SO(4).

    Steps: closure verdicts per dimension; if infinite, certify two
    irrational-phase witnesses, build their Lie generators, and run the
    commutator closure; dimension 6 = dim so(4) proves density in SO(4),
    and a determinant -1 generator extends it to O(4).  Density in the
    higher SO(2^(n+1)) is then carried by the plane-rotation
    decomposition, whose recomposition ingredient is spot-checked.
    """
    t0 = time.perf_counter()
    report = UniversalityReport(gate_set=name)
    closures = {}
    for nq in sorted(set(int(np.log2(d)) for d in dims)):
        d = 2**nq
        gens = place_gates(one_qubit, two_qubit, nq)
        verdict = finite_closure(list(gens.values()), cap=cap)
        closures[d] = verdict
        report.add(
            f"closure dim {d}",
            True,
            kind=verdict.kind,
            order=verdict.order,
            certificate_cos=str(verdict.certificate_phase.cosine)
            if verdict.certificate_phase and verdict.certificate_phase.cosine is not None
            else None,
        )

    base = closures[min(closures)]
    if base.kind == "finite":
        report.verdict = "finite closure; not universal by this route"
        report.closure_dim = 0
        report.elapsed_ms = (time.perf_counter() - t0) * 1e3
        return report

    gens4 = place_gates(one_qubit, two_qubit, 2)
    if witnesses is None:
        if witness_gate is not None:
            wg = one_qubit[witness_gate]
            w4 = next(iter(two_qubit.values()))
            witnesses = infinite_order_witnesses(wg, w4)
        else:
            witnesses = _search_witnesses(gens4)
    R1, R2 = witnesses

    certs = []
    for i, R in enumerate((R1, R2), start=1):
        evals = np.linalg.eigvals(R)
        res = [eigenphase_order(l) for l in evals]
        irr = [r for r in res if r.kind == "irrational"]
        certs.append(irr)
        report.add(
            f"witness R{i} irrational eigenphase",
            len(irr) == 2,
            cosines=[str(r.cosine) for r in irr],
        )
    if any(len(c) != 2 for c in certs):
        report.verdict = "no irrational-phase certificate"
        report.elapsed_ms = (time.perf_counter() - t0) * 1e3
        return report

    A1 = lie_generator(R1)
    A2 = lie_generator(R2)
    report.add("lie generators", True,
               A1=A1.tolist(), A2=A2.tolist(),
               noncommuting=bool(np.max(np.abs(A1 @ A2 - A2 @ A1)) > 1e-8))

    basis, dim = commutator_closure([A1, A2], ambient_dim=6)
    report.closure_dim = dim
    report.lie_basis = basis
    report.add("commutator closure", dim == 6, dim=dim, ambient=6)

    def _is_reflection(m) -> bool:
        m = np.asarray(m, dtype=complex)
        return bool(np.max(np.abs(m.imag)) < 1e-9 and np.linalg.det(m.real) < 0)

    has_reflection = any(
        _is_reflection(m) for m in list(one_qubit.values()) + list(two_qubit.values())
    )
    report.add("determinant -1 generator", has_reflection)

    rng = np.random.default_rng(7)
    q, _ = np.linalg.qr(rng.standard_normal((8, 8)))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    tri = givens_decompose(q)
    g_err = float(np.max(np.abs(givens_recompose(tri, 8) - q)))
    report.add("plane-rotation recomposition (dim 8 spot check)", g_err < TAU,
               factors=len(tri), error=g_err)

    if dim == 6:
        report.verdict = (
            "dense in SO(4)" + (" and O(4)" if has_reflection else "")
            + "; universal via plane-rotation decomposition and real encoding"
        )
    else:
        report.verdict = f"commutator closure stopped at dim {dim}; density not established"
    report.elapsed_ms = (time.perf_counter() - t0) * 1e3
    return report


def report_to_jsonable(rep: UniversalityReport) -> dict:
    return {
        "gate_set": rep.gate_set,
        "verdict": rep.verdict,
        "closure_dim": rep.closure_dim,
        "lie_basis": [[[float(x) for x in row] for row in m] for m in rep.lie_basis],
        "steps": [{"name": n, "ok": ok, **payload} for n, ok, payload in rep.steps],
    }
