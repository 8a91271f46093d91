"""The finite rotation group G_p of order 2 p^2 (p+1).

Elements are tuples (a, b, c, d, s) over Z/pZ with a^2 - v b^2 = 1 and
s in {1, p-1}, standing for the 3x3 matrix

    [[a, s*v*b, 0],
     [b, s*a,   0],
     [c, d,     s]]  (mod p).

The module provides the group law, enumeration, conjugacy classes, the
semidirect-product structure checks N ⋊ H with N = C_p x C_p and
H ≅ D_{p+1}, and the quotient maps onto the dihedral group.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .dihedral import Word, dihedral_group
from .modp import PrimeContext, make_context

GpElement = tuple[int, int, int, int, int]


def identity() -> GpElement:
    return (1, 0, 0, 0, 1)


def multiply(x: GpElement, y: GpElement, ctx: PrimeContext) -> GpElement:
    p, v = ctx.p, ctx.v
    a, b, c, d, s = x
    a2, b2, c2, d2, s2 = y
    return (
        (a * a2 + s * v * b * b2) % p,
        (a2 * b + s * a * b2) % p,
        (c * a2 + d * b2 + s * c2) % p,
        (s2 * (v * c * b2 + a2 * d) + s * d2) % p,
        (s * s2) % p,
    )


def decompose(x: GpElement, ctx: PrimeContext) -> tuple[tuple[int, int], GpElement]:
    """Split x = n*h with n = (gamma, delta) in N and h = (a,b,0,0,s) in H."""
    p, v = ctx.p, ctx.v
    a, b, c, d, s = x
    sd = (s * d) % p
    gamma = (a * c - b * sd) % p
    delta = (-v * b * c + a * sd) % p
    return (gamma, delta), (a, b, 0, 0, s)


def inverse(x: GpElement, ctx: PrimeContext) -> GpElement:
    p = ctx.p
    (gamma, delta), h = decompose(x, ctx)
    a, b, _, _, s = h
    hinv = h if h[4] == p - 1 else (a, (-b) % p, 0, 0, 1)
    ninv = (1, 0, (-gamma) % p, (-delta) % p, 1)
    return multiply(hinv, ninv, ctx)


def element_matrix(x: GpElement, ctx: PrimeContext) -> list[list[int]]:
    p, v = ctx.p, ctx.v
    a, b, c, d, s = x
    return [[a, (s * v * b) % p, 0], [b, (s * a) % p, 0], [c, d, s]]


def from_matrix(m, ctx: PrimeContext) -> GpElement:
    p = ctx.p
    x = (m[0][0] % p, m[1][0] % p, m[2][0] % p, m[2][1] % p, m[2][2] % p)
    if element_matrix(x, ctx) != [[r % p for r in row] for row in m]:
        raise ValueError(f"matrix is not of the L(a,b,c,d,s) shape mod {p}")
    return x


def is_valid(x: GpElement, ctx: PrimeContext) -> bool:
    p, v = ctx.p, ctx.v
    a, b, c, d, s = x
    return (a * a - v * b * b) % p == 1 and s in (1, p - 1) and all(0 <= t < p for t in (a, b, c, d))


def enumerate_group(ctx: PrimeContext) -> list[GpElement]:
    """All 2 p^2 (p+1) elements, in lexicographic (a,b,c,d,s) order."""
    p = ctx.p
    out = [
        (a, b, c, d, s)
        for (a, b) in sorted(ctx.norm_one())
        for c in range(p)
        for d in range(p)
        for s in (1, p - 1)
    ]
    out.sort()
    return out


# -- quotient maps onto D_{p+1} ------------------------------------------------

def f_p(x: GpElement, ctx: PrimeContext) -> tuple[tuple[int, int], tuple[int, int]]:
    """Upper-left 2x2 block [[a, s v b], [b, s a]] mod p (a homomorphism)."""
    p, v = ctx.p, ctx.v
    a, b, _, _, s = x
    return ((a, (s * v * b) % p), (b, (s * a) % p))


def phi_p(m, ctx: PrimeContext) -> Word:
    """Isomorphism from the f_p image onto D_{p+1} words x^i r^k.

    The rotation generator [[a0, v b0],[b0, a0]] goes to r and
    [[1,0],[0,-1]] goes to x.  Raises ValueError off the image.
    """
    p, v = ctx.p, ctx.v
    (m00, m01), (m10, m11) = m
    det = (m00 * m11 - m01 * m10) % p
    try:
        if det == 1:
            if m11 != m00 or m01 != (v * m10) % p:
                raise KeyError
            return (0, ctx.dlog((m00, m10)))
        if det == p - 1:
            if m11 != (-m00) % p or m01 != (-v * m10) % p:
                raise KeyError
            return (1, ctx.dlog((m00, (-m10) % p)))
    except KeyError:
        pass
    raise ValueError(f"matrix {m} is not in the f_p image mod {p}")


def to_dihedral(x: GpElement, ctx: PrimeContext) -> Word:
    return phi_p(f_p(x, ctx), ctx)


# -- generators ----------------------------------------------------------------

def rotation_gen(ctx: PrimeContext) -> GpElement:
    return (ctx.a0, ctx.b0, 0, 0, 1)


def reflection_gen(ctx: PrimeContext) -> GpElement:
    return (1, 0, 0, 0, ctx.p - 1)


def translation_gen(ctx: PrimeContext) -> GpElement:
    return (1, 0, 1, 0, 1)


def closure(gens: list[GpElement], ctx: PrimeContext) -> set[GpElement]:
    seen = set(gens) | {identity()}
    frontier = list(seen)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = multiply(x, g, ctx)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def standard_generators(ctx: PrimeContext) -> list[GpElement]:
    """A small verified generating set (two elements when possible)."""
    order = 2 * ctx.p**2 * (ctx.p + 1)
    pair = [rotation_gen(ctx), (1, 0, 1, 0, ctx.p - 1)]
    if len(closure(pair, ctx)) == order:
        return pair
    triple = [rotation_gen(ctx), reflection_gen(ctx), translation_gen(ctx)]
    if len(closure(triple, ctx)) != order:
        raise ArithmeticError(f"generating set failed for p = {ctx.p}")
    return triple


# -- conjugacy classes ----------------------------------------------------------

@dataclass(frozen=True)
class ConjugacyClassTable:
    classes: tuple[tuple[GpElement, ...], ...]
    reps: tuple[GpElement, ...]
    sizes: tuple[int, ...]
    index: dict[GpElement, int]

    def __len__(self) -> int:
        return len(self.classes)


def conjugacy_classes(ctx: PrimeContext) -> ConjugacyClassTable:
    """Partition of G_p by conjugation-orbit closure under the generators.

    Classes are sorted by (size, lexicographic representative); each class
    is internally sorted, so representatives are reproducible.
    """
    gens = standard_generators(ctx)
    conj = [(g, inverse(g, ctx)) for g in gens]
    seen: set[GpElement] = set()
    classes: list[tuple[GpElement, ...]] = []
    for x in enumerate_group(ctx):
        if x in seen:
            continue
        orbit = {x}
        frontier = [x]
        while frontier:
            nxt = []
            for y in frontier:
                for g, ginv in conj:
                    z = multiply(multiply(g, y, ctx), ginv, ctx)
                    if z not in orbit:
                        orbit.add(z)
                        nxt.append(z)
            frontier = nxt
        seen.update(orbit)
        classes.append(tuple(sorted(orbit)))
    classes.sort(key=lambda c: (len(c), c[0]))
    index = {g: i for i, cls in enumerate(classes) for g in cls}
    return ConjugacyClassTable(
        classes=tuple(classes),
        reps=tuple(cls[0] for cls in classes),
        sizes=tuple(len(cls) for cls in classes),
        index=index,
    )


# -- structure verification -----------------------------------------------------

@dataclass
class StructureReport:
    p: int
    checks: list[tuple[str, bool, str]]

    @property
    def ok(self) -> bool:
        return all(okay for _, okay, _ in self.checks)

    def failed(self) -> list[str]:
        return [name for name, okay, _ in self.checks if not okay]


def verify_structure(ctx: PrimeContext) -> StructureReport:
    """Check G_p = N ⋊ H with N = {L(1,0,c,d,1)} and H = {L(a,b,0,0,s)}."""
    p = ctx.p
    checks: list[tuple[str, bool, str]] = []

    def add(name: str, okay: bool, detail: str = ""):
        checks.append((name, okay, detail))

    n_sub = [(1, 0, c, d, 1) for c in range(p) for d in range(p)]
    n_set = set(n_sub)
    add("N order p^2", len(n_set) == p * p, f"|N| = {len(n_sub)}")
    abelian = all(
        multiply(x, y, ctx) == multiply(y, x, ctx) and multiply(x, y, ctx) in n_set
        for x in n_sub
        for y in n_sub
    )
    add("N abelian and closed", abelian)

    elements = enumerate_group(ctx)
    normal = all(
        multiply(multiply(g, x, ctx), inverse(g, ctx), ctx) in n_set
        for g in standard_generators(ctx)
        for x in n_sub
    )
    add("N normal", normal)
    # p does not divide 2(p+1), so a normal subgroup of order p^2 is the
    # unique Sylow p-subgroup
    add("N unique Sylow p-subgroup", normal and (2 * (p + 1)) % p != 0)

    h_sub = [(a, b, 0, 0, s) for (a, b) in ctx.norm_one() for s in (1, p - 1)]
    add("H order 2(p+1)", len(set(h_sub)) == 2 * (p + 1), f"|H| = {len(h_sub)}")
    add("N ∩ H trivial", set(n_sub) & set(h_sub) == {identity()})
    add(
        "N·H covers G_p",
        len({multiply(n, h, ctx) for n in n_sub for h in h_sub}) == len(elements),
    )

    r = rotation_gen(ctx)
    rinv = inverse(r, ctx)
    a0, b0, v = ctx.a0, ctx.b0, ctx.v
    rot_action = all(
        multiply(multiply(r, (1, 0, c, d, 1), ctx), rinv, ctx)
        == (1, 0, (a0 * c - b0 * d) % p, (a0 * d - v * b0 * c) % p, 1)
        for c in range(p)
        for d in range(p)
    )
    add("rotation action (c,d) -> (a0 c - b0 d, a0 d - v b0 c)", rot_action)
    xg = reflection_gen(ctx)
    ref_action = all(
        multiply(multiply(xg, (1, 0, c, d, 1), ctx), xg, ctx) == (1, 0, (-c) % p, d, 1)
        for c in range(p)
        for d in range(p)
    )
    add("reflection action (c,d) -> (-c, d)", ref_action)

    dg = dihedral_group(p + 1)
    add(
        "phi_p ∘ f_p generator images",
        to_dihedral(r, ctx) == (0, 1) and to_dihedral(xg, ctx) == (1, 0),
    )
    kernel = {g for g in elements if to_dihedral(g, ctx) == (0, 0)}
    add("ker(phi_p ∘ f_p) = N", kernel == n_set)
    add(
        "phi_p ∘ f_p surjective",
        {to_dihedral(g, ctx) for g in h_sub} == set(dg.elements),
    )
    return StructureReport(p=p, checks=checks)


# -- shared group wrapper for representation work --------------------------------

class GpGroup:
    """Cached element list and class table of G_p for one context."""

    def __init__(self, ctx: PrimeContext):
        self.ctx = ctx
        self.p = ctx.p
        self.order = 2 * ctx.p**2 * (ctx.p + 1)
        self.elements = enumerate_group(ctx)
        self.identity = identity()
        table = conjugacy_classes(ctx)
        self.classes = table.classes
        self.class_reps = list(table.reps)
        self.class_sizes = list(table.sizes)
        self.class_index = table.index
        self.class_table = table

    def mul(self, x: GpElement, y: GpElement) -> GpElement:
        return multiply(x, y, self.ctx)

    def inv(self, x: GpElement) -> GpElement:
        return inverse(x, self.ctx)


@lru_cache(maxsize=None)
def gp_group(p: int) -> GpGroup:
    return GpGroup(make_context(p))


# -- stored subgroup catalog for p = 3 ------------------------------------------
#
# Subgroups of G_3 entering the gate analysis, as explicit element sets.
# Signs are mod 3: -1 = 2; s = -1 is stored as 2.

def _g3_catalog() -> dict[str, frozenset[GpElement]]:
    Z = range(3)
    pm = (1, 2)
    cd_line = ((0, 1), (1, 2), (2, 0))  # (0,1), (1,-1), (-1,0) mod 3
    neg = lambda t: ((-t[0]) % 3, (-t[1]) % 3)

    cat: dict[str, set[GpElement]] = {}
    cat["N1"] = {(a, 0, c, d, 1) for a in pm for c in Z for d in Z} | {
        (0, b, c, d, 2) for b in pm for c in Z for d in Z
    }
    cat["N2"] = {(a, b, c, d, 1) for (a, b) in ((1, 0), (2, 0), (0, 1), (0, 2)) for c in Z for d in Z}
    cat["N3"] = {(a, 0, c, d, s) for a in pm for s in pm for c in Z for d in Z}
    cat["H1"] = {(1, 0, c, d, s) for s in pm for c in Z for d in Z}
    cat["H2"] = {(1, 0, c, d, 1) for c in Z for d in Z} | {(2, 0, c, d, 2) for c in Z for d in Z}
    cat["H3"] = {(a, 0, c, d, 1) for a in pm for c in Z for d in Z}
    cat["H4"] = {(1, 0, c, d, 1) for c in Z for d in Z} | {(0, 1, c, d, 2) for c in Z for d in Z}
    cat["H5"] = {(1, 0, c, d, 1) for c in Z for d in Z} | {(0, 2, c, d, 2) for c in Z for d in Z}
    cat["K1"] = {(a, 0, 0, d, s) for a in pm for s in pm for d in Z}
    cat["K2"] = {(1, 0, 0, d, 1) for d in Z} | {(2, 0, 0, d, 2) for d in Z} | {
        (1, 0, 1, d, 2) for d in Z} | {(2, 0, 2, d, 1) for d in Z}
    cat["K3"] = {(1, 0, 0, d, 1) for d in Z} | {(2, 0, 0, d, 2) for d in Z} | {
        (1, 0, 2, d, 2) for d in Z} | {(2, 0, 1, d, 1) for d in Z}
    cat["K4"] = {(a, 0, c, 0, s) for a in pm for s in pm for c in Z}
    # d = s(1-a) with a, s read as signs: a=+1 -> d=0; a=-1 -> d=2s mod 3
    cat["K5"] = {(1, 0, c, 0, 1) for c in Z} | {(1, 0, c, 0, 2) for c in Z} | {
        (2, 0, c, 2, 1) for c in Z} | {(2, 0, c, 1, 2) for c in Z}
    cat["K6"] = {(1, 0, c, 0, 1) for c in Z} | {(1, 0, c, 0, 2) for c in Z} | {
        (2, 0, c, 1, 1) for c in Z} | {(2, 0, c, 2, 2) for c in Z}
    cat["K7"] = {(a, 0, c, c, 1) for a in pm for c in Z} | {(0, b, c, c, 2) for b in pm for c in Z}
    cat["K8"] = {(0, 1, c, c, 2) for c in Z} | {(0, 2, *t, 2) for t in cd_line} | {
        (1, 0, c, c, 1) for c in Z} | {(2, 0, *neg(t), 1) for t in cd_line}
    cat["K9"] = {(0, 1, c, c, 2) for c in Z} | {(0, 2, *neg(t), 2) for t in cd_line} | {
        (1, 0, c, c, 1) for c in Z} | {(2, 0, *t, 1) for t in cd_line}
    cat["K10"] = {
        (a, b, c, d, s)
        for (a, b, s) in ((1, 0, 1), (2, 0, 1), (0, 1, 2), (0, 2, 2))
        for c in Z
        for d in Z
        if (c + d) % 3 == 0
    }
    cat["K11"] = (
        {(0, 1, c, d, 2) for c in Z for d in Z if (c + d) % 3 == 1}
        | {(0, 2, c, d, 2) for c in Z for d in Z if (c + d) % 3 == 0}
        | {(1, 0, c, d, 1) for c in Z for d in Z if (c + d) % 3 == 0}
        | {(2, 0, c, d, 1) for c in Z for d in Z if (c + d) % 3 == 2}
    )
    cat["K12"] = (
        {(0, 1, c, d, 2) for c in Z for d in Z if (c + d) % 3 == 2}
        | {(0, 2, c, d, 2) for c in Z for d in Z if (c + d) % 3 == 0}
        | {(1, 0, c, d, 1) for c in Z for d in Z if (c + d) % 3 == 0}
        | {(2, 0, c, d, 1) for c in Z for d in Z if (c + d) % 3 == 1}
    )
    return {k: frozenset(v) for k, v in cat.items()}


G3_SUBGROUPS: dict[str, frozenset[GpElement]] = _g3_catalog()
G3_SUBGROUP_ORDERS = {"N": 36, "H": 18, "K": 12}

# canonical generating pair of G_3 (the gate representations are given on these)
G3_GEN_A: GpElement = (0, 2, 0, 0, 1)  # [[0,1,0],[-1,0,0],[0,0,1]]
G3_GEN_B: GpElement = (0, 1, 1, 0, 2)  # [[0,1,0],[1,0,0],[1,0,-1]]


def serialize_element(x: GpElement, ctx: PrimeContext) -> list[int]:
    """JSON form [a,b,c,d,s] with s in {1,-1}."""
    a, b, c, d, s = x
    return [a, b, c, d, 1 if s == 1 else -1]


def deserialize_element(data, ctx: PrimeContext) -> GpElement:
    a, b, c, d, s = data
    x = (a % ctx.p, b % ctx.p, c % ctx.p, d % ctx.p, s % ctx.p)
    if not is_valid(x, ctx):
        raise ValueError(f"{data} is not a valid element mod {ctx.p}")
    return x
