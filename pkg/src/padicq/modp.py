"""Prime-dependent arithmetic over Z/pZ.

For an odd prime p the whole toolkit is driven by a small set of derived
constants: the nonsquare v entering the anisotropic form x^2 - v*y^2, the
auxiliary nonsquare u (only when p = 1 mod 4), and a generator (a0, b0) of
the cyclic group of norm-one pairs {(a, b) : a^2 - v*b^2 = 1 mod p}.
"""

from __future__ import annotations

from dataclasses import dataclass, field


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def squares_mod(p: int) -> set[int]:
    """The set of nonzero quadratic residues mod p."""
    return {(x * x) % p for x in range(1, p)}


def smallest_nonsquare(p: int) -> int:
    sq = squares_mod(p)
    for u in range(2, p):
        if u not in sq:
            return u
    raise ArithmeticError(f"no nonsquare mod {p}")  # unreachable for p > 2


def norm_one_mul(x: tuple[int, int], y: tuple[int, int], v: int, p: int) -> tuple[int, int]:
    """(a,b)*(a',b') = (aa'+v bb', ab'+a'b), the product in Z[sqrt(v)]/p."""
    a, b = x
    c, d = y
    return ((a * c + v * b * d) % p, (a * d + b * c) % p)


@dataclass(frozen=True)
class PrimeContext:
    """Constants attached to an odd prime p.

    v is a nonsquare mod p, so a^2 - v*b^2 = 1 cuts out a cyclic group of
    order p+1 generated by (a0, b0).  u is the smallest nonsquare, kept
    only when p = 1 mod 4 (there v = -u mod p; for p = 3 mod 4, v = p-1).
    """

    p: int
    v: int
    u: int | None
    a0: int
    b0: int
    _dlog: dict[tuple[int, int], int] = field(repr=False, hash=False, compare=False, default_factory=dict)

    def norm_one(self) -> list[tuple[int, int]]:
        """The cyclic orbit of (a0, b0): p+1 norm-one pairs, powers in order."""
        out = [(1, 0)]
        cur = (self.a0, self.b0)
        while cur != (1, 0):
            out.append(cur)
            cur = norm_one_mul(cur, (self.a0, self.b0), self.v, self.p)
        return out

    def dlog(self, pair: tuple[int, int]) -> int:
        """Exponent k with (a0,b0)^k == pair in the norm-one group."""
        if not self._dlog:
            for k, q in enumerate(self.norm_one()):
                self._dlog[q] = k
        return self._dlog[pair]


def make_context(p: int) -> PrimeContext:
    """Build the PrimeContext for an odd prime p.

    Deterministic choices: u is the smallest positive nonsquare, and
    (a0, b0) is the lexicographically smallest norm-one pair of full
    order p+1.
    """
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if p == 2:
        raise ValueError("p = 2 has no mod-p parametrization here; use the order-6 dihedral surrogate")
    if p % 4 == 3:
        v, u = p - 1, None
    else:
        u = smallest_nonsquare(p)
        v = (-u) % p
    pairs = sorted((a, b) for a in range(p) for b in range(p) if (a * a - v * b * b) % p == 1)
    if len(pairs) != p + 1:
        raise ArithmeticError(f"norm-one group mod {p} has {len(pairs)} elements, expected {p + 1}")
    for a, b in pairs:
        if _order(a, b, v, p) == p + 1:
            return PrimeContext(p=p, v=v, u=u, a0=a, b0=b)
    raise ArithmeticError(f"norm-one group mod {p} is not cyclic of order {p + 1}")


def _order(a: int, b: int, v: int, p: int) -> int:
    cur, k = (a, b), 1
    while cur != (1, 0):
        cur = norm_one_mul(cur, (a, b), v, p)
        k += 1
    return k


def norm_one_group(ctx: PrimeContext) -> list[tuple[int, int]]:
    """Ordered list of the p+1 norm-one pairs (the cyclic orbit of (a0,b0))."""
    return ctx.norm_one()
