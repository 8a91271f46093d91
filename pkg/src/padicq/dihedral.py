"""Dihedral group D_n as words x^i r^k, with its conjugacy classes.

Words are pairs (i, k), i in {0,1}, k in Z/nZ, meaning x^i r^k under the
presentation r^n = x^2 = e, x r x = r^-1.
"""

from __future__ import annotations

from functools import lru_cache

Word = tuple[int, int]


def dihedral_mul(w1: Word, w2: Word, n: int) -> Word:
    # x^i r^k * x^j r^l = x^(i+j) r^((-1)^j k + l)
    i, k = w1
    j, l = w2
    return ((i + j) % 2, ((k if j == 0 else -k) + l) % n)


def dihedral_inv(w: Word, n: int) -> Word:
    i, k = w
    return (i, k) if i == 1 else (0, (-k) % n)


class DihedralGroup:
    """Element list, multiplication and conjugacy classes of D_n."""

    def __init__(self, n: int):
        if n < 3:
            raise ValueError("need n >= 3")
        self.n = n
        self.order = 2 * n
        self.elements: list[Word] = [(i, k) for i in (0, 1) for k in range(n)]
        self.identity: Word = (0, 0)
        self.classes, self.class_sizes, self.class_index = self._conjugacy_classes()
        self.class_reps = [cls[0] for cls in self.classes]

    def mul(self, w1: Word, w2: Word) -> Word:
        return dihedral_mul(w1, w2, self.n)

    def inv(self, w: Word) -> Word:
        return dihedral_inv(w, self.n)

    def _conjugacy_classes(self):
        seen: set[Word] = set()
        classes: list[list[Word]] = []
        for g in self.elements:
            if g in seen:
                continue
            orbit = sorted({self.mul(self.mul(h, g), self.inv(h)) for h in self.elements})
            seen.update(orbit)
            classes.append(orbit)
        classes.sort(key=lambda c: (len(c), c[0]))
        index = {g: i for i, cls in enumerate(classes) for g in cls}
        return classes, [len(c) for c in classes], index


@lru_cache(maxsize=None)
def dihedral_group(n: int) -> DihedralGroup:
    return DihedralGroup(n)
