"""Exterior algebra bookkeeping on N generators.

Basis elements of degree p are strictly increasing index tuples, ordered
lexicographically.  The same combinatorics serves both ``Λg*`` (theta's)
and ``Λg`` (X's).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb

from .lie import LieAlgebra
from .linalg import Matrix


class ExteriorBasis:
    def __init__(self, n: int):
        if n < 0:
            raise ValueError("negative number of generators")
        self.n = n
        self.degrees = [list(combinations(range(n), p)) for p in range(n + 1)]
        self._index = [{t: i for i, t in enumerate(ts)} for ts in self.degrees]

    def __call__(self, p: int) -> list[tuple[int, ...]]:
        return self.degrees[p] if 0 <= p <= self.n else []

    def dim(self, p: int) -> int:
        return comb(self.n, p) if 0 <= p <= self.n else 0

    def index(self, t: tuple[int, ...]) -> int:
        return self._index[len(t)][t]

    @property
    def total_dim(self) -> int:
        return 2**self.n


@lru_cache(maxsize=None)
def basis(n: int) -> ExteriorBasis:
    return ExteriorBasis(n)


def wedge(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, tuple[int, ...]] | None:
    """``e_a ∧ e_b = sign * e_c`` for sorted tuples, or None if it vanishes."""
    if set(a) & set(b):
        return None
    # sign of the shuffle: count pairs (x in a, y in b) with x > y
    inv = sum(1 for x in a for y in b if x > y)
    return (-1 if inv % 2 else 1), tuple(sorted(a + b))


def wedge_front(i: int, t: tuple[int, ...]) -> tuple[int, tuple[int, ...]] | None:
    if i in t:
        return None
    pos = sum(1 for x in t if x < i)
    return (-1 if pos % 2 else 1), t[:pos] + (i,) + t[pos:]


def interior(i: int, t: tuple[int, ...]) -> tuple[int, tuple[int, ...]] | None:
    """Contract the dual of generator ``i`` into ``e_t`` from the front."""
    if i not in t:
        return None
    pos = t.index(i)
    return (-1 if pos % 2 else 1), t[:pos] + t[pos + 1 :]


def d_dr_generator(lie: LieAlgebra, i: int) -> dict[tuple[int, int], Fraction]:
    """``d theta^i = -sum_{j<k} C^i_jk theta^j theta^k``."""
    out = {}
    for (j, k), br in lie.brackets.items():
        if j < k and i in br:
            out[j, k] = -br[i]
    return out


def d_dr(lie: LieAlgebra, t: tuple[int, ...]) -> dict[tuple[int, ...], Fraction]:
    """de Rham differential of ``theta^t`` as a graded derivation."""
    out: dict[tuple[int, ...], Fraction] = {}
    for r, i in enumerate(t):
        head, tail = t[:r], t[r + 1 :]
        sgn = -1 if r % 2 else 1
        for pair, c in d_dr_generator(lie, i).items():
            w1 = wedge(head, pair)
            if w1 is None:
                continue
            w2 = wedge(w1[1], tail)
            if w2 is None:
                continue
            key = w2[1]
            out[key] = out.get(key, 0) + sgn * w1[0] * w2[0] * c
    return {k: v for k, v in out.items() if v}


def d_dr_matrix(lie: LieAlgebra, p: int) -> Matrix:
    eb = basis(lie.dim)
    ent = {}
    for col, t in enumerate(eb(p)):
        for key, v in d_dr(lie, t).items():
            ent[eb.index(key), col] = v
    return Matrix(eb.dim(p + 1), eb.dim(p), ent)
