"""Universal enveloping algebra in the PBW basis.

Elements are dicts mapping exponent tuples ``e`` to Fractions and stand for
``sum c_e X_1^{e_1} ... X_N^{e_N}``.  Zero coefficients are never stored.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import permutations, product
from math import comb, factorial
from typing import Iterable, Sequence

from .lie import LieAlgebra
from .linalg import Matrix

Elem = dict  # tuple[int, ...] -> Fraction


def add_into(acc: dict, other: dict, scale=1) -> dict:
    for k, v in other.items():
        s = acc.get(k, 0) + scale * v
        if s:
            acc[k] = s
        else:
            acc.pop(k, None)
    return acc


def _bump(e: tuple[int, ...], i: int, by: int = 1) -> tuple[int, ...]:
    return e[:i] + (e[i] + by,) + e[i + 1 :]


def degree(e: tuple[int, ...]) -> int:
    return sum(e)


def word_of(e: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(i for i, k in enumerate(e) for _ in range(k))


class PBW:
    """Arithmetic in ``U(g)`` for a fixed Lie algebra."""

    def __init__(self, lie: LieAlgebra):
        self.lie = lie
        self.n = lie.dim
        self.zero_exp = (0,) * self.n
        self._left: dict[tuple[int, tuple[int, ...]], dict] = {}
        self._antipode: dict[tuple[int, ...], dict] = {}
        self._sym: dict[tuple[int, ...], dict] = {}

    # constructors

    def one(self) -> Elem:
        return {self.zero_exp: Fraction(1)}

    def gen(self, i: int) -> Elem:
        return {_bump(self.zero_exp, i): Fraction(1)}

    def unit_exp(self, i: int) -> tuple[int, ...]:
        return _bump(self.zero_exp, i)

    # products

    def mul_gen_left(self, i: int, e: tuple[int, ...]) -> Elem:
        """Normal form of ``X_i X^e``."""
        key = (i, e)
        hit = self._left.get(key)
        if hit is not None:
            return hit
        j = next((t for t, k in enumerate(e) if k), self.n)
        if i <= j:
            out = {_bump(e, i): Fraction(1)}
        else:
            # X_i X_j X^{e'} = X_j (X_i X^{e'}) + [X_i, X_j] X^{e'}
            rest = _bump(e, j, -1)
            out = {}
            for f, c in self.mul_gen_left(i, rest).items():
                add_into(out, self.mul_gen_left(j, f), c)
            for k, c in self.lie.brackets.get((i, j), {}).items():
                add_into(out, self.mul_gen_left(k, rest), c)
        self._left[key] = out
        return out

    def mul_word_left(self, word: Sequence[int], b: Elem) -> Elem:
        out = dict(b)
        for g in reversed(word):
            nxt: dict = {}
            for f, c in out.items():
                add_into(nxt, self.mul_gen_left(g, f), c)
            out = nxt
        return out

    def mul(self, a: Elem, b: Elem) -> Elem:
        out: dict = {}
        for e, c in a.items():
            add_into(out, self.mul_word_left(word_of(e), b), c)
        return out

    def normalize(self, word: Sequence[int], coeff=1) -> Elem:
        """``coeff * X_{w_0} X_{w_1} ...`` in PBW normal form."""
        out = self.mul_word_left(word, self.one())
        return {k: v * coeff for k, v in out.items()} if coeff != 1 else out

    def bracket(self, a: Elem, b: Elem) -> Elem:
        return add_into(self.mul(a, b), self.mul(b, a), -1)

    # Hopf structure

    def coproduct_monomial(self, e: tuple[int, ...]) -> list[tuple[tuple[int, ...], tuple[int, ...], int]]:
        out = []
        for f in product(*(range(k + 1) for k in e)):
            c = 1
            for a, b in zip(e, f):
                c *= comb(a, b)
            out.append((f, tuple(a - b for a, b in zip(e, f)), c))
        return out

    def coproduct(self, a: Elem) -> dict:
        out: dict = {}
        for e, c in a.items():
            for f, g, k in self.coproduct_monomial(e):
                add_into(out, {(f, g): Fraction(k)}, c)
        return out

    def iterated_coproduct_monomial(self, e: tuple[int, ...], legs: int) -> list[tuple[tuple, int]]:
        """``Δ^{(legs-1)}(X^e)`` as a list of (tuple of exponent vectors, multiplicity)."""
        if legs == 1:
            return [((e,), 1)]
        per_gen = []
        for k in e:
            splits = []
            for parts in _compositions(k, legs):
                mult = factorial(k)
                for p in parts:
                    mult //= factorial(p)
                splits.append((parts, mult))
            per_gen.append(splits)
        out = []
        for choice in product(*per_gen):
            mult = 1
            for _, m in choice:
                mult *= m
            leg_exps = tuple(tuple(choice[g][0][l] for g in range(self.n)) for l in range(legs))
            out.append((leg_exps, mult))
        return out

    def counit(self, a: Elem) -> Fraction:
        return a.get(self.zero_exp, Fraction(0))

    def antipode_monomial(self, e: tuple[int, ...]) -> Elem:
        hit = self._antipode.get(e)
        if hit is None:
            sign = -1 if degree(e) % 2 else 1
            hit = self.normalize(tuple(reversed(word_of(e))), sign)
            self._antipode[e] = hit
        return hit

    def antipode(self, a: Elem) -> Elem:
        out: dict = {}
        for e, c in a.items():
            add_into(out, self.antipode_monomial(e), c)
        return out

    # symmetrization

    def sym_monomial(self, e: tuple[int, ...]) -> Elem:
        """Symmetrization of the commutative monomial ``x^e``: average over orderings."""
        hit = self._sym.get(e)
        if hit is None:
            word = word_of(e)
            out: dict = {}
            seen = set(permutations(word))
            for w in seen:
                add_into(out, self.normalize(w))
            scale = Fraction(1, len(seen)) if seen else Fraction(1)
            hit = {k: v * scale for k, v in out.items()}
            self._sym[e] = hit
        return hit

    def symmetric_coordinates(self, a: Elem) -> dict:
        """Coordinates of ``a`` in the basis of symmetrized monomials."""
        rest = dict(a)
        out: dict = {}
        while rest:
            top = max(degree(e) for e in rest)
            for e in [e for e in rest if degree(e) == top]:
                c = rest.get(e)
                if not c:
                    continue
                out[e] = c
                add_into(rest, self.sym_monomial(e), -c)
        return out

    # action on a finite-dimensional right module

    def action_matrix(self, B: Sequence[Matrix], e: tuple[int, ...], cache: dict | None = None) -> Matrix:
        """Row-convention matrix of ``v -> v . X^e``: B_1^{e_1} ... B_N^{e_N}."""
        if cache is not None and e in cache:
            return cache[e]
        m = B[0].nrows if B else 0
        out = Matrix.identity(m)
        for i, k in enumerate(e):
            for _ in range(k):
                out = out @ B[i]
        if cache is not None:
            cache[e] = out
        return out

    # random elements and an independent rewriting oracle

    def random_word(self, rng: random.Random, max_len: int = 5) -> tuple[int, ...]:
        return tuple(rng.randrange(self.n) for _ in range(rng.randint(0, max_len)))

    def rewrite_word(self, word: Sequence[int], rng: random.Random) -> Elem:
        """Normal form by random adjacent swaps on plain words (no memoization)."""
        pending: dict[tuple[int, ...], Fraction] = {tuple(word): Fraction(1)}
        done: dict[tuple[int, ...], Fraction] = {}
        while pending:
            w, c = pending.popitem()
            descents = [p for p in range(len(w) - 1) if w[p] > w[p + 1]]
            if not descents:
                e = [0] * self.n
                for g in w:
                    e[g] += 1
                add_into(done, {tuple(e): c})
                continue
            p = rng.choice(descents)
            j, i = w[p], w[p + 1]
            add_into(pending, {w[:p] + (i, j) + w[p + 2 :]: c})
            for k, v in self.lie.brackets.get((j, i), {}).items():
                add_into(pending, {w[:p] + (k,) + w[p + 2 :]: c * v})
        return done


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def tensor_mul(pbw: PBW, a: dict, b: dict) -> dict:
    """Product in ``U⊗U`` of dicts keyed by exponent pairs."""
    out: dict = {}
    for (a1, a2), c in a.items():
        for (b1, b2), d in b.items():
            left = pbw.mul({a1: Fraction(1)}, {b1: Fraction(1)})
            right = pbw.mul({a2: Fraction(1)}, {b2: Fraction(1)})
            for x, u in left.items():
                for y, v in right.items():
                    add_into(out, {(x, y): c * d * u * v})
    return out


def monomials_up_to(n: int, deg: int) -> list[tuple[int, ...]]:
    return [e for e in product(range(deg + 1), repeat=n) if sum(e) <= deg]


def from_terms(terms: Iterable[tuple[tuple[int, ...], object]]) -> Elem:
    out: dict = {}
    for e, c in terms:
        add_into(out, {tuple(e): Fraction(c)})
    return out
