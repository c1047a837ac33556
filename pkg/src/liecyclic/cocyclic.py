"""Hopf-cyclic side: U(g)-coactions, the cocyclic module V⊗U^{⊗q}, b and B.

A :class:`ChainTensor` is a sparse combination of ``v^a ⊗ X^{e_1} ⊗ .. ⊗ X^{e_q}``
keyed by ``(a, (e_1, .., e_q))``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product
from math import factorial
from typing import Sequence

from .complexes import del_ce, del_k
from .exterior import basis
from .linalg import Matrix, in_span, nullspace, rref
from .pbw import PBW, add_into, degree
from .sayd import CoactionMatrices, SaydModule, check_comodule


class NotConilpotentError(ValueError):
    pass


class LevelCapError(ValueError):
    pass


# tensors


@dataclass
class ChainTensor:
    q: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        self.terms = {k: Fraction(v) for k, v in self.terms.items() if v}
        for _, legs in self.terms:
            if len(legs) != self.q:
                raise ValueError(f"term with {len(legs)} legs in a level-{self.q} tensor")

    def __add__(self, other: ChainTensor) -> ChainTensor:
        if self.q != other.q:
            raise ValueError("adding tensors of different levels")
        return ChainTensor(self.q, add_into(dict(self.terms), other.terms))

    def __sub__(self, other: ChainTensor) -> ChainTensor:
        if self.q != other.q:
            raise ValueError("subtracting tensors of different levels")
        return ChainTensor(self.q, add_into(dict(self.terms), other.terms, -1))

    def scale(self, c) -> ChainTensor:
        return ChainTensor(self.q, {k: v * c for k, v in self.terms.items()})

    def __neg__(self) -> ChainTensor:
        return self.scale(-1)

    def __eq__(self, other) -> bool:
        return isinstance(other, ChainTensor) and self.q == other.q and self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def by_legs(self) -> dict[tuple, dict[int, Fraction]]:
        """Group into ``legs -> V-vector``."""
        out: dict = {}
        for (a, legs), c in self.terms.items():
            out.setdefault(legs, {})[a] = c
        return out


def zero_tensor(q: int) -> ChainTensor:
    return ChainTensor(q)


# U(g)-coactions


@dataclass
class UgCoaction:
    """``v^a -> sum_e X^e ⊗ (row a of mats[e])``."""

    dim: int
    mats: dict  # exponent tuple -> Matrix

    def terms(self, a: int) -> list[tuple[tuple[int, ...], int, Fraction]]:
        out = []
        for e in sorted(self.mats):
            for b, c in self.mats[e].row(a).items():
                out.append((e, b, c))
        return out


def extend_coaction(coaction: CoactionMatrices, pbw: PBW | None = None) -> UgCoaction:
    """Extend a locally conilpotent g-coaction to U(g).

    ``∇ = exp(T)`` with ``T = sum_j X_j ⊗ A^j`` in ``U(g) ⊗ End(V)``: the degree-k
    part is ``1/k! sum over words X_{j_1}..X_{j_k} ⊗ A^{j_1}..A^{j_k}``, i.e. the
    symmetrized monomials divided by their factorials.
    """
    rep = check_comodule(coaction)
    if not rep.commuting:
        raise NotConilpotentError("coaction matrices do not commute")
    if not rep.conilpotent:
        raise NotConilpotentError("coaction is not locally conilpotent")
    pbw = pbw or PBW(coaction.lie)
    m = coaction.dim
    total = {pbw.zero_exp: Matrix.identity(m)}
    power = {pbw.zero_exp: Matrix.identity(m)}
    k = 0
    while power:
        k += 1
        nxt: dict = {}
        for e, M in power.items():
            for j, A in enumerate(coaction.mats):
                MA = M @ A
                if not MA:
                    continue
                for f, c in pbw.mul({e: Fraction(1)}, pbw.gen(j)).items():
                    term = MA.scale(c / k)
                    nxt[f] = nxt[f] + term if f in nxt else term
        power = {e: M for e, M in nxt.items() if M}
        for e, M in power.items():
            total[e] = total[e] + M if e in total else M
    return UgCoaction(m, {e: M for e, M in total.items() if M})


def restrict_coaction(ug: UgCoaction, lie, projection: str = "symmetric", pbw: PBW | None = None) -> CoactionMatrices:
    """Compose with a projection ``U(g) -> g``.

    ``symmetric`` reads off the degree-one coordinate in the basis of
    symmetrized monomials (this makes restrict∘extend the identity);
    ``pbw`` takes the degree-one PBW coefficient.
    """
    pbw = pbw or PBW(lie)
    n, m = lie.dim, ug.dim
    out = [Matrix.zeros(m) for _ in range(n)]
    for e, M in ug.mats.items():
        if projection == "pbw":
            coords = {e: Fraction(1)} if degree(e) == 1 else {}
        elif projection == "symmetric":
            coords = pbw.symmetric_coordinates({e: Fraction(1)})
        else:
            raise ValueError(f"unknown projection {projection!r}")
        for f, c in coords.items():
            if degree(f) == 1:
                j = f.index(1)
                out[j] = out[j] + M.scale(c)
    return CoactionMatrices(lie, tuple(out), m)


def regular_coaction_restriction(pbw: PBW, u: dict, projection: str = "pbw") -> list[tuple[int, dict]]:
    """g-coaction on ``U(g)`` obtained from ``Δ`` and a projection: ``[(j, u_j)]`` for ``sum X_j ⊗ u_j``."""
    acc: dict[int, dict] = {}
    for (f, g), c in pbw.coproduct(u).items():
        if projection == "pbw":
            coords = {f: Fraction(1)} if degree(f) == 1 else {}
        else:
            coords = pbw.symmetric_coordinates({f: Fraction(1)})
        for h, d in coords.items():
            if degree(h) == 1:
                add_into(acc.setdefault(h.index(1), {}), {g: c * d})
    return [(j, acc[j]) for j in sorted(acc) if acc[j]]


def adjoint_stability_defect(pbw: PBW, terms: Sequence[tuple[int, dict]]) -> dict:
    """``sum_j u_j · X_j`` for the right adjoint action ``u · X = uX - Xu``."""
    out: dict = {}
    for j, u in terms:
        add_into(out, pbw.bracket(u, pbw.gen(j)))
    return out


# checks on U(g)-coactions


def _coact_vec(ug: UgCoaction, vec: dict[int, Fraction]) -> dict:
    """``∇`` of a vector as ``{(e, b): c}``."""
    out: dict = {}
    for a, c in vec.items():
        for e, b, w in ug.terms(a):
            add_into(out, {(e, b): c * w})
    return out


def check_counital(ug: UgCoaction, pbw: PBW) -> bool:
    for a in range(ug.dim):
        got = {b: c for (e, b), c in _coact_vec(ug, {a: Fraction(1)}).items() if e == pbw.zero_exp}
        if got != {a: 1}:
            return False
    return True


def check_coassociative(ug: UgCoaction, pbw: PBW) -> bool:
    for a in range(ug.dim):
        first = _coact_vec(ug, {a: Fraction(1)})
        lhs: dict = {}
        for (e, b), c in first.items():
            for f, g, k in pbw.coproduct_monomial(e):
                add_into(lhs, {(f, g, b): c * k})
        rhs: dict = {}
        for (e, b), c in first.items():
            for (f, d), w in _coact_vec(ug, {b: Fraction(1)}).items():
                add_into(rhs, {(e, f, d): c * w})
        if lhs != rhs:
            return False
    return True


def check_ug_ayd_generators(sayd: SaydModule, ug: UgCoaction, pbw: PBW) -> bool:
    """``∇(v·X) = v<-1>X ⊗ v<0> + v<-1> ⊗ v<0>·X - X v<-1> ⊗ v<0>`` for generators X."""
    for i in range(sayd.lie.dim):
        Bi = sayd.B[i]
        for a in range(sayd.dim):
            lhs = _coact_vec(ug, Bi.row(a))
            rhs: dict = {}
            for (e, b), c in _coact_vec(ug, {a: Fraction(1)}).items():
                for f, w in pbw.mul({e: Fraction(1)}, pbw.gen(i)).items():
                    add_into(rhs, {(f, b): c * w})
                for d, w in Bi.row(b).items():
                    add_into(rhs, {(e, d): c * w})
                for f, w in pbw.mul(pbw.gen(i), {e: Fraction(1)}).items():
                    add_into(rhs, {(f, b): -c * w})
            if lhs != rhs:
                return False
    return True


def check_ug_stability(sayd: SaydModule, ug: UgCoaction, pbw: PBW) -> bool:
    """``v<0> · v<-1> = v`` for every basis vector."""
    cache: dict = {}
    for a in range(sayd.dim):
        out: dict = {}
        for e, b, c in ug.terms(a):
            add_into(out, pbw.action_matrix(sayd.B, e, cache).row(b), c)
        if out != {a: 1}:
            return False
    return True


# the cocyclic module


class CocyclicModule:
    """Faces, degeneracies, cyclic operator, b and B on ``V ⊗ U(g)^{⊗q}``."""

    def __init__(self, sayd: SaydModule, max_level: int = 3, pbw: PBW | None = None):
        self.sayd = sayd
        self.max_level = max_level
        self.pbw = pbw or PBW(sayd.lie)
        self.coaction = extend_coaction(sayd.coaction, self.pbw)
        self._act: dict = {}
        self._tau: dict = {}

    # helpers

    def _guard(self, q: int):
        if q > self.max_level + 1:
            raise LevelCapError(f"level {q} exceeds the configured cap {self.max_level}")

    def act(self, a: int, e: tuple[int, ...]) -> dict[int, Fraction]:
        return self.pbw.action_matrix(self.sayd.B, e, self._act).row(a)

    def diagonal(self, s: dict, legs: tuple) -> dict:
        """Left diagonal action of ``s`` on ``X^{legs[0]} ⊗ ..``: ``{legs': c}``."""
        if not legs:
            c = self.pbw.counit(s)
            return {(): c} if c else {}
        out: dict = {}
        for k, c in s.items():
            for parts, mult in self.pbw.iterated_coproduct_monomial(k, len(legs)):
                factors = [self.pbw.mul({p: Fraction(1)}, {leg: Fraction(1)}) for p, leg in zip(parts, legs)]
                for combo in product(*(f.items() for f in factors)):
                    w = c * mult
                    for _, x in combo:
                        w *= x
                    add_into(out, {tuple(e for e, _ in combo): w})
        return out

    def _linear(self, x: ChainTensor, q_out: int, fn) -> ChainTensor:
        out: dict = {}
        for (a, legs), c in x.terms.items():
            for key, w in fn(a, legs).items():
                add_into(out, {key: c * w})
        return ChainTensor(q_out, out)

    # cocyclic structure

    def face(self, i: int, x: ChainTensor) -> ChainTensor:
        q = x.q
        self._guard(q + 1)
        if not 0 <= i <= q + 1:
            raise IndexError(f"face {i} on level {q}")
        zero = self.pbw.zero_exp

        def fn(a, legs):
            if i == 0:
                return {(a, (zero,) + legs): 1}
            if i == q + 1:
                return {(b, legs + (e,)): c for e, b, c in self.coaction.terms(a)}
            out: dict = {}
            for f, g, k in self.pbw.coproduct_monomial(legs[i - 1]):
                add_into(out, {(a, legs[: i - 1] + (f, g) + legs[i:]): k})
            return out

        return self._linear(x, q + 1, fn)

    def degeneracy(self, j: int, x: ChainTensor) -> ChainTensor:
        q = x.q
        if not 0 <= j <= q - 1:
            raise IndexError(f"degeneracy {j} on level {q}")
        zero = self.pbw.zero_exp

        def fn(a, legs):
            return {(a, legs[:j] + legs[j + 1 :]): 1} if legs[j] == zero else {}

        return self._linear(x, q - 1, fn)

    def _tau_basis(self, a: int, legs: tuple) -> dict:
        key = (a, legs)
        hit = self._tau.get(key)
        if hit is not None:
            return hit
        out: dict = {}
        h1, rest = legs[0], legs[1:]
        for ec, b, cf in self.coaction.terms(a):
            for f, g, k in self.pbw.coproduct_monomial(h1):
                moved = self.act(b, f)
                if not moved:
                    continue
                s = self.pbw.antipode_monomial(g)
                for new_legs, w in self.diagonal(s, rest + (ec,)).items():
                    for c, x in moved.items():
                        add_into(out, {(c, new_legs): cf * k * w * x})
        self._tau[key] = out
        return out

    def tau(self, x: ChainTensor) -> ChainTensor:
        self._guard(x.q)
        if x.q == 0:
            return x
        return self._linear(x, x.q, self._tau_basis)

    def tau_power(self, x: ChainTensor, k: int) -> ChainTensor:
        for _ in range(k):
            x = self.tau(x)
        return x

    def extra_degeneracy(self, x: ChainTensor) -> ChainTensor:
        """``σ_{-1} = σ_{q-1} τ``."""
        return self.degeneracy(x.q - 1, self.tau(x))

    def b(self, x: ChainTensor) -> ChainTensor:
        out = zero_tensor(x.q + 1)
        for i in range(x.q + 2):
            fi = self.face(i, x)
            out = out + (fi if i % 2 == 0 else -fi)
        return out

    def cyclic_norm(self, x: ChainTensor) -> ChainTensor:
        """``N = sum_{i<=q} λ^i`` with ``λ = (-1)^q τ`` on level q."""
        q = x.q
        out, cur = x, x
        for i in range(1, q + 1):
            cur = self.tau(cur)
            out = out + (cur if (q * i) % 2 == 0 else -cur)
        return out

    def B(self, x: ChainTensor, normalized_form: bool = False) -> ChainTensor:
        """Connes' operator ``N σ_{-1} (1 - λ)``: level q -> q-1.

        With ``normalized_form`` the ``(1 - λ)`` factor is dropped, which is
        only correct on normalized cochains.
        """
        q = x.q
        if q == 0:
            raise ValueError("B is not defined on level 0")
        y = x
        if not normalized_form:
            lam = self.tau(x)
            y = x - (lam if q % 2 == 0 else -lam)
        return self.cyclic_norm(self.extra_degeneracy(y))

    # random elements

    def random_tensor(
        self, q: int, rng: random.Random, terms: int = 3, max_deg: int = 2, subspace: list[dict] | None = None
    ) -> ChainTensor:
        """Random element of ``V ⊗ U^{⊗q}``, optionally with V-part in ``span(subspace)``."""
        n, m = self.sayd.lie.dim, self.sayd.dim
        out: dict = {}
        for _ in range(terms):
            legs = tuple(_random_exp(rng, n, max_deg) for _ in range(q))
            if subspace is None:
                vec = {rng.randrange(m): Fraction(rng.choice([-2, -1, 1, 2]))}
            else:
                vec = {}
                for w in subspace:
                    add_into(vec, w, rng.randint(-2, 2))
            for a, c in vec.items():
                add_into(out, {(a, legs): c})
        return ChainTensor(q, out)


def _random_exp(rng: random.Random, n: int, max_deg: int) -> tuple[int, ...]:
    d = rng.randint(0, max_deg)
    e = [0] * n
    for _ in range(d):
        e[rng.randrange(n)] += 1
    return tuple(e)


# relations


def cocyclic_relations(cm: CocyclicModule, x: ChainTensor) -> dict[str, bool]:
    """Check the simplicial and cyclic identities on ``x`` (level q >= 1)."""
    q = x.q
    res: dict[str, bool] = {}
    face, deg, tau = cm.face, cm.degeneracy, cm.tau
    # faces into level q+1, then q+2
    ok = True
    for j in range(q + 3):
        for i in range(j):
            if face(j, face(i, x)) != face(i, face(j - 1, x)):
                ok = False
    res["face-face"] = ok
    ok = True
    if q >= 2:
        for j in range(q - 1):
            for i in range(j + 1):
                if deg(j, deg(i, x)) != deg(i, deg(j + 1, x)):
                    ok = False
    res["degeneracy-degeneracy"] = ok
    ok = True
    # sigma_j partial_i on level q+1 -> q
    for j in range(q + 1):
        for i in range(q + 2):
            lhs = deg(j, face(i, x))
            if i < j:
                rhs = face(i, deg(j - 1, x))
            elif i in (j, j + 1):
                rhs = x
            else:
                rhs = face(i - 1, deg(j, x))
            if lhs != rhs:
                ok = False
    res["degeneracy-face"] = ok
    ok = True
    for i in range(1, q + 1):
        if tau(face(i, x)) != face(i - 1, tau(x)):
            ok = False
    if tau(face(0, x)) != face(q + 1, x):
        ok = False
    res["tau-face"] = ok
    ok = True
    for i in range(1, q):
        if tau(deg(i, x)) != deg(i - 1, tau(x)):
            ok = False
    if tau(deg(0, x)) != deg(q - 1, cm.tau_power(x, 2)):
        ok = False
    res["tau-degeneracy"] = ok
    res["tau-order"] = cm.tau_power(x, q + 1) == x
    return res


def bB_relations(cm: CocyclicModule, x: ChainTensor) -> dict[str, bool]:
    res = {"b^2": cm.b(cm.b(x)).is_zero()}
    if x.q >= 2:
        res["B^2"] = cm.B(cm.B(x)).is_zero()
    if x.q >= 1:
        # (b+B)^2 = b^2 + B^2 + (bB + Bb); level q -> q
        res["bB+Bb"] = (cm.b(cm.B(x)) + cm.B(cm.b(x))).is_zero()
    return res


# antisymmetrization


def antisymmetrize(
    sayd: SaydModule, p: int, vec: dict[int, Fraction], pbw: PBW | None = None, normalized: bool = False
) -> ChainTensor:
    """``X_{i_1}∧..∧X_{i_p} ⊗ v -> sum_σ sgn(σ) v ⊗ X_{i_σ(1)} ⊗ .. ⊗ X_{i_σ(p)}``.

    ``vec`` is a column vector of ``Λ^p g ⊗ V`` in the index ``idx(I) * m + a``.
    With ``normalized`` the sum is divided by ``p!``.
    """
    pbw = pbw or PBW(sayd.lie)
    m = sayd.dim
    eb = basis(sayd.lie.dim)
    scale = Fraction(1, factorial(p)) if normalized else Fraction(1)
    out: dict = {}
    for col, c in vec.items():
        t = eb(p)[col // m]
        a = col % m
        for perm in permutations(range(p)):
            inv = sum(1 for x in range(p) for y in range(x + 1, p) if perm[x] > perm[y])
            legs = tuple(pbw.unit_exp(t[k]) for k in perm)
            add_into(out, {(a, legs): c * scale * (-1 if inv % 2 else 1)})
    return ChainTensor(p, out)


@dataclass
class AntisymReport:
    b_matches_koszul: dict[int, bool]
    B_matches_ce: dict[int, bool]
    # B α = p · α ∂_CE for the unnormalized map
    unnormalized_factor: dict[int, bool]

    @property
    def ok(self) -> bool:
        return all(self.b_matches_koszul.values()) and all(self.B_matches_ce.values())


def antisym_chain_map(cm: CocyclicModule, max_n: int | None = None) -> AntisymReport:
    """Compare ``α`` (normalized by ``1/p!``) with the mixed complex structure.

    Checks ``b α = α ∂_K`` and ``B α = α ∂_CE`` on every basis element of
    ``Λ^p g ⊗ V``; for the unnormalized map the second identity picks up a
    factor ``p``, which is recorded separately.
    """
    sayd = cm.sayd
    n, m = sayd.lie.dim, sayd.dim
    top = n if max_n is None else min(n, max_n)
    eb = basis(n)
    b_ok, B_ok, raw_ok = {}, {}, {}

    def alpha(p, vec, norm=True):
        return antisymmetrize(sayd, p, vec, cm.pbw, normalized=norm)

    for p in range(top + 1):
        dce = del_ce(sayd, p) if p >= 1 else None
        dk = del_k(sayd, p) if p < n else None
        b_ok[p] = True
        if p >= 1:
            B_ok[p] = raw_ok[p] = True
        for col in range(eb.dim(p) * m):
            x = alpha(p, {col: Fraction(1)})
            rhs = alpha(p + 1, _column(dk, col)) if dk is not None else zero_tensor(p + 1)
            if cm.b(x) != rhs:
                b_ok[p] = False
            if p >= 1:
                if cm.B(x) != alpha(p - 1, _column(dce, col)):
                    B_ok[p] = False
                raw = alpha(p, {col: Fraction(1)}, False)
                if cm.B(raw) != alpha(p - 1, _column(dce, col), False).scale(p):
                    raw_ok[p] = False
    return AntisymReport(b_ok, B_ok, raw_ok)


def _column(m: Matrix, j: int) -> dict[int, Fraction]:
    return {i: v for (i, c), v in m.items() if c == j}


# coinvariant filtration


@dataclass
class Filtration:
    dim: int
    levels: list[list[dict[int, Fraction]]]  # RREF bases, increasing

    def rref(self, p: int) -> dict:
        if p < 0:
            return {}
        p = min(p, len(self.levels) - 1)
        return {min(v): v for v in self.levels[p]}

    def contains(self, p: int, vec: dict[int, Fraction]) -> bool:
        vec = {k: v for k, v in vec.items() if v}
        if not vec:
            return True
        if p < 0:
            return False
        return in_span(vec, self.rref(p))

    def dims(self) -> list[int]:
        return [len(b) for b in self.levels]


def coinvariant_filtration(coaction: CoactionMatrices) -> Filtration:
    """``F_0 = {v : v A^j = 0}``, ``F_{p+1} = {v : v A^j ∈ F_p for all j}``."""
    rep = check_comodule(coaction)
    if not (rep.commuting and rep.conilpotent):
        raise NotConilpotentError("filtration requires a locally conilpotent comodule")
    m = coaction.dim
    # F_p is the kernel of v -> v R_p for a matrix R_p
    R = _hstack([a for a in coaction.mats], m)
    levels = []
    for _ in range(m + 1):
        ker = nullspace(R.T)
        pivots, pcols = rref(Matrix(len(ker), m, {(i, j): v for i, vec in enumerate(ker) for j, v in vec.items()}))
        levels.append([dict(sorted(pivots[c].items())) for c in pcols])
        if len(levels[-1]) == m:
            break
        R = _hstack([a @ R for a in coaction.mats], m)
    return Filtration(m, levels)


def _hstack(mats: Sequence[Matrix], m: int) -> Matrix:
    ent = {}
    off = 0
    for M in mats:
        for (i, j), v in M.items():
            ent[i, off + j] = v
        off += M.ncols
    return Matrix(m, max(off, 1), ent)


@dataclass
class FiltrationReport:
    dims: list[int]
    del_k_drops: bool
    del_ce_preserves: bool
    preserves: dict[str, bool]

    @property
    def ok(self) -> bool:
        return self.del_k_drops and self.del_ce_preserves and all(self.preserves.values())


def _chunks_in(fil: Filtration, p: int, vec: dict[int, Fraction], m: int) -> bool:
    chunks: dict[int, dict] = {}
    for idx, v in vec.items():
        chunks.setdefault(idx // m, {})[idx % m] = v
    return all(fil.contains(p, c) for c in chunks.values())


def _tensor_in(fil: Filtration, p: int, x: ChainTensor) -> bool:
    return all(fil.contains(p, v) for v in x.by_legs().values())


def filtration_report(cm: CocyclicModule, rng: random.Random, samples: int = 5, max_level: int = 2) -> FiltrationReport:
    sayd = cm.sayd
    fil = coinvariant_filtration(sayd.coaction)
    n, m = sayd.lie.dim, sayd.dim
    eb = basis(n)
    drops = True
    ce_ok = True
    for p, level in enumerate(fil.levels):
        for deg in range(n + 1):
            dk = del_k(sayd, deg) if deg < n else None
            dce = del_ce(sayd, deg) if deg >= 1 else None
            for t in range(eb.dim(deg)):
                for w in level:
                    col = {t * m + a: c for a, c in w.items()}
                    if dk is not None and not _chunks_in(fil, p - 1, dk.apply(col), m):
                        drops = False
                    if dce is not None and not _chunks_in(fil, p, dce.apply(col), m):
                        ce_ok = False
    ops = {
        "b": cm.b,
        "B": cm.B,
        "tau": cm.tau,
        "sigma_-1": cm.extra_degeneracy,
    }
    preserves = {name: True for name in ops}
    for p, level in enumerate(fil.levels):
        for q in range(1, max_level + 1):
            for _ in range(samples):
                x = cm.random_tensor(q, rng, subspace=level)
                for name, op in ops.items():
                    if not _tensor_in(fil, p, op(x)):
                        preserves[name] = False
    return FiltrationReport(fil.dims(), drops, ce_ok, preserves)
