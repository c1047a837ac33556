"""Truncated polynomial coefficient modules and Weyl-algebra operators."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .lie import LieAlgebra
from .linalg import Matrix
from .sayd import ActionMatrices, CoactionMatrices, SaydModule


def _compositions(n: int, total: int):
    if n == 0:
        if total == 0:
            yield ()
        return
    for first in range(total, -1, -1):
        for rest in _compositions(n - 1, total - first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def monomials(n: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """Exponent vectors of total degree <= ``degree``.

    Graded first, then lexicographic in the sorted index multiset, so the
    degree <= 1 part reads ``1, x_1, .., x_n``.
    """
    out = []
    for d in range(degree + 1):
        out.extend(_compositions(n, d))
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(n: int, degree: int) -> dict[tuple[int, ...], int]:
    return {e: i for i, e in enumerate(monomials(n, degree))}


def _bump(e: tuple[int, ...], i: int, by: int = 1) -> tuple[int, ...]:
    return e[:i] + (e[i] + by,) + e[i + 1 :]


def weil_action(lie: LieAlgebra, degree: int) -> ActionMatrices:
    """Coadjoint action on ``S(g*)`` truncated at polynomial degree ``degree``.

    On generators ``theta^i . X_j = sum_q C^i_jq theta^q``, extended as a
    derivation.
    """
    n = lie.dim
    mons = monomials(n, degree)
    idx = monomial_index(n, degree)
    mats = []
    for j in range(n):
        ent: dict = {}
        for r, e in enumerate(mons):
            for i in range(n):
                if not e[i]:
                    continue
                base = _bump(e, i, -1)
                for q in range(n):
                    c = lie.c(j, q, i)
                    if c:
                        col = idx[_bump(base, q)]
                        ent[r, col] = ent.get((r, col), 0) + e[i] * c
        mats.append(Matrix(len(mons), len(mons), {k: v for k, v in ent.items() if v}))
    return ActionMatrices(lie, tuple(mats), len(mons))


def koszul_coaction(lie: LieAlgebra, degree: int) -> CoactionMatrices:
    """``alpha -> sum_i X_i ⊗ alpha theta^i``, dropping products above ``degree``."""
    n = lie.dim
    mons = monomials(n, degree)
    idx = monomial_index(n, degree)
    mats = []
    for i in range(n):
        ent = {}
        for r, e in enumerate(mons):
            if sum(e) < degree:
                ent[r, idx[_bump(e, i)]] = 1
        mats.append(Matrix(len(mons), len(mons), ent))
    return CoactionMatrices(lie, tuple(mats), len(mons))


def build_truncated_weil(lie: LieAlgebra, degree: int) -> SaydModule:
    """Truncated Weil coefficients: polynomials in ``theta`` of degree <= ``degree``.

    Each theta has weight 2, so the weight cap ``2q`` corresponds to
    ``degree = q``.
    """
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    return SaydModule(weil_action(lie, degree), koszul_coaction(lie, degree), f"weil{2 * degree}")


def weil_from_cap(lie: LieAlgebra, cap: int) -> SaydModule:
    return build_truncated_weil(lie, cap // 2)


# Weyl algebra on truncated polynomials


@dataclass(frozen=True)
class WeylOps:
    lie: LieAlgebra
    cap: int
    P: tuple[Matrix, ...]
    Q: tuple[Matrix, ...]
    tau: tuple[Matrix, ...]

    @property
    def size(self) -> int:
        return len(monomials(self.lie.dim, self.cap))

    def window(self, top: int) -> list[int]:
        """Basis positions of monomials of degree <= ``top``."""
        return [i for i, e in enumerate(monomials(self.lie.dim, self.cap)) if sum(e) <= top]


def build_weyl_ops(lie: LieAlgebra, cap: int) -> WeylOps:
    """``Q^i`` multiplies by ``x_i`` (zero above ``cap``), ``P_i = d/dx_i``,
    ``tau(X_i) = sum C^l_ki P_l Q^k``.  Matrices act on column vectors."""
    if cap < 1:
        raise ValueError("degree cap must be at least 1")
    n = lie.dim
    mons = monomials(n, cap)
    idx = monomial_index(n, cap)
    size = len(mons)
    P, Q = [], []
    for i in range(n):
        pe, qe = {}, {}
        for c, e in enumerate(mons):
            if e[i]:
                pe[idx[_bump(e, i, -1)], c] = e[i]
            if sum(e) < cap:
                qe[idx[_bump(e, i)], c] = 1
        P.append(Matrix(size, size, pe))
        Q.append(Matrix(size, size, qe))
    tau = []
    for i in range(n):
        t = Matrix.zeros(size)
        for k in range(n):
            for l, c in lie.brackets.get((k, i), {}).items():
                t = t + (P[l] @ Q[k]).scale(c)
        tau.append(t)
    return WeylOps(lie, cap, tuple(P), tuple(Q), tuple(tau))


def vanishes_on(m: Matrix, cols: list[int]) -> bool:
    keep = set(cols)
    return all(j not in keep for (_, j), _ in m.items())


@dataclass(frozen=True)
class WeylReport:
    weyl_relations: bool
    tau_lie_map: bool
    unimodular_stability: bool
    phi_relation: bool

    @property
    def ok(self) -> bool:
        return self.weyl_relations and self.tau_lie_map and self.unimodular_stability and self.phi_relation


def check_weyl(ops: WeylOps) -> WeylReport:
    lie, n = ops.lie, ops.lie.dim
    P, Q, tau = ops.P, ops.Q, ops.tau
    w1 = ops.window(ops.cap - 1)
    w2 = ops.window(ops.cap - 2)
    ident = Matrix.identity(ops.size)

    weyl = True
    for i in range(n):
        for j in range(n):
            d = P[i] @ Q[j] - Q[j] @ P[i]
            if i == j:
                d = d - ident
            weyl = weyl and vanishes_on(d, w1)
            weyl = weyl and vanishes_on(P[i] @ P[j] - P[j] @ P[i], w1)
            weyl = weyl and vanishes_on(Q[i] @ Q[j] - Q[j] @ Q[i], w2)

    lie_map = True
    for i in range(n):
        for j in range(i + 1, n):
            d = tau[i] @ tau[j] - tau[j] @ tau[i]
            for k, c in lie.brackets.get((i, j), {}).items():
                d = d - tau[k].scale(c)
            lie_map = lie_map and vanishes_on(d, w1)

    stab = Matrix.zeros(ops.size)
    for i in range(n):
        stab = stab + tau[i] @ Q[i]
    unimod = vanishes_on(stab, w2)

    phi = True
    for i in range(n):
        for j in range(n):
            # tau_i Q^j = Q^j tau_i - C^j_ik Q^k
            d = tau[i] @ Q[j] - Q[j] @ tau[i]
            for k in range(n):
                c = lie.c(i, k, j)
                if c:
                    d = d + Q[k].scale(c)
            phi = phi and vanishes_on(d, w2)
    return WeylReport(weyl, lie_map, unimod, phi)


def weyl_induced_data(ops: WeylOps) -> SaydModule:
    """Row-convention action/coaction data induced by ``tau`` and ``Q``.

    Valid only inside the windows checked by :func:`check_weyl`; at the
    truncation boundary the identities fail by construction.
    """
    m = ops.size
    B = tuple(-t.T for t in ops.tau)
    A = tuple(q.T for q in ops.Q)
    return SaydModule(ActionMatrices(ops.lie, B, m), CoactionMatrices(ops.lie, A, m), f"weyl{ops.cap}")
