"""Right modules, left comodules and SAYD data as families of matrices.

Row-vector convention throughout: the action of ``X_j`` on the basis row
vector ``v^i`` is row ``i`` of ``B_j``, so ``v . X_p . X_q`` corresponds to
``B_p @ B_q``.  The coaction sends ``v^i`` to ``sum_j,k A^j[i, k] X_j (x) v^k``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .lie import LieAlgebra, adjoint_reps, change_basis, modular_character, semidirect_double, sl2
from .linalg import Matrix, block, nullspace, row_space_basis


class ShapeError(ValueError):
    pass


@dataclass(frozen=True)
class ActionMatrices:
    lie: LieAlgebra
    mats: tuple[Matrix, ...]
    dim: int = -1

    def __post_init__(self):
        if len(self.mats) != self.lie.dim:
            raise ShapeError(f"need {self.lie.dim} action matrices, got {len(self.mats)}")
        m = self.mats[0].nrows if self.mats else 0
        if self.dim < 0:
            object.__setattr__(self, "dim", m)
        for b in self.mats:
            if b.shape != (self.dim, self.dim):
                raise ShapeError(f"action matrix of shape {b.shape}, expected {self.dim}x{self.dim}")


@dataclass(frozen=True)
class CoactionMatrices:
    lie: LieAlgebra
    mats: tuple[Matrix, ...]
    dim: int = -1

    def __post_init__(self):
        if len(self.mats) != self.lie.dim:
            raise ShapeError(f"need {self.lie.dim} coaction matrices, got {len(self.mats)}")
        m = self.mats[0].nrows if self.mats else 0
        if self.dim < 0:
            object.__setattr__(self, "dim", m)
        for a in self.mats:
            if a.shape != (self.dim, self.dim):
                raise ShapeError(f"coaction matrix of shape {a.shape}, expected {self.dim}x{self.dim}")


@dataclass(frozen=True)
class SaydModule:
    action: ActionMatrices
    coaction: CoactionMatrices
    name: str = ""

    def __post_init__(self):
        if self.action.lie != self.coaction.lie:
            raise ShapeError("action and coaction over different Lie algebras")
        if self.action.dim != self.coaction.dim:
            raise ShapeError(f"action has dimension {self.action.dim}, coaction {self.coaction.dim}")

    @property
    def lie(self) -> LieAlgebra:
        return self.action.lie

    @property
    def dim(self) -> int:
        return self.action.dim

    @property
    def B(self) -> tuple[Matrix, ...]:
        return self.action.mats

    @property
    def A(self) -> tuple[Matrix, ...]:
        return self.coaction.mats


def zero_coaction(lie: LieAlgebra, m: int) -> CoactionMatrices:
    return CoactionMatrices(lie, tuple(Matrix.zeros(m) for _ in range(lie.dim)), m)


def zero_action(lie: LieAlgebra, m: int) -> ActionMatrices:
    return ActionMatrices(lie, tuple(Matrix.zeros(m) for _ in range(lie.dim)), m)


def with_zero_coaction(action: ActionMatrices, name: str = "") -> SaydModule:
    return SaydModule(action, zero_coaction(action.lie, action.dim), name)


# verdicts


@dataclass(frozen=True)
class Verdict:
    ok: bool
    where: tuple = ()
    witness: Matrix | None = None

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class ModuleReport:
    ok: bool
    violations: tuple[tuple[int, int], ...] = ()


def module_defect(action: ActionMatrices, p: int, q: int) -> Matrix:
    b = action.mats
    lhs = b[p] @ b[q] - b[q] @ b[p]
    for r, v in action.lie.brackets.get((p, q), {}).items():
        lhs = lhs - b[r].scale(v)
    return lhs


def check_module(action: ActionMatrices) -> ModuleReport:
    n = action.lie.dim
    bad = tuple((p, q) for p in range(n) for q in range(p + 1, n) if module_defect(action, p, q))
    return ModuleReport(not bad, bad)


@dataclass(frozen=True)
class ComoduleReport:
    commuting: bool
    violations: tuple[tuple[int, int], ...] = ()
    conilpotent: bool = True
    nilpotency_index: int | None = 0

    @property
    def ok(self) -> bool:
        return self.commuting


def nilpotency_index(mats: Sequence[Matrix], m: int) -> int | None:
    """Smallest k with every length-k product zero, or None if none exists.

    Tracks the span of all images of V under words of length k; this is
    polynomial in m even for noncommuting families.
    """
    span = [{i: Fraction(1)} for i in range(m)]
    for k in range(m + 1):
        if not span:
            return k
        images = [a.apply_row(v) for v in span for a in mats]
        span = row_space_basis([w for w in images if w], m)
    return None if span else m + 1


def check_comodule(coaction: CoactionMatrices) -> ComoduleReport:
    a = coaction.mats
    bad = tuple((i, j) for i, j in combinations(range(len(a)), 2) if a[i].commutator(a[j]))
    idx = nilpotency_index(a, coaction.dim)
    return ComoduleReport(not bad, bad, idx is not None, idx)


def ayd_defect(sayd: SaydModule, j: int, q: int) -> Matrix:
    """``[B_q, A^j] - sum_s A^s C^j_sq``."""
    lie = sayd.lie
    B, A = sayd.B, sayd.A
    out = B[q] @ A[j] - A[j] @ B[q]
    for s in range(lie.dim):
        c = lie.c(s, q, j)
        if c:
            out = out - A[s].scale(c)
    return out


def stability_defect(sayd: SaydModule) -> Matrix:
    out = Matrix.zeros(sayd.dim)
    for a, b in zip(sayd.A, sayd.B):
        out = out + a @ b
    return out


def unimodular_stability_defect(sayd: SaydModule) -> Matrix:
    out = Matrix.zeros(sayd.dim)
    for a, b in zip(sayd.A, sayd.B):
        out = out + b @ a
    return out


@dataclass(frozen=True)
class SaydReport:
    ayd: Verdict
    stability: Verdict
    unimodular_stability: Verdict

    @property
    def ok(self) -> bool:
        return self.ayd.ok and self.stability.ok


def check_ayd(sayd: SaydModule) -> Verdict:
    n = sayd.lie.dim
    for j in range(n):
        for q in range(n):
            d = ayd_defect(sayd, j, q)
            if d:
                return Verdict(False, (j, q), d)
    return Verdict(True)


def check_sayd(sayd: SaydModule) -> SaydReport:
    st = stability_defect(sayd)
    us = unimodular_stability_defect(sayd)
    return SaydReport(
        check_ayd(sayd),
        Verdict(not st, (), st if st else None),
        Verdict(not us, (), us if us else None),
    )


@dataclass(frozen=True)
class FullVerdicts:
    module: bool
    comodule: bool
    ayd: bool
    stability: bool
    unimodular_stability: bool
    conilpotent: bool

    @property
    def sayd(self) -> bool:
        return self.module and self.comodule and self.ayd and self.stability

    @property
    def unimodular_sayd(self) -> bool:
        return self.module and self.comodule and self.ayd and self.unimodular_stability


def all_verdicts(sayd: SaydModule) -> FullVerdicts:
    mod = check_module(sayd.action)
    com = check_comodule(sayd.coaction)
    rep = check_sayd(sayd)
    return FullVerdicts(
        mod.ok, com.commuting, rep.ayd.ok, rep.stability.ok, rep.unimodular_stability.ok, com.conilpotent
    )


# the semidirect double


def tilde_action(sayd: SaydModule) -> ActionMatrices:
    """``V`` as a right module over ``g* ⋊ g``: theta^t acts by A^t, X_j by B_j.

    This is a module exactly when the action is a module, the coaction
    matrices commute and AYD holds.
    """
    return ActionMatrices(semidirect_double(sayd.lie), tuple(sayd.A) + tuple(sayd.B), sayd.dim)


# solving the linear constraints


@dataclass
class AydSolution:
    lie: LieAlgebra
    dim: int
    basis: list[tuple[Matrix, ...]]
    # (alpha, beta) -> True when the c_alpha c_beta part of all [A^i, A^j] vanishes
    pairs: dict[tuple[int, int], bool] = field(default_factory=dict)
    symbolic: bool = True
    # verdict on random combinations, used when the span is too large
    sampled_ok: bool | None = None

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def commutative_on_span(self) -> bool:
        return all(self.pairs.values()) and self.sampled_ok is not False

    def quadratic_monomials(self) -> list[tuple[int, int]]:
        """Monomials c_a c_b whose coefficient in some commutator is nonzero."""
        return sorted(k for k, ok in self.pairs.items() if not ok)


def _unknown(j: int, a: int, b: int, m: int) -> int:
    return (j * m + a) * m + b


def ayd_system(action: ActionMatrices, stability: bool = True, unimodular: bool = False) -> Matrix:
    """Coefficient matrix of the linear constraints on the entries of the A^j."""
    lie = action.lie
    n, m = lie.dim, action.dim
    B = action.mats
    rows: list[dict[int, Fraction]] = []

    def add(eq: dict[int, Fraction]):
        eq = {k: v for k, v in eq.items() if v}
        if eq:
            rows.append(eq)

    for j in range(n):
        for q in range(n):
            # (B_q A^j - A^j B_q - sum_s C^j_sq A^s)[a, b]
            for a in range(m):
                for b in range(m):
                    eq: dict[int, Fraction] = {}
                    for k, v in B[q].row(a).items():
                        u = _unknown(j, k, b, m)
                        eq[u] = eq.get(u, 0) + v
                    for k in range(m):
                        v = B[q][k, b]
                        if v:
                            u = _unknown(j, a, k, m)
                            eq[u] = eq.get(u, 0) - v
                    for s in range(n):
                        c = lie.c(s, q, j)
                        if c:
                            u = _unknown(s, a, b, m)
                            eq[u] = eq.get(u, 0) - c
                    add(eq)
    if stability or unimodular:
        for a in range(m):
            for b in range(m):
                if stability:
                    eq = {}
                    for j in range(n):
                        for k in range(m):
                            v = B[j][k, b]
                            if v:
                                u = _unknown(j, a, k, m)
                                eq[u] = eq.get(u, 0) + v
                    add(eq)
                if unimodular:
                    eq = {}
                    for j in range(n):
                        for k, v in B[j].row(a).items():
                            u = _unknown(j, k, b, m)
                            eq[u] = eq.get(u, 0) + v
                    add(eq)
    return Matrix(len(rows), n * m * m, {(r, c): v for r, eq in enumerate(rows) for c, v in eq.items()})


def _vector_to_mats(vec: dict[int, Fraction], n: int, m: int) -> tuple[Matrix, ...]:
    ents: list[dict] = [{} for _ in range(n)]
    for u, v in vec.items():
        j, rest = divmod(u, m * m)
        a, b = divmod(rest, m)
        ents[j][a, b] = v
    return tuple(Matrix(m, m, e) for e in ents)


def _quadratic_coefficient(basis, alpha: int, beta: int) -> bool:
    n = len(basis[alpha])
    for i, j in combinations(range(n), 2):
        if alpha == beta:
            c = basis[alpha][i].commutator(basis[alpha][j])
        else:
            c = basis[alpha][i].commutator(basis[beta][j]) + basis[beta][i].commutator(basis[alpha][j])
        if c:
            return False
    return True


def solve_ayd_linear(
    action: ActionMatrices, stability: bool = True, unimodular: bool = False, samples: int = 8, seed: int = 0
) -> AydSolution:
    """Basis of all coactions satisfying AYD (+ stability) for a fixed action.

    The quadratic comodule condition is examined on the solution span:
    exactly through the coefficients of each ``c_a c_b`` when the span has
    dimension at most 4, otherwise on the basis plus random combinations.
    """
    lie = action.lie
    n, m = lie.dim, action.dim
    system = ayd_system(action, stability, unimodular)
    # canonical basis: reduced echelon form of the null space
    null = row_space_basis(nullspace(system), n * m * m)
    basis = [_vector_to_mats(v, n, m) for v in null]
    out = AydSolution(lie, m, basis)
    d = len(basis)
    if d <= 4:
        for a in range(d):
            for b in range(a, d):
                out.pairs[a, b] = _quadratic_coefficient(basis, a, b)
    else:
        out.symbolic = False
        for a in range(d):
            out.pairs[a, a] = _quadratic_coefficient(basis, a, a)
        rng = random.Random(seed)
        out.sampled_ok = True
        for _ in range(samples):
            mats = combine(basis, [rng.randint(-2, 2) for _ in range(d)])
            if any(mats[i].commutator(mats[j]) for i, j in combinations(range(n), 2)):
                out.sampled_ok = False
                break
    return out


def combine(basis: Sequence[Sequence[Matrix]], coeffs: Sequence) -> tuple[Matrix, ...]:
    if not basis:
        raise ValueError("empty basis")
    n = len(basis[0])
    m = basis[0][0].nrows
    out = [Matrix.zeros(m) for _ in range(n)]
    for sol, c in zip(basis, coeffs):
        if c:
            out = [o + a.scale(c) for o, a in zip(out, sol)]
    return tuple(out)


# twists, tensor products, basis change


def delta_twist(obj, sign: int = 1, delta: Sequence[Fraction] | None = None):
    """Shift each B_j by ``sign * delta(X_j) * I``; coactions are untouched."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if isinstance(obj, SaydModule):
        return SaydModule(delta_twist(obj.action, sign, delta), obj.coaction, obj.name)
    action: ActionMatrices = obj
    if delta is None:
        delta = modular_character(action.lie)
    ident = Matrix.identity(action.dim)
    mats = tuple(b + ident.scale(sign * d) if d else b for b, d in zip(action.mats, delta))
    return ActionMatrices(action.lie, mats, action.dim)


def tensor_ayd(m1: SaydModule, m2: SaydModule) -> SaydModule:
    if m1.lie != m2.lie:
        raise ShapeError("tensor factors over different Lie algebras")
    i1, i2 = Matrix.identity(m1.dim), Matrix.identity(m2.dim)
    B = tuple(b1.kron(i2) + i1.kron(b2) for b1, b2 in zip(m1.B, m2.B))
    A = tuple(a1.kron(i2) + i1.kron(a2) for a1, a2 in zip(m1.A, m2.A))
    d = m1.dim * m2.dim
    return SaydModule(ActionMatrices(m1.lie, B, d), CoactionMatrices(m1.lie, A, d), f"{m1.name}*{m2.name}")


def transport_basis(sayd: SaydModule, gamma: Matrix) -> SaydModule:
    """Rewrite the data in the basis ``Y_j = sum_l gamma[l, j] X_l``."""
    lie2 = change_basis(sayd.lie, gamma)
    ginv = gamma.inverse()
    n, m = sayd.lie.dim, sayd.dim
    B, A = [], []
    for q in range(n):
        acc = Matrix.zeros(m)
        for l in range(n):
            if gamma[l, q]:
                acc = acc + sayd.B[l].scale(gamma[l, q])
        B.append(acc)
    for j in range(n):
        acc = Matrix.zeros(m)
        for l in range(n):
            if ginv[j, l]:
                acc = acc + sayd.A[l].scale(ginv[j, l])
        A.append(acc)
    return SaydModule(ActionMatrices(lie2, tuple(B), m), CoactionMatrices(lie2, tuple(A), m), sayd.name)


# standard modules


def trivial_module(lie: LieAlgebra, m: int = 1) -> ActionMatrices:
    return zero_action(lie, m)


def coadjoint_module(lie: LieAlgebra) -> ActionMatrices:
    """``g*`` with ``theta^i . X_j = theta^i([X_j, -])``, i.e. B_j = ad(X_j)."""
    ads, _ = adjoint_reps(lie)
    return ActionMatrices(lie, tuple(ads), lie.dim)


def adjoint_module(lie: LieAlgebra) -> ActionMatrices:
    """``g`` with ``Y . X = [Y, X]``."""
    _, coads = adjoint_reps(lie)
    return ActionMatrices(lie, tuple(coads), lie.dim)


def sl2_simple2(lie: LieAlgebra | None = None) -> ActionMatrices:
    """The defining 2-dim sl(2)-module as a right module: ``v . X = -X^T`` on rows."""
    lie = lie or sl2()
    e = Matrix.from_rows([[0, 1], [0, 0]])
    f = Matrix.from_rows([[0, 0], [1, 0]])
    h = Matrix.from_rows([[1, 0], [0, -1]])
    return ActionMatrices(lie, tuple(-x.T for x in (e, f, h)), 2)


def direct_sum(a1: ActionMatrices, a2: ActionMatrices) -> ActionMatrices:
    d1, d2 = a1.dim, a2.dim
    mats = tuple(block([[x, None], [None, y]], [d1, d2], [d1, d2]) for x, y in zip(a1.mats, a2.mats))
    return ActionMatrices(a1.lie, mats, d1 + d2)
