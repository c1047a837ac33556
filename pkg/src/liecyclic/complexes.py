"""Chain and cochain complexes of a Lie algebra with SAYD coefficients.

``W^p = Λ^p g* ⊗ V`` carries ``d_CE`` (degree +1) and ``d_K`` (degree -1);
``C_p = Λ^p g ⊗ V`` carries ``∂_CE`` (degree -1) and ``∂_K`` (degree +1).
The basis element ``e_I ⊗ v^a`` has index ``idx(I) * m + a``.  Differentials
are matrices acting on column vectors: ``D[target, source]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .exterior import basis, d_dr, interior, wedge_front
from .linalg import Matrix, block, rank
from .sayd import SaydModule, all_verdicts, check_comodule, check_module


class RefusedError(ValueError):
    """Raised when coefficient data does not support the requested differential."""


@dataclass
class GradedComplex:
    """Spaces ``dims[n]`` and differentials ``diffs[n]: n -> n + step``.

    With ``periodic=True`` degrees are taken modulo ``len(dims)``.
    """

    dims: list[int]
    diffs: dict[int, Matrix]
    step: int = 1
    name: str = ""
    periodic: bool = False
    offset: int = 0
    _ranks: dict[int, int] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        for n, d in self.diffs.items():
            tgt = self._dim(n + self.step)
            if d.shape != (tgt, self._dim(n)):
                raise ValueError(f"{self.name}: differential at degree {n} has shape {d.shape}")

    def _dim(self, n: int) -> int:
        if self.periodic:
            return self.dims[n % len(self.dims)]
        k = n - self.offset
        return self.dims[k] if 0 <= k < len(self.dims) else 0

    def degrees(self) -> range:
        return range(self.offset, self.offset + len(self.dims))

    def diff(self, n: int) -> Matrix:
        if self.periodic:
            n %= len(self.dims)
        d = self.diffs.get(n)
        if d is None:
            return Matrix(self._dim(n + self.step), self._dim(n))
        return d

    def rank(self, n: int) -> int:
        if self.periodic:
            n %= len(self.dims)
        if n not in self._ranks:
            self._ranks[n] = rank(self.diff(n))
        return self._ranks[n]

    def square_defects(self) -> list[int]:
        bad = []
        for n in self.degrees():
            nxt = n + self.step
            if not self.periodic and nxt not in self.degrees():
                continue
            if self.diff(nxt) @ self.diff(n):
                bad.append(n)
        return bad

    def is_complex(self) -> bool:
        return not self.square_defects()


def cohomology_dims(cx: GradedComplex) -> list[int]:
    out = []
    for n in cx.degrees():
        out.append(cx._dim(n) - cx.rank(n) - cx.rank(n - cx.step))
    return out


def euler_characteristic(values) -> int:
    return sum(v if k % 2 == 0 else -v for k, v in enumerate(values))


# differentials


def _require(sayd: SaydModule, module: bool, comodule: bool, check: bool):
    if not check:
        return
    if module:
        rep = check_module(sayd.action)
        if not rep.ok:
            raise RefusedError(f"action is not a right module; violations at {rep.violations}")
    if comodule:
        rep = check_comodule(sayd.coaction)
        if not rep.commuting:
            raise RefusedError(f"coaction matrices do not commute at {rep.violations}")


def _assemble(rows: int, cols: int, ent: dict) -> Matrix:
    return Matrix(rows, cols, {k: v for k, v in ent.items() if v})


def _add(ent: dict, key, val):
    ent[key] = ent.get(key, 0) + val


def d_ce(sayd: SaydModule, p: int, check: bool = True) -> Matrix:
    """``d_CE(θ^I⊗v) = d_dR θ^I ⊗ v - sum_i θ^i∧θ^I ⊗ v·X_i``: W^p -> W^{p+1}."""
    _require(sayd, True, False, check)
    lie, m = sayd.lie, sayd.dim
    eb = basis(lie.dim)
    ent: dict = {}
    for c, t in enumerate(eb(p)):
        dt = d_dr(lie, t)
        for a in range(m):
            col = c * m + a
            for key, v in dt.items():
                _add(ent, (eb.index(key) * m + a, col), v)
            for i in range(lie.dim):
                w = wedge_front(i, t)
                if w is None:
                    continue
                row0 = eb.index(w[1]) * m
                for k, v in sayd.B[i].row(a).items():
                    _add(ent, (row0 + k, col), -w[0] * v)
    return _assemble(eb.dim(p + 1) * m, eb.dim(p) * m, ent)


def d_k(sayd: SaydModule, p: int, check: bool = True) -> Matrix:
    """``d_K(θ^I⊗v) = sum_i ι_{X_i} θ^I ⊗ v A^i``: W^p -> W^{p-1}."""
    _require(sayd, False, True, check)
    lie, m = sayd.lie, sayd.dim
    eb = basis(lie.dim)
    ent: dict = {}
    for c, t in enumerate(eb(p)):
        for i in t:
            sgn, rest = interior(i, t)
            row0 = eb.index(rest) * m
            for a in range(m):
                for k, v in sayd.A[i].row(a).items():
                    _add(ent, (row0 + k, c * m + a), sgn * v)
    return _assemble(eb.dim(p - 1) * m, eb.dim(p) * m, ent)


def del_ce(sayd: SaydModule, p: int, check: bool = True) -> Matrix:
    """Chevalley-Eilenberg boundary C_p -> C_{p-1} for a right module.

    ``Y_0∧..∧Y_{p-1}⊗v -> sum_j (-1)^j (..Ŷ_j..)⊗v·Y_j
    + sum_{j<k} (-1)^{j+k} [Y_j,Y_k]∧(..Ŷ_j..Ŷ_k..)⊗v``
    """
    _require(sayd, True, False, check)
    lie, m = sayd.lie, sayd.dim
    eb = basis(lie.dim)
    ent: dict = {}
    for c, t in enumerate(eb(p)):
        for j, y in enumerate(t):
            rest = t[:j] + t[j + 1 :]
            row0 = eb.index(rest) * m
            sgn = -1 if j % 2 else 1
            for a in range(m):
                for k, v in sayd.B[y].row(a).items():
                    _add(ent, (row0 + k, c * m + a), sgn * v)
        for j in range(len(t)):
            for k in range(j + 1, len(t)):
                br = lie.brackets.get((t[j], t[k]))
                if not br:
                    continue
                rest = t[:j] + t[j + 1 : k] + t[k + 1 :]
                sgn = -1 if (j + k) % 2 else 1
                for z, cz in br.items():
                    w = wedge_front(z, rest)
                    if w is None:
                        continue
                    row0 = eb.index(w[1]) * m
                    for a in range(m):
                        _add(ent, (row0 + a, c * m + a), sgn * w[0] * cz)
    return _assemble(eb.dim(p - 1) * m, eb.dim(p) * m, ent)


def del_k(sayd: SaydModule, p: int, check: bool = True) -> Matrix:
    """``∂_K(ξ⊗v) = sum_i X_i∧ξ ⊗ v A^i``: C_p -> C_{p+1}."""
    _require(sayd, False, True, check)
    lie, m = sayd.lie, sayd.dim
    eb = basis(lie.dim)
    ent: dict = {}
    for c, t in enumerate(eb(p)):
        for i in range(lie.dim):
            w = wedge_front(i, t)
            if w is None:
                continue
            row0 = eb.index(w[1]) * m
            for a in range(m):
                for k, v in sayd.A[i].row(a).items():
                    _add(ent, (row0 + k, c * m + a), w[0] * v)
    return _assemble(eb.dim(p + 1) * m, eb.dim(p) * m, ent)


def _family(sayd, fn, degrees, check):
    return {p: fn(sayd, p, check=check) for p in degrees}


def build_cochain_diffs(sayd: SaydModule, check: bool = True) -> tuple[GradedComplex, GradedComplex]:
    n, m = sayd.lie.dim, sayd.dim
    dims = [basis(n).dim(p) * m for p in range(n + 1)]
    ce = GradedComplex(dims, _family(sayd, d_ce, range(n), check), 1, "d_CE")
    k = GradedComplex(dims, _family(sayd, d_k, range(1, n + 1), check), -1, "d_K")
    return ce, k


def build_chain_diffs(sayd: SaydModule, check: bool = True) -> tuple[GradedComplex, GradedComplex]:
    n, m = sayd.lie.dim, sayd.dim
    dims = [basis(n).dim(p) * m for p in range(n + 1)]
    ce = GradedComplex(dims, _family(sayd, del_ce, range(1, n + 1), check), -1, "del_CE")
    k = GradedComplex(dims, _family(sayd, del_k, range(n), check), 1, "del_K")
    return ce, k


def anticommutator_zero(up: GradedComplex, down: GradedComplex) -> bool:
    """``up∘down + down∘up = 0`` on every degree."""
    for p in up.degrees():
        a = down.diff(p + up.step) @ up.diff(p) if p + up.step in up.degrees() else None
        b = up.diff(p + down.step) @ down.diff(p) if p + down.step in up.degrees() else None
        if a is None and b is None:
            continue
        if a is None:
            total = b
        elif b is None:
            total = a
        else:
            total = a + b
        if total:
            return False
    return True


@dataclass(frozen=True)
class MixedReport:
    chain_squares: bool
    chain_anticommute: bool
    cochain_squares: bool
    cochain_anticommute: bool
    sayd: bool
    unimodular_sayd: bool

    @property
    def chain_total_zero(self) -> bool:
        return self.chain_squares and self.chain_anticommute

    @property
    def cochain_total_zero(self) -> bool:
        return self.cochain_squares and self.cochain_anticommute

    @property
    def consistent(self) -> bool:
        return self.chain_total_zero == self.sayd and self.cochain_total_zero == self.unimodular_sayd


def total_square_zero(sayd: SaydModule, side: str = "chain") -> bool:
    """Does ``(CE + K)^2`` vanish?  Builds the differentials without prechecks."""
    if side == "chain":
        ce, k = build_chain_diffs(sayd, check=False)
    else:
        ce, k = build_cochain_diffs(sayd, check=False)
    return ce.is_complex() and k.is_complex() and anticommutator_zero(ce, k)


def mixed_check(sayd: SaydModule) -> MixedReport:
    v = all_verdicts(sayd)
    ce, k = build_chain_diffs(sayd, check=False)
    dce, dk = build_cochain_diffs(sayd, check=False)
    return MixedReport(
        ce.is_complex() and k.is_complex(),
        anticommutator_zero(ce, k),
        dce.is_complex() and dk.is_complex(),
        anticommutator_zero(dce, dk),
        v.sayd,
        v.unimodular_sayd,
    )


# total complexes


def _chain_pieces(sayd: SaydModule):
    ce, k = build_chain_diffs(sayd, check=False)
    return ce, k, sayd.lie.dim, sayd.dim


def hc_complex(sayd: SaydModule, n_max: int, check: bool = True) -> GradedComplex:
    """Staircase ``Tot^n = ⊕_{i>=0} C_{n-2i}`` with ``D = ∂_CE + ∂_K``, degrees 0..n_max."""
    if check:
        v = all_verdicts(sayd)
        if not v.sayd:
            raise RefusedError("coefficients are not SAYD; the total differential does not square to zero")
    ce, k, n, m = _chain_pieces(sayd)
    cdim = [basis(n).dim(p) * m for p in range(n + 1)]

    def parts(deg):
        return [deg - 2 * i for i in range(deg // 2 + 1) if deg - 2 * i <= n]

    dims = [sum(cdim[p] for p in parts(d)) for d in range(n_max + 1)]
    diffs = {}
    for d in range(n_max):
        src, tgt = parts(d), parts(d + 1)
        blocks = []
        for q in tgt:
            row = []
            for p in src:
                if q == p + 1:
                    row.append(k.diff(p))
                elif q == p - 1:
                    row.append(ce.diff(p))
                else:
                    row.append(None)
            blocks.append(row)
        if src and tgt:
            diffs[d] = block(blocks, [cdim[q] for q in tgt], [cdim[p] for p in src])
        else:
            diffs[d] = Matrix(dims[d + 1], dims[d])
    return GradedComplex(dims, diffs, 1, "HC")


def hp_complex(sayd: SaydModule, check: bool = True) -> GradedComplex:
    """2-periodic complex ``E_even <-> E_odd`` with ``D = ∂_CE + ∂_K``."""
    if check:
        v = all_verdicts(sayd)
        if not v.sayd:
            raise RefusedError("coefficients are not SAYD; the total differential does not square to zero")
    ce, k, n, m = _chain_pieces(sayd)
    cdim = [basis(n).dim(p) * m for p in range(n + 1)]
    even = [p for p in range(n + 1) if p % 2 == 0]
    odd = [p for p in range(n + 1) if p % 2 == 1]

    def total(src, tgt):
        blocks = []
        for q in tgt:
            row = []
            for p in src:
                if q == p + 1:
                    row.append(k.diff(p))
                elif q == p - 1:
                    row.append(ce.diff(p))
                else:
                    row.append(None)
            blocks.append(row)
        return block(blocks, [cdim[q] for q in tgt], [cdim[p] for p in src])

    dims = [sum(cdim[p] for p in even), sum(cdim[p] for p in odd)]
    return GradedComplex(dims, {0: total(even, odd), 1: total(odd, even)}, 1, "HP", periodic=True)


def ce_homology(sayd: SaydModule) -> list[int]:
    ce, _ = build_chain_diffs(sayd)
    return cohomology_dims(ce)


def ce_cohomology(sayd: SaydModule) -> list[int]:
    ce, _ = build_cochain_diffs(sayd)
    return cohomology_dims(ce)


def hc_dims(sayd: SaydModule, n_max: int) -> list[int]:
    cx = hc_complex(sayd, n_max + 1)
    dims = cohomology_dims(cx)
    return dims[: n_max + 1]


def hp_dims(sayd: SaydModule) -> tuple[int, int]:
    d = cohomology_dims(hp_complex(sayd))
    return d[0], d[1]
