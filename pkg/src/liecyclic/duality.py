"""Poincaré duality between the chain and cochain complexes.

``D_P(theta^I) = ι(theta^{i_p})···ι(theta^{i_1}) ϖ`` with ``ϖ = X_1∧..∧X_N``,
and ``D_P^{-1}(ξ) = sum_J <X_J ∧ ξ, ω*> theta^J`` with ``ω* = theta^1∧..∧theta^N``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .complexes import build_chain_diffs, build_cochain_diffs, cohomology_dims
from .exterior import basis, interior, wedge
from .linalg import Matrix
from .sayd import SaydModule, delta_twist


def poincare(n: int, p: int) -> Matrix:
    """Matrix of ``D_P: Λ^p g* -> Λ^{n-p} g``."""
    eb = basis(n)
    full = tuple(range(n))
    ent = {}
    for c, t in enumerate(eb(p)):
        sign, cur = 1, full
        for i in t:
            s, cur = interior(i, cur)
            sign *= s
        ent[eb.index(cur), c] = sign
    return Matrix(eb.dim(n - p), eb.dim(p), ent)


def poincare_inverse(n: int, p: int) -> Matrix:
    """Matrix of ``D_P^{-1}: Λ^p g -> Λ^{n-p} g*``."""
    eb = basis(n)
    ent = {}
    for c, t in enumerate(eb(p)):
        for r, j in enumerate(eb(n - p)):
            w = wedge(j, t)
            if w is not None:
                ent[r, c] = w[0]
    return Matrix(eb.dim(n - p), eb.dim(p), ent)


def poincare_transport(sayd: SaydModule, p: int) -> Matrix:
    """``D_P^{-1} ⊗ id_V``: C_p = Λ^p g⊗V -> W^{N-p} = Λ^{N-p} g*⊗V."""
    return poincare_inverse(sayd.lie.dim, p).kron(Matrix.identity(sayd.dim))


@dataclass
class DualityReport:
    ce_ok: bool
    koszul_ok: bool
    ce_signs: dict[int, int] = field(default_factory=dict)
    failures: list[tuple[str, int, dict]] = field(default_factory=list)
    ce_betti_chain: list[int] = field(default_factory=list)
    ce_betti_cochain: list[int] = field(default_factory=list)
    koszul_betti_chain: list[int] = field(default_factory=list)
    koszul_betti_cochain: list[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.ce_ok and self.koszul_ok

    def ce_sign_rule(self, n: int) -> bool:
        """Whether every recorded CE sign equals ``(-1)^{N-p-1}``."""
        return all(s == (-1 if (n - p - 1) % 2 else 1) for p, s in self.ce_signs.items())

    @property
    def betti_match(self) -> bool:
        return (
            self.ce_betti_chain == self.ce_betti_cochain[::-1]
            and self.koszul_betti_chain == self.koszul_betti_cochain[::-1]
        )


def _witness(m: Matrix) -> dict:
    """A basis column on which ``m`` is nonzero, with its image."""
    (i, j), _ = next(iter(m.items()))
    return {"column": j, "image": {r: v for (r, c), v in m.items() if c == j}}


def duality_square_check(sayd: SaydModule, twist_sign: int = -1) -> DualityReport:
    """Compare the chain mixed complex of ``V`` with the cochain one of ``V ⊗ C_{±δ}``.

    Koszul square: ``d_K T_p = (-1)^{N-p-1} T_{p+1} ∂_K``.
    CE square: ``d_CE T_p = ε_p T_{p-1} ∂_CE`` where the sign ``ε_p`` is
    found per degree and recorded; on every example tried it is again
    ``(-1)^{N-p-1}``.
    """
    n = sayd.lie.dim
    twisted = delta_twist(sayd, twist_sign)
    dce, dk = build_cochain_diffs(twisted)
    ce, k = build_chain_diffs(sayd)
    T = {p: poincare_transport(sayd, p) for p in range(n + 1)}
    rep = DualityReport(True, True)

    for p in range(n):
        lhs = dk.diff(n - p) @ T[p]
        rhs = (T[p + 1] @ k.diff(p)).scale(-1 if (n - p - 1) % 2 else 1)
        if lhs != rhs:
            rep.koszul_ok = False
            rep.failures.append(("koszul", p, _witness(lhs - rhs)))

    for p in range(1, n + 1):
        lhs = dce.diff(n - p) @ T[p]
        rhs = T[p - 1] @ ce.diff(p)
        # try the Koszul-square sign first so that degenerate (zero) cases record it
        expected = -1 if (n - p - 1) % 2 else 1
        if lhs == rhs.scale(expected):
            rep.ce_signs[p] = expected
        elif lhs == rhs.scale(-expected):
            rep.ce_signs[p] = -expected
        else:
            rep.ce_ok = False
            rep.failures.append(("ce", p, _witness(lhs - rhs)))

    rep.ce_betti_chain = cohomology_dims(ce)
    rep.ce_betti_cochain = cohomology_dims(dce)
    rep.koszul_betti_chain = cohomology_dims(k)
    rep.koszul_betti_cochain = cohomology_dims(dk)
    return rep
