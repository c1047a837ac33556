"""Finite-dimensional Lie algebras given by structure constants.

Indices are 0-based internally.  ``C[i, j, k]`` is the coefficient of
``X_k`` in ``[X_i, X_j]``.  The text format and all user-facing output use
1-based indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Iterable, Sequence

from .linalg import Matrix, as_fraction, format_fraction


class MalformedSpecError(ValueError):
    """Structure constant data that cannot describe an algebra at all."""


@dataclass(frozen=True)
class LieAlgebra:
    dim: int
    basis: tuple[str, ...]
    # sparse (i, j, k) -> value, full table (both orders stored)
    entries: tuple[tuple[tuple[int, int, int], Fraction], ...] = ()
    name: str = ""

    def __post_init__(self):
        if self.dim < 1:
            raise MalformedSpecError("dimension must be at least 1")
        if len(self.basis) != self.dim:
            raise MalformedSpecError(f"expected {self.dim} basis names, got {len(self.basis)}")
        for (i, j, k), _ in self.entries:
            if not all(0 <= t < self.dim for t in (i, j, k)):
                raise MalformedSpecError(f"index ({i + 1}, {j + 1}, {k + 1}) out of range 1..{self.dim}")

    @cached_property
    def table(self) -> dict[tuple[int, int, int], Fraction]:
        return dict(self.entries)

    @cached_property
    def brackets(self) -> dict[tuple[int, int], dict[int, Fraction]]:
        """``(i, j) -> {k: C^k_ij}`` for nonzero brackets."""
        out: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (i, j, k), v in self.entries:
            out.setdefault((i, j), {})[k] = v
        return out

    def c(self, i: int, j: int, k: int) -> Fraction:
        return self.table.get((i, j, k), Fraction(0))

    def bracket(self, i: int, j: int) -> dict[int, Fraction]:
        return dict(self.brackets.get((i, j), {}))

    def is_abelian(self) -> bool:
        return not self.entries

    def upper_entries(self) -> list[tuple[int, int, int, Fraction]]:
        """The i<j part, plus any raw entries not implied by antisymmetry."""
        out = []
        for (i, j, k), v in self.entries:
            if i < j:
                out.append((i, j, k, v))
            elif i == j or self.c(j, i, k) != -v:
                out.append((i, j, k, v))
        return sorted(out)


def from_brackets(
    dim: int,
    brackets: Iterable[tuple[int, int, int, object]],
    basis: Sequence[str] | None = None,
    name: str = "",
) -> LieAlgebra:
    """Build an algebra from ``(i, j, k, value)`` entries, 0-based.

    Missing antisymmetric counterparts are filled in.  Contradictory pairs
    are kept verbatim so that :func:`validate_lie_algebra` can report them.
    """
    given: dict[tuple[int, int, int], Fraction] = {}
    for i, j, k, v in brackets:
        if not all(0 <= t < dim for t in (i, j, k)):
            raise MalformedSpecError(f"index ({i + 1}, {j + 1}, {k + 1}) out of range 1..{dim}")
        v = as_fraction(v)
        given[i, j, k] = given.get((i, j, k), Fraction(0)) + v
    table = dict(given)
    for (i, j, k), v in given.items():
        if (j, i, k) not in given and i != j:
            table[j, i, k] = -v
    entries = tuple(sorted((key, v) for key, v in table.items() if v))
    if basis is None:
        basis = [f"X{i + 1}" for i in range(dim)]
    return LieAlgebra(dim, tuple(basis), entries, name)


@dataclass(frozen=True)
class ValidationReport:
    antisymmetry: tuple[tuple[int, int, int], ...] = ()
    jacobi: tuple[tuple[int, int, int, int], ...] = ()

    @property
    def ok(self) -> bool:
        return not self.antisymmetry and not self.jacobi

    def describe(self) -> str:
        if self.ok:
            return "ok"
        lines = []
        for i, j, k in self.antisymmetry:
            lines.append(f"antisymmetry violated at ({i + 1},{j + 1}) component {k + 1}")
        for i, j, l, m in self.jacobi:
            lines.append(f"Jacobi violated at ({i + 1},{j + 1},{l + 1}) component {m + 1}")
        return "\n".join(lines)


def validate_lie_algebra(lie: LieAlgebra) -> ValidationReport:
    n = lie.dim
    bad_anti = set()
    for (i, j, k), v in lie.entries:
        if lie.c(j, i, k) != -v:
            bad_anti.add((min(i, j), max(i, j), k))
    bad_jac = []
    # with antisymmetry the cyclic sum is alternating, so i<j<l suffices
    triples = product(range(n), repeat=3) if bad_anti else (
        t for t in product(range(n), repeat=3) if t[0] < t[1] < t[2]
    )
    for i, j, l in triples:
        acc: dict[int, Fraction] = {}
        for a, b, d in ((i, j, l), (j, l, i), (l, i, j)):
            for k, v in lie.brackets.get((a, b), {}).items():
                for m, w in lie.brackets.get((k, d), {}).items():
                    acc[m] = acc.get(m, 0) + v * w
        for m in sorted(acc):
            if acc[m]:
                bad_jac.append((i, j, l, m))
    return ValidationReport(tuple(sorted(bad_anti)), tuple(bad_jac))


def adjoint_reps(lie: LieAlgebra) -> tuple[list[Matrix], list[Matrix]]:
    """``ad(X_i)`` with ``(ad X_i)[k, j] = C^k_ij`` and ``coad = -ad^T``."""
    n = lie.dim
    ads = []
    for i in range(n):
        ent = {}
        for j in range(n):
            for k, v in lie.brackets.get((i, j), {}).items():
                ent[k, j] = v
        ads.append(Matrix(n, n, ent))
    return ads, [-a.T for a in ads]


def modular_character(lie: LieAlgebra) -> tuple[Fraction, ...]:
    return tuple(sum((lie.c(i, k, k) for k in range(lie.dim)), Fraction(0)) for i in range(lie.dim))


def semidirect_double(lie: LieAlgebra) -> LieAlgebra:
    """``g* ⋊ g`` on the basis ``(theta^1..theta^N, X_1..X_N)``."""
    n = lie.dim
    entries = []
    for (i, j, k), v in lie.entries:
        entries.append((n + i, n + j, n + k, v))
    # [theta^a, X_i] = -L_{X_i} theta^a = C^a_il theta^l
    for (i, l, a), v in lie.entries:
        entries.append((a, n + i, l, v))
        entries.append((n + i, a, l, -v))
    basis = [f"theta{i + 1}" for i in range(n)] + list(lie.basis)
    table: dict[tuple[int, int, int], Fraction] = {}
    for i, j, k, v in entries:
        table[i, j, k] = table.get((i, j, k), Fraction(0)) + v
    return LieAlgebra(
        2 * n, tuple(basis), tuple(sorted((key, v) for key, v in table.items() if v)), f"double({lie.name})"
    )


def change_basis(lie: LieAlgebra, gamma: Matrix) -> LieAlgebra:
    """Constants in the basis ``Y_j = sum_l gamma[l, j] X_l``."""
    n = lie.dim
    if gamma.shape != (n, n):
        raise ValueError("basis change must be N x N")
    ginv = gamma.inverse()
    entries = []
    for a in range(n):
        for b in range(a + 1, n):
            # [Y_a, Y_b] in X-coordinates
            acc: dict[int, Fraction] = {}
            for l, ga in gamma.T.row(a).items():
                for m, gb in gamma.T.row(b).items():
                    for k, v in lie.brackets.get((l, m), {}).items():
                        acc[k] = acc.get(k, 0) + ga * gb * v
            for cidx, w in ginv.apply(acc).items():
                entries.append((a, b, cidx, w))
    return from_brackets(n, entries, lie.basis, lie.name)


def transform_character(delta: Sequence[Fraction], gamma: Matrix) -> tuple[Fraction, ...]:
    n = len(delta)
    return tuple(sum((gamma[l, j] * delta[l] for l in range(n)), Fraction(0)) for j in range(n))


# built-in algebras


def abelian(n: int) -> LieAlgebra:
    return from_brackets(n, [], name=f"abelian{n}")


def aff1() -> LieAlgebra:
    """The two-dimensional nonabelian algebra, ``[X1, X2] = X2``."""
    return from_brackets(2, [(0, 1, 1, 1)], name="aff1")


def heisenberg() -> LieAlgebra:
    return from_brackets(3, [(0, 1, 2, 1)], name="heisenberg")


def sl2() -> LieAlgebra:
    """sl(2) with X1 = E, X2 = F, X3 = H: [X1,X2]=X3, [X3,X1]=2X1, [X3,X2]=-2X2."""
    return from_brackets(3, [(0, 1, 2, 1), (2, 0, 0, 2), (2, 1, 1, -2)], name="sl2")


def builtin_lie(name: str) -> LieAlgebra:
    key = name.strip().lower().replace("(", "").replace(")", "").replace("-", "").replace("_", "")
    if key in ("sl2",):
        return sl2()
    if key in ("heisenberg", "heisenberg3", "h3"):
        return heisenberg()
    if key in ("aff1", "nonabelian2", "affine1"):
        return aff1()
    if key.startswith("abelian") and key[7:].isdigit():
        return abelian(int(key[7:]))
    raise KeyError(f"unknown built-in Lie algebra {name!r}")


BUILTIN_NAMES = ("sl2", "heisenberg", "aff1", "abelian<n>")


# text format
#
#   name sl2
#   dim 3
#   basis E F H
#   brackets
#   1 2 3 1
#   3 1 1 2
#   end
#
# Bracket entries are ``i j k value`` meaning C^k_ij = value, 1-based; only
# i<j entries are needed.


def serialize_lie(lie: LieAlgebra) -> str:
    lines = []
    if lie.name:
        lines.append(f"name {lie.name}")
    lines.append(f"dim {lie.dim}")
    lines.append("basis " + " ".join(lie.basis))
    lines.append("brackets")
    for i, j, k, v in lie.upper_entries():
        lines.append(f"{i + 1} {j + 1} {k + 1} {format_fraction(v)}")
    lines.append("end")
    return "\n".join(lines) + "\n"


def parse_lie(text: str) -> LieAlgebra:
    name = ""
    dim = None
    basis = None
    entries = []
    in_brackets = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        if in_brackets:
            if words == ["end"]:
                in_brackets = False
                continue
            if len(words) != 4:
                raise MalformedSpecError(f"line {lineno}: bracket entry needs 'i j k value'")
            try:
                i, j, k = (int(w) - 1 for w in words[:3])
                v = Fraction(words[3])
            except ValueError as exc:
                raise MalformedSpecError(f"line {lineno}: {exc}") from None
            entries.append((i, j, k, v))
            continue
        key = words[0]
        if key == "name":
            name = " ".join(words[1:])
        elif key == "dim":
            if len(words) != 2 or not words[1].isdigit():
                raise MalformedSpecError(f"line {lineno}: 'dim' takes one positive integer")
            dim = int(words[1])
        elif key == "basis":
            basis = words[1:]
        elif key == "brackets":
            in_brackets = True
        else:
            raise MalformedSpecError(f"line {lineno}: unknown key {key!r}")
    if dim is None:
        raise MalformedSpecError("missing 'dim'")
    return from_brackets(dim, entries, basis, name)
