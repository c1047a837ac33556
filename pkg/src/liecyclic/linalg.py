"""Exact sparse linear algebra over the rationals.

Matrices are stored as dict-of-rows with :class:`fractions.Fraction`
entries; zero entries are never stored.  Rank uses fraction-free row
reduction on integer-scaled rows (row contents are divided out after every
step so entries stay small); null spaces use a reduced row echelon form with
pivots chosen in increasing column order, so every result is deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Iterator, Mapping, Sequence


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"not an exact scalar: {value!r}")


def format_fraction(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class Matrix:
    """Immutable sparse matrix with exact rational entries."""

    __slots__ = ("nrows", "ncols", "_rows")

    def __init__(self, nrows: int, ncols: int, entries: Mapping[tuple[int, int], object] | None = None):
        if nrows < 0 or ncols < 0:
            raise ValueError("negative shape")
        self.nrows = nrows
        self.ncols = ncols
        rows: dict[int, dict[int, Fraction]] = {}
        for (i, j), value in (entries or {}).items():
            if not (0 <= i < nrows and 0 <= j < ncols):
                raise IndexError(f"entry ({i}, {j}) outside {nrows}x{ncols}")
            value = as_fraction(value)
            if value:
                rows.setdefault(i, {})[j] = value
        self._rows = rows

    @classmethod
    def _from_rows(cls, nrows: int, ncols: int, rows: dict[int, dict[int, Fraction]]) -> Matrix:
        m = cls.__new__(cls)
        m.nrows = nrows
        m.ncols = ncols
        m._rows = {i: r for i, r in rows.items() if r}
        return m

    @classmethod
    def zeros(cls, nrows: int, ncols: int | None = None) -> Matrix:
        return cls(nrows, nrows if ncols is None else ncols)

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls._from_rows(n, n, {i: {i: Fraction(1)} for i in range(n)})

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[object]]) -> Matrix:
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        entries = {}
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged rows")
            for j, value in enumerate(row):
                entries[i, j] = value
        return cls(nrows, ncols, entries)

    @classmethod
    def unit(cls, nrows: int, ncols: int, i: int, j: int, value=1) -> Matrix:
        return cls(nrows, ncols, {(i, j): value})

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        i, j = key
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError(key)
        return self._rows.get(i, {}).get(j, Fraction(0))

    def row(self, i: int) -> dict[int, Fraction]:
        return dict(self._rows.get(i, {}))

    def items(self) -> Iterator[tuple[tuple[int, int], Fraction]]:
        for i in sorted(self._rows):
            row = self._rows[i]
            for j in sorted(row):
                yield (i, j), row[j]

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self._rows.values())

    def is_zero(self) -> bool:
        return not self._rows

    def __bool__(self) -> bool:
        return bool(self._rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.shape, tuple(self.items())))

    def __repr__(self) -> str:
        return f"Matrix({self.nrows}x{self.ncols}, nnz={self.nnz})"

    def to_lists(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.ncols for _ in range(self.nrows)]
        for (i, j), v in self.items():
            out[i][j] = v
        return out

    def pretty(self) -> str:
        cells = [[format_fraction(v) for v in row] for row in self.to_lists()]
        width = max((len(c) for row in cells for c in row), default=1)
        return "\n".join(" ".join(c.rjust(width) for c in row) for row in cells)

    # arithmetic

    def _check_same_shape(self, other: Matrix) -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: Matrix) -> Matrix:
        self._check_same_shape(other)
        rows = {i: dict(r) for i, r in self._rows.items()}
        for i, r in other._rows.items():
            target = rows.setdefault(i, {})
            for j, v in r.items():
                s = target.get(j, 0) + v
                if s:
                    target[j] = s
                else:
                    target.pop(j, None)
        return Matrix._from_rows(self.nrows, self.ncols, rows)

    def __neg__(self) -> Matrix:
        return Matrix._from_rows(
            self.nrows, self.ncols, {i: {j: -v for j, v in r.items()} for i, r in self._rows.items()}
        )

    def __sub__(self, other: Matrix) -> Matrix:
        return self + (-other)

    def scale(self, c) -> Matrix:
        c = as_fraction(c)
        if not c:
            return Matrix(self.nrows, self.ncols)
        return Matrix._from_rows(
            self.nrows, self.ncols, {i: {j: c * v for j, v in r.items()} for i, r in self._rows.items()}
        )

    def __mul__(self, c) -> Matrix:
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        orows = other._rows
        rows: dict[int, dict[int, Fraction]] = {}
        for i, r in self._rows.items():
            acc: dict[int, Fraction] = {}
            for k, a in r.items():
                ok = orows.get(k)
                if ok is None:
                    continue
                for j, b in ok.items():
                    acc[j] = acc.get(j, 0) + a * b
            acc = {j: v for j, v in acc.items() if v}
            if acc:
                rows[i] = acc
        return Matrix._from_rows(self.nrows, other.ncols, rows)

    def apply_row(self, vec: Mapping[int, Fraction]) -> dict[int, Fraction]:
        """Row vector times matrix, sparse in and out."""
        acc: dict[int, Fraction] = {}
        for k, a in vec.items():
            for j, b in self._rows.get(k, {}).items():
                acc[j] = acc.get(j, 0) + a * b
        return {j: v for j, v in acc.items() if v}

    def apply(self, vec: Mapping[int, Fraction]) -> dict[int, Fraction]:
        """Matrix times column vector, sparse in and out."""
        acc: dict[int, Fraction] = {}
        for i, r in self._rows.items():
            s = sum((v * vec[j] for j, v in r.items() if j in vec), Fraction(0))
            if s:
                acc[i] = s
        return acc

    def commutator(self, other: Matrix) -> Matrix:
        return self @ other - other @ self

    @property
    def T(self) -> Matrix:
        rows: dict[int, dict[int, Fraction]] = {}
        for i, r in self._rows.items():
            for j, v in r.items():
                rows.setdefault(j, {})[i] = v
        return Matrix._from_rows(self.ncols, self.nrows, rows)

    def kron(self, other: Matrix) -> Matrix:
        p, q = other.shape
        rows: dict[int, dict[int, Fraction]] = {}
        for i, r in self._rows.items():
            for k, ok in other._rows.items():
                target = rows.setdefault(i * p + k, {})
                for j, a in r.items():
                    for l, b in ok.items():
                        target[j * q + l] = a * b
        return Matrix._from_rows(self.nrows * p, self.ncols * q, rows)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
        col_pos = {c: n for n, c in enumerate(cols)}
        out: dict[int, dict[int, Fraction]] = {}
        for n, i in enumerate(rows):
            r = self._rows.get(i)
            if not r:
                continue
            sel = {col_pos[j]: v for j, v in r.items() if j in col_pos}
            if sel:
                out[n] = sel
        return Matrix._from_rows(len(rows), len(cols), out)

    # elimination

    def rank(self) -> int:
        return rank(self)

    def nullspace(self) -> list[dict[int, Fraction]]:
        return nullspace(self)

    def inverse(self) -> Matrix:
        return inverse(self)


def block(blocks: Sequence[Sequence[Matrix | None]], row_sizes: Sequence[int], col_sizes: Sequence[int]) -> Matrix:
    """Assemble a block matrix; ``None`` blocks are zero."""
    row_off = [0]
    for s in row_sizes:
        row_off.append(row_off[-1] + s)
    col_off = [0]
    for s in col_sizes:
        col_off.append(col_off[-1] + s)
    rows: dict[int, dict[int, Fraction]] = {}
    for bi, brow in enumerate(blocks):
        for bj, blk in enumerate(brow):
            if blk is None:
                continue
            if blk.shape != (row_sizes[bi], col_sizes[bj]):
                raise ValueError(f"block ({bi}, {bj}) has shape {blk.shape}")
            for (i, j), v in blk.items():
                rows.setdefault(row_off[bi] + i, {})[col_off[bj] + j] = v
    return Matrix._from_rows(row_off[-1], col_off[-1], rows)


def _content_reduce(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {j: v // g for j, v in row.items()}
    return row


def _integer_row(row: Mapping[int, Fraction]) -> dict[int, int]:
    den = 1
    for v in row.values():
        den = den * v.denominator // gcd(den, v.denominator)
    return _content_reduce({j: int(v * den) for j, v in row.items()})


def _echelon_int(rows: Iterable[Mapping[int, Fraction]]) -> dict[int, dict[int, int]]:
    """Fraction-free echelon form keyed by leading column."""
    pivots: dict[int, dict[int, int]] = {}
    for r in rows:
        row = _integer_row(r)
        while row:
            lead = min(row)
            p = pivots.get(lead)
            if p is None:
                pivots[lead] = row
                break
            a, b = p[lead], row[lead]
            new = {j: a * v for j, v in row.items()}
            for j, v in p.items():
                s = new.get(j, 0) - b * v
                if s:
                    new[j] = s
                else:
                    new.pop(j, None)
            row = _content_reduce(new)
    return pivots


def rank(m: Matrix) -> int:
    """Exact rank by fraction-free elimination."""
    if m.nnz == 0:
        return 0
    # eliminate along the shorter side
    src = m if m.nrows <= m.ncols else m.T
    return len(_echelon_int(src._rows[i] for i in sorted(src._rows)))


def _eliminate(row: dict[int, Fraction], col: int, pivot: Mapping[int, Fraction]) -> None:
    c = row[col]
    for j, v in pivot.items():
        s = row.get(j, 0) - c * v
        if s:
            row[j] = s
        else:
            row.pop(j, None)


def rref(m: Matrix) -> tuple[dict[int, dict[int, Fraction]], list[int]]:
    """Reduced row echelon form: ``(pivot_col -> normalized row, pivot cols)``."""
    pivots: dict[int, dict[int, Fraction]] = {}
    for i in sorted(m._rows):
        row = dict(m._rows[i])
        # pivot rows are fully reduced, so one pass in increasing order suffices
        for pc in sorted(pivots):
            if pc in row:
                _eliminate(row, pc, pivots[pc])
        if not row:
            continue
        lead = min(row)
        inv = 1 / row[lead]
        row = {j: v * inv for j, v in row.items()}
        for prow in pivots.values():
            if lead in prow:
                _eliminate(prow, lead, row)
        pivots[lead] = row
    return pivots, sorted(pivots)


def nullspace(m: Matrix) -> list[dict[int, Fraction]]:
    """Basis of ``{x : m x = 0}``, one vector per free column in increasing order."""
    pivots, pcols = rref(m)
    pset = set(pcols)
    basis = []
    for f in range(m.ncols):
        if f in pset:
            continue
        vec = {f: Fraction(1)}
        for pc in pcols:
            c = pivots[pc].get(f)
            if c:
                vec[pc] = -c
        basis.append(vec)
    return basis


def row_space_basis(vectors: Iterable[Mapping[int, Fraction]], ncols: int) -> list[dict[int, Fraction]]:
    """Canonical (RREF) basis of the span of the given sparse vectors."""
    vecs = list(vectors)
    m = Matrix(len(vecs), ncols, {(i, j): v for i, vec in enumerate(vecs) for j, v in vec.items()})
    pivots, pcols = rref(m)
    return [dict(sorted(pivots[c].items())) for c in pcols]


def in_span(vector: Mapping[int, Fraction], basis_rref: Mapping[int, Mapping[int, Fraction]]) -> bool:
    """Membership test against an RREF basis keyed by pivot column."""
    row = {j: Fraction(v) for j, v in vector.items() if v}
    while row:
        lead = min(row)
        p = basis_rref.get(lead)
        if p is None:
            return False
        c = row[lead]
        for j, v in p.items():
            s = row.get(j, 0) - c * v
            if s:
                row[j] = s
            else:
                row.pop(j, None)
    return True


def inverse(m: Matrix) -> Matrix:
    n = m.nrows
    if m.ncols != n:
        raise ValueError("only square matrices are invertible")
    aug = block([[m, Matrix.identity(n)]], [n], [n, n])
    pivots, pcols = rref(aug)
    if pcols[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    entries = {}
    for i in range(n):
        for j, v in pivots[i].items():
            if j >= n:
                entries[i, j - n] = v
    return Matrix(n, n, entries)
