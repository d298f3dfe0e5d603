"""Immutable dense matrices over an exact field."""
from __future__ import annotations

from typing import Any, Iterable, Sequence

from ..errors import DimensionMismatch, FieldMismatch, MalformedInput
from .fields import Field, embed_values


class Mat:
    """Dense matrix; rows are tuples of raw field values.

    Instances are treated as immutable: every operation returns a new Mat.
    """

    __slots__ = ("field", "nrows", "ncols", "_rows", "_hash")

    def __init__(self, field: Field, rows: Iterable[Iterable[Any]], nrows: int | None = None,
                 ncols: int | None = None, *, _trusted: bool = False):
        if _trusted:
            data = rows
        else:
            data = tuple(tuple(field.coerce(x) for x in row) for row in rows)
        if nrows is None:
            nrows = len(data)
        if ncols is None:
            if not data:
                raise DimensionMismatch("column count needed for an empty matrix")
            ncols = len(data[0])
        if len(data) != nrows or any(len(r) != ncols for r in data):
            raise DimensionMismatch(f"entries do not fit shape {nrows}x{ncols}")
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        self._rows = data
        self._hash = None

    # construction helpers
    @classmethod
    def _raw(cls, field: Field, rows, nrows: int, ncols: int) -> "Mat":
        return cls(field, rows, nrows, ncols, _trusted=True)

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "Mat":
        z = field.zero
        return cls._raw(field, tuple((z,) * ncols for _ in range(nrows)), nrows, ncols)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Mat":
        z, o = field.zero, field.one
        return cls._raw(field, tuple(tuple(o if a == b else z for b in range(n)) for a in range(n)), n, n)

    @classmethod
    def from_entries(cls, field: Field, nrows: int, ncols: int, entries: Sequence) -> "Mat":
        if len(entries) != nrows * ncols:
            raise DimensionMismatch("entry count does not match shape")
        return cls(field, [entries[r * ncols:(r + 1) * ncols] for r in range(nrows)], nrows, ncols)

    @classmethod
    def from_columns(cls, field: Field, cols: Sequence[Sequence], nrows: int) -> "Mat":
        return cls._raw(field, tuple(tuple(c[r] for c in cols) for r in range(nrows)), nrows, len(cols))

    @classmethod
    def column(cls, field: Field, vec: Sequence) -> "Mat":
        return cls(field, [[x] for x in vec], len(vec), 1)

    # access
    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def rows(self) -> tuple[tuple, ...]:
        return self._rows

    @property
    def entries(self) -> tuple:
        return tuple(x for row in self._rows for x in row)

    def row(self, i: int) -> tuple:
        return self._rows[i]

    def col(self, j: int) -> tuple:
        return tuple(row[j] for row in self._rows)

    def columns(self) -> list[tuple]:
        return [self.col(j) for j in range(self.ncols)]

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return (self.shape == other.shape and self.field == other.field
                and self._rows == other._rows)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.nrows, self.ncols, self._rows))
        return self._hash

    def __repr__(self):
        f = self.field.format
        body = "; ".join(" ".join(f(x) for x in r) for r in self._rows)
        return f"Mat({self.nrows}x{self.ncols} over {self.field!r}: [{body}])"

    def is_zero(self) -> bool:
        z = self.field.zero
        return all(x == z for row in self._rows for x in row)

    # arithmetic
    def _same_field(self, other: "Mat"):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")

    def __matmul__(self, other: "Mat") -> "Mat":
        self._same_field(other)
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        dot = self.field.dot
        cols = other.columns()
        rows = tuple(tuple(dot(r, c) for c in cols) for r in self._rows)
        return Mat._raw(self.field, rows, self.nrows, other.ncols)

    def __add__(self, other: "Mat") -> "Mat":
        self._same_field(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        add = self.field.add
        rows = tuple(tuple(add(a, b) for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows))
        return Mat._raw(self.field, rows, self.nrows, self.ncols)

    def __sub__(self, other: "Mat") -> "Mat":
        self._same_field(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot subtract {self.shape} and {other.shape}")
        sub = self.field.sub
        rows = tuple(tuple(sub(a, b) for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows))
        return Mat._raw(self.field, rows, self.nrows, self.ncols)

    def __neg__(self) -> "Mat":
        neg = self.field.neg
        return Mat._raw(self.field, tuple(tuple(neg(a) for a in r) for r in self._rows),
                        self.nrows, self.ncols)

    def scale(self, c) -> "Mat":
        c = self.field.coerce(c)
        mul = self.field.mul
        return Mat._raw(self.field, tuple(tuple(mul(c, a) for a in r) for r in self._rows),
                        self.nrows, self.ncols)

    @property
    def T(self) -> "Mat":
        return Mat._raw(self.field, tuple(zip(*self._rows)) if self.nrows else
                        tuple(() for _ in range(self.ncols)), self.ncols, self.nrows)

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.ncols:
            raise DimensionMismatch(f"vector of length {len(v)} for {self.shape} matrix")
        dot = self.field.dot
        return tuple(dot(r, v) for r in self._rows)

    def map_field(self, big: Field) -> "Mat":
        f = embed_values(self.field, big)
        return Mat._raw(big, tuple(tuple(f(a) for a in r) for r in self._rows), self.nrows, self.ncols)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Mat":
        return Mat._raw(self.field, tuple(tuple(self._rows[i][j] for j in cols) for i in rows),
                        len(rows), len(cols))

    # stacking
    @staticmethod
    def hstack(*mats: "Mat") -> "Mat":
        if not mats:
            raise DimensionMismatch("nothing to stack")
        f = mats[0].field
        n = mats[0].nrows
        for m in mats:
            if m.field != f:
                raise FieldMismatch("hstack over different fields")
            if m.nrows != n:
                raise DimensionMismatch("hstack row counts differ")
        rows = tuple(tuple(x for m in mats for x in m._rows[i]) for i in range(n))
        return Mat._raw(f, rows, n, sum(m.ncols for m in mats))

    @staticmethod
    def vstack(*mats: "Mat") -> "Mat":
        if not mats:
            raise DimensionMismatch("nothing to stack")
        f = mats[0].field
        n = mats[0].ncols
        for m in mats:
            if m.field != f:
                raise FieldMismatch("vstack over different fields")
            if m.ncols != n:
                raise DimensionMismatch("vstack column counts differ")
        return Mat._raw(f, tuple(r for m in mats for r in m._rows), sum(m.nrows for m in mats), n)

    @staticmethod
    def block(grid: Sequence[Sequence["Mat"]]) -> "Mat":
        return Mat.vstack(*[Mat.hstack(*row) for row in grid])

    @staticmethod
    def block_diag(field: Field, *mats: "Mat") -> "Mat":
        n = sum(m.nrows for m in mats)
        c = sum(m.ncols for m in mats)
        z = field.zero
        rows = []
        off = 0
        for m in mats:
            for r in m._rows:
                rows.append((z,) * off + tuple(r) + (z,) * (c - off - m.ncols))
            off += m.ncols
        return Mat._raw(field, tuple(rows), n, c)

    # elimination
    def rref(self) -> tuple["Mat", list[int]]:
        rows, piv = self.field.row_reduce([list(r) for r in self._rows])
        return Mat._raw(self.field, tuple(tuple(r) for r in rows), len(rows), self.ncols), piv

    def rank(self) -> int:
        if self.nrows == 0 or self.ncols == 0:
            return 0
        if self.nrows > self.ncols:
            return len(self.field.row_reduce([list(r) for r in zip(*self._rows)])[1])
        return len(self.field.row_reduce([list(r) for r in self._rows])[1])

    def kernel_vectors(self) -> list[tuple]:
        """Basis of the right kernel, one vector per free column."""
        n = self.ncols
        if self.nrows == 0:
            rows, piv = [], []
        else:
            rows, piv = self.field.row_reduce([list(r) for r in self._rows])
        f = self.field
        pivset = set(piv)
        out = []
        for free in range(n):
            if free in pivset:
                continue
            v = [f.zero] * n
            v[free] = f.one
            for r, pc in zip(rows, piv):
                v[pc] = f.neg(r[free])
            out.append(tuple(v))
        return out

    def kernel(self):
        from .subspace import Subspace
        return Subspace.span(self.field, self.ncols, self.kernel_vectors())

    def image(self):
        from .subspace import Subspace
        return Subspace.span(self.field, self.nrows, self.columns())

    def inverse(self) -> "Mat":
        if self.nrows != self.ncols:
            raise DimensionMismatch("inverse of a non-square matrix")
        n = self.nrows
        aug = Mat.hstack(self, Mat.identity(self.field, n))
        rows, piv = self.field.row_reduce([list(r) for r in aug._rows])
        if piv[:n] != list(range(n)) or len(rows) < n:
            raise DimensionMismatch("matrix is singular")
        return Mat._raw(self.field, tuple(tuple(r[n:]) for r in rows), n, n)

    def is_invertible(self) -> bool:
        return self.nrows == self.ncols and self.rank() == self.nrows

    def trace(self):
        if self.nrows != self.ncols:
            raise DimensionMismatch("trace of a non-square matrix")
        acc = self.field.zero
        for t in range(self.nrows):
            acc = self.field.add(acc, self._rows[t][t])
        return acc

    # serialization
    def to_json(self) -> list[list[str]]:
        f = self.field.format
        return [[f(x) for x in r] for r in self._rows]

    @classmethod
    def from_json(cls, field: Field, data: Any, nrows: int, ncols: int) -> "Mat":
        if not isinstance(data, list):
            raise MalformedInput("matrix must be a list of rows")
        if nrows == 0 or ncols == 0:
            # empty matrices may be written as [] or as a list of empty rows
            if data and not (len(data) == nrows and all(r == [] for r in data)):
                raise MalformedInput(f"expected an empty {nrows}x{ncols} matrix")
            return cls.zeros(field, nrows, ncols)
        if len(data) != nrows or any(not isinstance(r, list) or len(r) != ncols for r in data):
            raise MalformedInput(f"expected a {nrows}x{ncols} matrix")
        return cls(field, [[field.parse(x) if isinstance(x, str) else field.coerce(x) for x in r]
                           for r in data], nrows, ncols)


def solve_affine(A: Mat, b: Sequence) -> tuple[tuple | None, list[tuple]]:
    """Solutions of A x = b as (particular solution or None, kernel basis)."""
    f = A.field
    if len(b) != A.nrows:
        raise DimensionMismatch("right-hand side length")
    aug = [list(r) + [f.coerce(x)] for r, x in zip(A.rows, b)]
    kernel = A.kernel_vectors()
    if not aug:
        return tuple([f.zero] * A.ncols), kernel
    rows, piv = f.row_reduce(aug)
    if piv and piv[-1] == A.ncols:
        return None, kernel
    x = [f.zero] * A.ncols
    for r, pc in zip(rows, piv):
        x[pc] = r[-1]
    return tuple(x), kernel


def rank_kernel(M: Mat):
    """(rank, kernel, image) with kernel in the source and image in the target."""
    return M.rank(), M.kernel(), M.image()
