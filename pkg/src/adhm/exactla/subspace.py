"""Subspaces of F^n with a canonical reduced row echelon basis."""
from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterator, Sequence

from ..errors import BoundExceeded, DimensionMismatch, FieldMismatch, MalformedInput, UnsupportedField
from .fields import Field
from .matrix import Mat

# Default cap on the number of subspaces an exhaustive enumeration may visit.
# It admits F_2^6 (2825 subspaces) and F_3^5 (2664) but not F_2^7 or F_3^6.
DEFAULT_MAX_SUBSPACES = 4096


class Subspace:
    """Row space of an RREF basis; equal iff the RREF bases are identical."""

    __slots__ = ("field", "ambient", "rows", "pivots", "_hash")

    def __init__(self, field: Field, ambient: int, rows: tuple, pivots: tuple):
        self.field = field
        self.ambient = ambient
        self.rows = rows
        self.pivots = pivots
        self._hash = None

    @classmethod
    def span(cls, field: Field, ambient: int, vectors: Sequence[Sequence]) -> "Subspace":
        vecs = [list(v) for v in vectors]
        for v in vecs:
            if len(v) != ambient:
                raise DimensionMismatch(f"vector of length {len(v)} in F^{ambient}")
        if not vecs or ambient == 0:
            return cls(field, ambient, (), ())
        rows, piv = field.row_reduce(vecs)
        return cls(field, ambient, tuple(tuple(r) for r in rows), tuple(piv))

    @classmethod
    def zero(cls, field: Field, ambient: int) -> "Subspace":
        return cls(field, ambient, (), ())

    @classmethod
    def full(cls, field: Field, ambient: int) -> "Subspace":
        z, o = field.zero, field.one
        rows = tuple(tuple(o if a == b else z for b in range(ambient)) for a in range(ambient))
        return cls(field, ambient, rows, tuple(range(ambient)))

    @classmethod
    def line(cls, field: Field, vec: Sequence) -> "Subspace":
        return cls.span(field, len(vec), [[field.coerce(x) for x in vec]])

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def codim(self) -> int:
        return self.ambient - len(self.rows)

    @property
    def basis(self) -> Mat:
        return Mat._raw(self.field, self.rows, len(self.rows), self.ambient)

    def is_zero(self) -> bool:
        return not self.rows

    def is_full(self) -> bool:
        return len(self.rows) == self.ambient

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.ambient == other.ambient and self.rows == other.rows
                and self.field == other.field)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ambient, self.rows))
        return self._hash

    def __repr__(self):
        f = self.field.format
        body = ", ".join("(" + ",".join(f(x) for x in r) + ")" for r in self.rows)
        return f"Subspace(F^{self.ambient}: <{body}>)"

    def _check(self, other: "Subspace"):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
        if self.ambient != other.ambient:
            raise DimensionMismatch(f"ambient {self.ambient} vs {other.ambient}")

    # membership
    def reduce(self, v: Sequence) -> list:
        """Residue of v after clearing the pivot columns."""
        f = self.field
        v = list(v)
        for r, pc in zip(self.rows, self.pivots):
            c = v[pc]
            if c != f.zero:
                v = [f.sub(a, f.mul(c, b)) for a, b in zip(v, r)]
        return v

    def contains(self, v: Sequence) -> bool:
        if len(v) != self.ambient:
            raise DimensionMismatch(f"vector of length {len(v)} in F^{self.ambient}")
        z = self.field.zero
        return all(x == z for x in self.reduce(v))

    def coords(self, v: Sequence) -> tuple:
        """Coordinates of v (assumed in the subspace) in the RREF basis."""
        return tuple(v[pc] for pc in self.pivots)

    def quotient_coords(self, v: Sequence) -> tuple:
        """Coordinates of v modulo the subspace, indexed by non-pivot columns."""
        red = self.reduce(v)
        piv = set(self.pivots)
        return tuple(red[c] for c in range(self.ambient) if c not in piv)

    def complement_columns(self) -> list[int]:
        piv = set(self.pivots)
        return [c for c in range(self.ambient) if c not in piv]

    def issubset(self, other: "Subspace") -> bool:
        self._check(other)
        if self.dim > other.dim:
            return False
        return all(other.contains(r) for r in self.rows)

    __le__ = issubset

    def __lt__(self, other):
        return self.issubset(other) and self.dim < other.dim

    # algebra
    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if not other.rows:
            return self
        if not self.rows:
            return other
        return Subspace.span(self.field, self.ambient, list(self.rows) + list(other.rows))

    def annihilator(self) -> "Subspace":
        if not self.rows:
            return Subspace.full(self.field, self.ambient)
        return Subspace.span(self.field, self.ambient, self.basis.kernel_vectors())

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if self.is_full():
            return other
        if other.is_full():
            return self
        if not self.rows or not other.rows:
            return Subspace.zero(self.field, self.ambient)
        return (self.annihilator() + other.annihilator()).annihilator()

    __and__ = intersect

    def image_under(self, M: Mat) -> "Subspace":
        if M.field != self.field:
            raise FieldMismatch("map and subspace over different fields")
        if M.ncols != self.ambient:
            raise DimensionMismatch(f"{M.shape} map on F^{self.ambient}")
        return Subspace.span(self.field, M.nrows, [M.apply(r) for r in self.rows])

    def preimage_under(self, M: Mat) -> "Subspace":
        """{v : M v in self}."""
        if M.field != self.field:
            raise FieldMismatch("map and subspace over different fields")
        if M.nrows != self.ambient:
            raise DimensionMismatch(f"{M.shape} map into F^{self.ambient}")
        if self.is_full():
            return Subspace.full(self.field, M.ncols)
        ann = self.annihilator()
        return (ann.basis @ M).kernel()

    def to_json(self) -> list[list[str]]:
        f = self.field.format
        return [[f(x) for x in r] for r in self.rows]

    @classmethod
    def from_json(cls, field: Field, ambient: int, data) -> "Subspace":
        if not isinstance(data, list):
            raise MalformedInput("subspace basis must be a list of vectors")
        return cls.span(field, ambient, [[field.parse(x) if isinstance(x, str) else field.coerce(x)
                                          for x in v] for v in data])


def subspace_algebra(A: Subspace, B: Subspace | None = None, op: str = "sum", *,
                     M: Mat | None = None, v: Sequence | None = None):
    """Dispatcher for sum, intersect, preimage, image and contains."""
    if op == "sum":
        return A + B
    if op == "intersect":
        return A.intersect(B)
    if op == "preimage":
        return A.preimage_under(M)
    if op == "image":
        return A.image_under(M)
    if op == "contains":
        return A.contains(v)
    raise MalformedInput(f"unknown subspace op {op!r}")


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for t in range(k):
        num *= q ** (n - t) - 1
        den *= q ** (t + 1) - 1
    return num // den


def count_subspaces(n: int, q: int) -> int:
    return sum(gaussian_binomial(n, k, q) for k in range(n + 1))


def _check_enumerable(n: int, field: Field, max_count: int | None):
    if not field.is_finite:
        raise UnsupportedField("subspace enumeration needs a finite field")
    cap = DEFAULT_MAX_SUBSPACES if max_count is None else max_count
    total = count_subspaces(n, field.order)
    if total > cap:
        raise BoundExceeded(f"F_{field.order}^{n} has {total} subspaces (bound {cap})")


def _generate(n: int, field: Field) -> Iterator[Subspace]:
    elems = list(field.elements())
    z, o = field.zero, field.one
    for k in range(n + 1):
        for piv in itertools.combinations(range(n), k):
            pivset = set(piv)
            free = [(i, c) for i, p in enumerate(piv) for c in range(p + 1, n) if c not in pivset]
            for vals in itertools.product(elems, repeat=len(free)):
                rows = [[z] * n for _ in range(k)]
                for i, p in enumerate(piv):
                    rows[i][p] = o
                for (i, c), x in zip(free, vals):
                    rows[i][c] = x
                yield Subspace(field, n, tuple(tuple(r) for r in rows), piv)


@lru_cache(maxsize=256)
def all_subspaces(n: int, field: Field) -> tuple[Subspace, ...]:
    """Cached tuple of every subspace of F^n (no bound check)."""
    return tuple(_generate(n, field))


def enumerate_subspaces(n: int, field: Field, max_count: int | None = None) -> Iterator[Subspace]:
    """Every subspace of F^n exactly once: by dimension, then pivot set, then
    free entries, each in lexicographic order."""
    _check_enumerable(n, field, max_count)
    return iter(all_subspaces(n, field))


def subspaces_between(lower: Subspace, upper: Subspace,
                      max_count: int | None = None) -> list[Subspace]:
    """All S with lower <= S <= upper (lower is assumed inside upper)."""
    field = lower.field
    extra: list[tuple] = []
    acc = lower
    for r in upper.rows:
        if not acc.contains(r):
            extra.append(r)
            acc = acc + Subspace.span(field, lower.ambient, [r])
    c = len(extra)
    if c == 0:
        return [lower]
    _check_enumerable(c, field, max_count)
    out = []
    for T in all_subspaces(c, field):
        vecs = list(lower.rows)
        for t in T.rows:
            v = [field.zero] * lower.ambient
            for coef, e in zip(t, extra):
                if coef != field.zero:
                    v = [field.add(a, field.mul(coef, b)) for a, b in zip(v, e)]
            vecs.append(v)
        out.append(Subspace.span(field, lower.ambient, vecs))
    return out
