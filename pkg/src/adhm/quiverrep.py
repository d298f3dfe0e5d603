"""Representations (B1, B2, d, i, j) of the blown-up-plane quiver.

Shapes: B1, B2 : V1 -> V0 (n0 x n1), d : V0 -> V1 (n1 x n0),
i : W -> V0 (n0 x r), j : V1 -> W (r x n1).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field, replace
from typing import Iterator, Sequence

from .errors import (BoundExceeded, DimensionMismatch, FieldMismatch, InvalidPair, MalformedInput,
                     NoFraming, UnsupportedField)
from .exactla import Field, Mat, Subspace, all_subspaces, count_subspaces, field_from_json
from .exactla.subspace import DEFAULT_MAX_SUBSPACES, subspaces_between

# Default cap on q^(number of matrix entries) for exhaustive enumeration.
DEFAULT_MAX_TUPLES = 1 << 24

MAP_NAMES = ("B1", "B2", "d", "i", "j")


def _as_mat(field: Field, m, nrows: int, ncols: int) -> Mat:
    if m is None:
        return Mat.zeros(field, nrows, ncols)
    if isinstance(m, Mat):
        if m.field != field:
            raise FieldMismatch(f"matrix over {m.field!r}, expected {field!r}")
        return m
    if nrows == 0 or ncols == 0:
        return Mat.zeros(field, nrows, ncols)
    return Mat(field, m, nrows, ncols)


@dataclass(frozen=True)
class BlowupRep:
    field: Field
    n0: int
    n1: int
    r: int
    B1: Mat
    B2: Mat
    d: Mat
    i: Mat
    j: Mat

    def __post_init__(self):
        shapes = {
            "B1": (self.n0, self.n1), "B2": (self.n0, self.n1), "d": (self.n1, self.n0),
            "i": (self.n0, self.r), "j": (self.r, self.n1),
        }
        for name, shape in shapes.items():
            m = getattr(self, name)
            if not isinstance(m, Mat):
                raise MalformedInput(f"{name} must be a Mat")
            if m.field != self.field:
                raise FieldMismatch(f"{name} is over {m.field!r}, expected {self.field!r}")
            if m.shape != shape:
                raise DimensionMismatch(f"{name} has shape {m.shape}, expected {shape}")

    @classmethod
    def build(cls, field: Field, n0: int, n1: int, r: int = 0, B1=None, B2=None, d=None,
              i=None, j=None) -> "BlowupRep":
        """Construct from nested lists (or Mats); omitted maps are zero."""
        return cls(field, n0, n1, r, _as_mat(field, B1, n0, n1), _as_mat(field, B2, n0, n1),
                   _as_mat(field, d, n1, n0), _as_mat(field, i, n0, r), _as_mat(field, j, r, n1))

    @classmethod
    def zero(cls, field: Field, n0: int, n1: int, r: int = 0) -> "BlowupRep":
        return cls.build(field, n0, n1, r)

    @property
    def dims(self) -> tuple[int, int, int]:
        return (self.n0, self.n1, self.r)

    def maps(self) -> tuple[Mat, Mat, Mat, Mat, Mat]:
        return (self.B1, self.B2, self.d, self.i, self.j)

    def with_maps(self, **kw) -> "BlowupRep":
        return replace(self, **kw)

    def is_zero(self) -> bool:
        return self.n0 == 0 and self.n1 == 0

    def is_flat(self) -> bool:
        return mu_residual(self).is_zero()

    def map_field(self, big: Field) -> "BlowupRep":
        return BlowupRep(big, self.n0, self.n1, self.r, *(m.map_field(big) for m in self.maps()))

    def conjugate(self, g0: Mat, g1: Mat, gw: Mat | None = None) -> "BlowupRep":
        """Image under (g0, g1, gw) in GL(V0) x GL(V1) x GL(W)."""
        gw = gw if gw is not None else Mat.identity(self.field, self.r)
        h0, h1, hw = g0.inverse(), g1.inverse(), gw.inverse()
        return BlowupRep(self.field, self.n0, self.n1, self.r, g0 @ self.B1 @ h1, g0 @ self.B2 @ h1,
                         g1 @ self.d @ h0, g0 @ self.i @ hw, gw @ self.j @ h1)

    def to_json(self) -> dict:
        out = {"field": self.field.to_json(), "dims": {"v0": self.n0, "v1": self.n1, "w": self.r}}
        for name in MAP_NAMES:
            out[name] = getattr(self, name).to_json()
        return out

    @classmethod
    def from_json(cls, data) -> "BlowupRep":
        if not isinstance(data, dict):
            raise MalformedInput("representation JSON must be an object")
        try:
            field = field_from_json(data["field"])
            dims = data["dims"]
            n0, n1, r = int(dims["v0"]), int(dims["v1"]), int(dims.get("w", 0))
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInput(f"representation JSON lacks field/dims: {exc}") from exc
        if min(n0, n1, r) < 0:
            raise MalformedInput("dimensions must be nonnegative")
        shapes = {"B1": (n0, n1), "B2": (n0, n1), "d": (n1, n0), "i": (n0, r), "j": (r, n1)}
        mats = {}
        for name, (a, b) in shapes.items():
            mats[name] = Mat.from_json(field, data.get(name, []), a, b)
        return cls(field, n0, n1, r, **mats)


def mu_residual(X: BlowupRep) -> Mat:
    """B1 d B2 - B2 d B1 + i j, a map V1 -> V0."""
    return X.B1 @ X.d @ X.B2 - X.B2 @ X.d @ X.B1 + X.i @ X.j


def is_flat(X: BlowupRep) -> bool:
    return mu_residual(X).is_zero()


def direct_sum(X: BlowupRep, Y: BlowupRep, shared_framing: bool = False) -> BlowupRep:
    """Block sum; with shared_framing the two framings are identified (equal r)."""
    if X.field != Y.field:
        raise FieldMismatch("direct sum over different fields")
    f = X.field
    bd = lambda a, b: Mat.block_diag(f, a, b)
    B1, B2, d = bd(X.B1, Y.B1), bd(X.B2, Y.B2), bd(X.d, Y.d)
    if shared_framing:
        if X.r != Y.r:
            raise DimensionMismatch("shared framing needs equal r")
        i = Mat.vstack(X.i, Y.i)
        j = Mat.hstack(X.j, Y.j)
        r = X.r
    else:
        i, j, r = bd(X.i, Y.i), bd(X.j, Y.j), X.r + Y.r
    return BlowupRep(f, X.n0 + Y.n0, X.n1 + Y.n1, r, B1, B2, d, i, j)


# --- homomorphisms ----------------------------------------------------------

@dataclass(frozen=True)
class HomBasis:
    basis: tuple          # of (xi0, xi1, bww) triples
    source: BlowupRep
    target: BlowupRep
    frame_mode: str = "free"
    basepoint: tuple | None = None   # only for framedIdentity

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def is_empty(self) -> bool:
        return self.frame_mode == "framedIdentity" and self.basepoint is None


def _hom_system(X: BlowupRep, Y: BlowupRep, frame_mode: str):
    """Coefficient rows (and right-hand sides) of the commuting relations.

    Unknown layout: xi0 (n0' x n0), xi1 (n1' x n1), then bww (r' x r) when free.
    """
    f = X.field
    zero, neg = f.zero, f.neg
    n0, n1, r = X.dims
    m0, m1, s = Y.dims
    o0 = 0
    o1 = m0 * n0
    ow = o1 + m1 * n1
    nunk = ow + (s * r if frame_mode == "free" else 0)
    x0 = lambda a, c: o0 + a * n0 + c
    x1 = lambda a, c: o1 + a * n1 + c
    xw = lambda a, c: ow + a * r + c
    rows: list[list] = []
    rhs: list = []

    def new_row():
        rows.append([zero] * nunk)
        rhs.append(zero)
        return rows[-1]

    for B, Bp in ((X.B1, Y.B1), (X.B2, Y.B2)):
        Br, Bpr = B.rows, Bp.rows
        for a in range(m0):
            for b in range(n1):
                row = new_row()
                for c in range(n0):
                    row[x0(a, c)] = Br[c][b]
                for c in range(m1):
                    row[x1(c, b)] = neg(Bpr[a][c])
    dr, dpr = X.d.rows, Y.d.rows
    for a in range(m1):
        for b in range(n0):
            row = new_row()
            for c in range(n1):
                row[x1(a, c)] = dr[c][b]
            for c in range(m0):
                row[x0(c, b)] = neg(dpr[a][c])
    ir, ipr, jr, jpr = X.i.rows, Y.i.rows, X.j.rows, Y.j.rows
    if frame_mode == "free":
        for a in range(m0):
            for b in range(r):
                row = new_row()
                for c in range(n0):
                    row[x0(a, c)] = ir[c][b]
                for c in range(s):
                    row[xw(c, b)] = neg(ipr[a][c])
        for a in range(s):
            for b in range(n1):
                row = new_row()
                for c in range(r):
                    row[xw(a, c)] = jr[c][b]
                for c in range(m1):
                    row[x1(c, b)] = neg(jpr[a][c])
    else:
        # bww = identity: xi0 i = i' and j' xi1 = j
        for a in range(m0):
            for b in range(r):
                row = new_row()
                for c in range(n0):
                    row[x0(a, c)] = ir[c][b]
                rhs[-1] = ipr[a][b]
        for a in range(s):
            for b in range(n1):
                row = new_row()
                for c in range(m1):
                    row[x1(c, b)] = jpr[a][c]
                rhs[-1] = jr[a][b]
    return rows, rhs, nunk, (o1, ow)


def _unpack(X: BlowupRep, Y: BlowupRep, vec: Sequence, frame_mode: str) -> tuple[Mat, Mat, Mat]:
    f = X.field
    n0, n1, r = X.dims
    m0, m1, s = Y.dims
    o1 = m0 * n0
    ow = o1 + m1 * n1
    xi0 = Mat._raw(f, tuple(tuple(vec[a * n0:(a + 1) * n0]) for a in range(m0)), m0, n0)
    xi1 = Mat._raw(f, tuple(tuple(vec[o1 + a * n1:o1 + (a + 1) * n1]) for a in range(m1)), m1, n1)
    if frame_mode == "free":
        bw = Mat._raw(f, tuple(tuple(vec[ow + a * r:ow + (a + 1) * r]) for a in range(s)), s, r)
    else:
        bw = Mat.zeros(f, s, r)
    return xi0, xi1, bw


def hom_space(X: BlowupRep, Y: BlowupRep, frame_mode: str = "free") -> HomBasis:
    """Solutions (xi0, xi1, bww) of xi0 B = B' xi1, xi1 d = d' xi0, xi0 i = i' bww,
    bww j = j' xi1.

    ``framedIdentity`` fixes bww to the identity (r(X) = r(Y) required) and
    returns a basepoint (or None when inconsistent) plus the homogeneous
    solutions with bww = 0.
    """
    if X.field != Y.field:
        raise FieldMismatch("hom space over different fields")
    if frame_mode not in ("free", "framedIdentity"):
        raise MalformedInput(f"unknown frame mode {frame_mode!r}")
    if frame_mode == "framedIdentity" and X.r != Y.r:
        raise DimensionMismatch("framedIdentity needs equal framing ranks")
    f = X.field
    rows, rhs, nunk, _ = _hom_system(X, Y, frame_mode)
    if nunk == 0:
        kernel: list = []
        base = () if frame_mode == "framedIdentity" and all(v == f.zero for v in rhs) else None
    else:
        A = Mat._raw(f, tuple(tuple(r) for r in rows), len(rows), nunk) if rows else Mat.zeros(f, 0, nunk)
        if frame_mode == "free":
            kernel = A.kernel_vectors()
            base = None
        else:
            from .exactla import solve_affine
            base, kernel = solve_affine(A, rhs)
    basis = tuple(_unpack(X, Y, v, frame_mode) for v in kernel)
    basepoint = None
    if frame_mode == "framedIdentity" and base is not None:
        xi0, xi1, _ = _unpack(X, Y, base if base else [f.zero] * nunk, frame_mode)
        basepoint = (xi0, xi1, Mat.identity(f, X.r))
    return HomBasis(basis, X, Y, frame_mode, basepoint)


def hom_dim(X: BlowupRep, Y: BlowupRep) -> int:
    """dim Hom(X, Y) with a free framing map."""
    rows, _, nunk, _ = _hom_system(X, Y, "free")
    if nunk == 0:
        return 0
    if not rows:
        return nunk
    return nunk - Mat._raw(X.field, tuple(tuple(r) for r in rows), len(rows), nunk).rank()


def is_morphism(X: BlowupRep, Y: BlowupRep, xi0: Mat, xi1: Mat, bww: Mat) -> bool:
    return (xi0 @ X.B1 == Y.B1 @ xi1 and xi0 @ X.B2 == Y.B2 @ xi1 and xi1 @ X.d == Y.d @ xi0
            and xi0 @ X.i == Y.i @ bww and bww @ X.j == Y.j @ xi1)


def _affine_candidates(field: Field, base: list[Mat] | None, basis: list[list[Mat]],
                       max_enum: int = 1 << 16, tries: int = 40):
    """Points of base + span(basis): exhaustive when small, else pseudo-random."""
    k = len(basis)
    f = field
    zero = [Mat.zeros(f, m.nrows, m.ncols) for m in (base or basis[0])] if (base or basis) else []
    start = base if base is not None else zero
    if field.is_finite and field.order ** k <= max_enum:
        combos = itertools.product(list(field.elements()), repeat=k)
    else:
        import random
        rng = random.Random(12345)
        if field.is_finite:
            draw = lambda: f.coerce(rng.randrange(field.order))
        else:
            draw = lambda: f.from_int(rng.randint(-7, 7))
        first = [tuple([f.zero] * k)] + [tuple(f.one if t == s else f.zero for t in range(k)) for s in range(k)]
        combos = itertools.chain(first, (tuple(draw() for _ in range(k)) for _ in range(tries)))
    for coeffs in combos:
        parts = list(start)
        for c, vec in zip(coeffs, basis):
            if c != f.zero:
                parts = [p + m.scale(c) for p, m in zip(parts, vec)]
        yield parts


def find_isomorphism(X: BlowupRep, Y: BlowupRep) -> tuple[Mat, Mat, Mat] | None:
    """An isomorphism X -> Y with identity on W, or None.

    Exhaustive over finite fields when the solution space is small; over
    the rationals a failure to find one is only probabilistic evidence.
    """
    if X.dims != Y.dims or X.field != Y.field:
        return None
    if X.r > 0:
        H = hom_space(X, Y, "framedIdentity")
        if H.basepoint is None:
            return None
        base = list(H.basepoint)
    else:
        H = hom_space(X, Y, "free")
        base = None
    basis = [list(t) for t in H.basis]
    if base is None and not basis:
        return (Mat.zeros(X.field, 0, 0), Mat.zeros(X.field, 0, 0), Mat.zeros(X.field, 0, 0)) \
            if X.is_zero() else None
    for xi0, xi1, bw in _affine_candidates(X.field, base, basis):
        if xi0.is_invertible() and xi1.is_invertible():
            if X.r == 0:
                bw = Mat.zeros(X.field, 0, 0)
            return xi0, xi1, bw
    return None


def are_isomorphic(X: BlowupRep, Y: BlowupRep) -> bool:
    return find_isomorphism(X, Y) is not None


# --- subrepresentation pairs -------------------------------------------------

@dataclass(frozen=True)
class SubrepPair:
    """(S0, S1) stable under B1, B2, d, with S1 in Ker j (s_inf=0) or
    Im i in S0 (s_inf=1)."""

    S0: Subspace
    S1: Subspace
    s_inf: int = 0

    @property
    def dims(self) -> tuple[int, int]:
        return (self.S0.dim, self.S1.dim)

    @property
    def total(self) -> int:
        return self.S0.dim + self.S1.dim + self.s_inf

    def is_zero(self) -> bool:
        return self.S0.is_zero() and self.S1.is_zero() and self.s_inf == 0

    def is_full_in(self, X: BlowupRep) -> bool:
        return self.S0.is_full() and self.S1.is_full() and (self.s_inf == 1 or X.r == 0)

    def contains(self, other: "SubrepPair") -> bool:
        return (other.s_inf <= self.s_inf and other.S0.issubset(self.S0)
                and other.S1.issubset(self.S1))

    def to_json(self) -> dict:
        return {"S0": self.S0.to_json(), "S1": self.S1.to_json(), "sInf": self.s_inf,
                "dims": [self.S0.dim, self.S1.dim]}


def pair_violation(X: BlowupRep, S0: Subspace, S1: Subspace, s_inf: int) -> str | None:
    """Why (S0, S1, s_inf) is not a valid pair for X, or None."""
    if S0.ambient != X.n0 or S1.ambient != X.n1:
        return "ambient dimensions do not match"
    if s_inf not in (0, 1):
        return "sInf must be 0 or 1"
    for name, B in (("B1", X.B1), ("B2", X.B2)):
        if not all(S0.contains(B.apply(v)) for v in S1.rows):
            return f"{name}(S1) not inside S0"
    if not all(S1.contains(X.d.apply(v)) for v in S0.rows):
        return "d(S0) not inside S1"
    if s_inf == 0:
        if X.r and not all(x == X.field.zero for v in S1.rows for x in X.j.apply(v)):
            return "S1 not inside Ker j"
    else:
        if not all(S0.contains(c) for c in X.i.columns()):
            return "Im i not inside S0"
    return None


def make_pair(X: BlowupRep, S0: Subspace, S1: Subspace, s_inf: int = 0) -> SubrepPair:
    why = pair_violation(X, S0, S1, s_inf)
    if why:
        raise InvalidPair(why)
    return SubrepPair(S0, S1, s_inf)


def zero_pair(X: BlowupRep) -> SubrepPair:
    return SubrepPair(Subspace.zero(X.field, X.n0), Subspace.zero(X.field, X.n1), 0)


def full_pair(X: BlowupRep) -> SubrepPair:
    return SubrepPair(Subspace.full(X.field, X.n0), Subspace.full(X.field, X.n1), 1 if X.r else 0)


def image_i(X: BlowupRep) -> Subspace:
    return Subspace.span(X.field, X.n0, X.i.columns())


def kernel_j(X: BlowupRep) -> Subspace:
    if X.r == 0:
        return Subspace.full(X.field, X.n1)
    return X.j.kernel()


def closure_min_T(X: BlowupRep) -> SubrepPair:
    """Least pair containing Im i (s_inf = 1)."""
    if X.r == 0:
        raise NoFraming("closure from Im i needs r >= 1")
    T0 = image_i(X)
    T1 = Subspace.zero(X.field, X.n1)
    while True:
        T1n = T1 + T0.image_under(X.d)
        T0n = T0 + T1n.image_under(X.B1) + T1n.image_under(X.B2)
        if T0n == T0 and T1n == T1:
            return SubrepPair(T0, T1, 1)
        T0, T1 = T0n, T1n


def closure_max_S(X: BlowupRep) -> SubrepPair:
    """Greatest pair with S1 inside Ker j (s_inf = 0)."""
    S0 = Subspace.full(X.field, X.n0)
    S1 = kernel_j(X)
    while True:
        S0n = S0.intersect(S1.preimage_under(X.d))
        S1n = S1.intersect(S0n.preimage_under(X.B1)).intersect(S0n.preimage_under(X.B2))
        if S0n == S0 and S1n == S1:
            return SubrepPair(S0, S1, 0)
        S0, S1 = S0n, S1n


def _check_pair_bounds(X: BlowupRep, max_subspaces: int | None):
    if not X.field.is_finite:
        raise UnsupportedField("exhaustive pair enumeration needs a finite field")
    cap = DEFAULT_MAX_SUBSPACES if max_subspaces is None else max_subspaces
    q = X.field.order
    for n in (X.n0, X.n1):
        if count_subspaces(n, q) > cap:
            raise BoundExceeded(f"F_{q}^{n} has {count_subspaces(n, q)} subspaces (bound {cap})")


def subrep_pairs(X: BlowupRep, s_inf: int, max_subspaces: int | None = None) -> Iterator[SubrepPair]:
    """Every valid pair with the given s_inf, ordered by S1 then S0."""
    _check_pair_bounds(X, max_subspaces)
    f = X.field
    zero0 = Subspace.zero(f, X.n0)
    zero1 = Subspace.zero(f, X.n1)
    if s_inf == 0:
        s1_choices = subspaces_between(zero1, kernel_j(X), max_subspaces)
        base0 = zero0
    else:
        s1_choices = list(all_subspaces(X.n1, f))
        base0 = image_i(X)
    for S1 in s1_choices:
        L0 = base0 + S1.image_under(X.B1) + S1.image_under(X.B2)
        U0 = S1.preimage_under(X.d)
        if not L0.issubset(U0):
            continue
        for S0 in subspaces_between(L0, U0, max_subspaces):
            yield SubrepPair(S0, S1, s_inf)


def all_pairs(X: BlowupRep, max_subspaces: int | None = None) -> list[SubrepPair]:
    """All subrepresentations of the three-vertex quiver attached to X."""
    out = list(subrep_pairs(X, 0, max_subspaces))
    if X.r:
        out += list(subrep_pairs(X, 1, max_subspaces))
    return out


# --- enumeration --------------------------------------------------------------

def entry_count(n0: int, n1: int, r: int) -> int:
    return 3 * n0 * n1 + r * (n0 + n1)


def enumerate_reps(dims: Sequence[int], field: Field, flat_only: bool = False,
                   max_tuples: int | None = None,
                   shard: tuple[int, int] | None = None) -> Iterator[BlowupRep]:
    """All tuples of the given dimensions, in lexicographic entry order.

    ``shard=(k, s)`` keeps only the tuples whose index is k modulo s.
    """
    if not field.is_finite:
        raise UnsupportedField("enumeration needs a finite field")
    n0, n1 = dims[0], dims[1]
    r = dims[2] if len(dims) > 2 else 0
    cap = DEFAULT_MAX_TUPLES if max_tuples is None else max_tuples
    e = entry_count(n0, n1, r)
    if field.order ** e > cap:
        raise BoundExceeded(f"{field.order}^{e} tuples exceed the bound {cap}")
    sizes = [(n0, n1), (n0, n1), (n1, n0), (n0, r), (r, n1)]
    elems = list(field.elements())
    for idx, vals in enumerate(itertools.product(elems, repeat=e)):
        if shard is not None and idx % shard[1] != shard[0]:
            continue
        mats = []
        pos = 0
        for a, b in sizes:
            rows = tuple(tuple(vals[pos + t * b:pos + (t + 1) * b]) for t in range(a))
            pos += a * b
            mats.append(Mat._raw(field, rows, a, b))
        X = BlowupRep(field, n0, n1, r, *mats)
        if flat_only and not mu_residual(X).is_zero():
            continue
        yield X


# --- sub and quotient -----------------------------------------------------------

def _restrict(M: Mat, src: Subspace, dst: Subspace) -> Mat:
    """Matrix of M : src -> dst in the RREF bases (M(src) inside dst assumed)."""
    cols = [dst.coords(M.apply(v)) for v in src.rows]
    return Mat.from_columns(M.field, cols, dst.dim) if cols else Mat.zeros(M.field, dst.dim, 0)


def _induce(M: Mat, src: Subspace, dst: Subspace) -> Mat:
    """Matrix of the induced map F^a/src -> F^b/dst in complement coordinates."""
    f = M.field
    cols = []
    for c in src.complement_columns():
        e = [f.zero] * src.ambient
        e[c] = f.one
        cols.append(dst.quotient_coords(M.apply(e)))
    nrows = dst.codim
    return Mat.from_columns(f, cols, nrows) if cols else Mat.zeros(f, nrows, 0)


def sub_quotient(X: BlowupRep, P: SubrepPair) -> tuple[BlowupRep, BlowupRep]:
    why = pair_violation(X, P.S0, P.S1, P.s_inf)
    if why:
        raise InvalidPair(why)
    f = X.field
    S0, S1 = P.S0, P.S1
    W = Subspace.full(f, X.r)
    Wz = Subspace.zero(f, X.r)
    sub_r = X.r if P.s_inf == 1 else 0
    quot_r = X.r if P.s_inf == 0 else 0
    sub = BlowupRep(
        f, S0.dim, S1.dim, sub_r, _restrict(X.B1, S1, S0), _restrict(X.B2, S1, S0),
        _restrict(X.d, S0, S1),
        _restrict(X.i, W, S0) if sub_r else Mat.zeros(f, S0.dim, 0),
        _restrict(X.j, S1, W) if sub_r else Mat.zeros(f, 0, S1.dim))
    quot = BlowupRep(
        f, S0.codim, S1.codim, quot_r, _induce(X.B1, S1, S0), _induce(X.B2, S1, S0),
        _induce(X.d, S0, S1),
        _induce(X.i, Wz, S0) if quot_r else Mat.zeros(f, S0.codim, 0),
        _induce(X.j, S1, Wz) if quot_r else Mat.zeros(f, 0, S1.codim))
    return sub, quot


def subquotient(X: BlowupRep, lower: SubrepPair, upper: SubrepPair) -> BlowupRep:
    """The representation upper/lower (lower inside upper)."""
    sub, _ = sub_quotient(X, upper)
    f = X.field
    L0 = Subspace.span(f, upper.S0.dim, [upper.S0.coords(v) for v in lower.S0.rows])
    L1 = Subspace.span(f, upper.S1.dim, [upper.S1.coords(v) for v in lower.S1.rows])
    s_inf = lower.s_inf if upper.s_inf else 0
    return sub_quotient(sub, SubrepPair(L0, L1, s_inf))[1]


# --- distinguished data -----------------------------------------------------

def cm_data(m: int, field: Field) -> BlowupRep:
    """The W = 0 datum of dims (m, m+1): B1 = [1 0], B2 = [0 1], d = 0."""
    if m < 0:
        raise MalformedInput("m must be nonnegative")
    o, z = field.one, field.zero
    B1 = tuple(tuple(o if b == a else z for b in range(m + 1)) for a in range(m))
    B2 = tuple(tuple(o if b == a + 1 else z for b in range(m + 1)) for a in range(m))
    return BlowupRep(field, m, m + 1, 0, Mat._raw(field, B1, m, m + 1), Mat._raw(field, B2, m, m + 1),
                     Mat.zeros(field, m + 1, m), Mat.zeros(field, m, 0), Mat.zeros(field, 0, m + 1))


@dataclass(frozen=True)
class NewQuiverRep:
    """X viewed on the three-vertex quiver, with V_inf of dimension 0 or 1."""

    rep: BlowupRep
    dim_inf: int

    def __post_init__(self):
        if self.dim_inf not in (0, 1):
            raise MalformedInput("dim_inf must be 0 or 1")
        if self.dim_inf == 0 and self.rep.r != 0:
            raise MalformedInput("a representation with V_inf = 0 carries no framing arrows")

    @classmethod
    def of(cls, X: BlowupRep) -> "NewQuiverRep":
        return cls(X, 1 if X.r else 0)

    @property
    def dims(self) -> tuple[int, int, int]:
        return (self.rep.n0, self.rep.n1, self.dim_inf)

    @property
    def total(self) -> int:
        return self.rep.n0 + self.rep.n1 + self.dim_inf


def tangent_maps(X: BlowupRep) -> tuple[Mat, Mat]:
    """Matrices of the infinitesimal action iota and of the derivative of mu.

    iota(xi0, xi1) = (d xi0 - xi1 d, B1 xi1 - xi0 B1, B2 xi1 - xi0 B2, xi0 i, -j xi1)
    on gl(V0) + gl(V1); dmu is evaluated on (d~, B1~, B2~, i~, j~).
    """
    f = X.field
    n0, n1, r = X.dims
    B1, B2, d, i, j = X.maps()

    def units(a, b):
        for s in range(a):
            for t in range(b):
                rows = [[f.zero] * b for _ in range(a)]
                rows[s][t] = f.one
                yield Mat(f, rows, a, b) if a and b else Mat.zeros(f, a, b)

    def flat(*ms: Mat) -> list:
        return [x for m in ms for x in m.entries]

    cols = []
    for e in units(n0, n0):
        cols.append(flat(d @ e, -(e @ B1), -(e @ B2), e @ i, Mat.zeros(f, r, n1)))
    for e in units(n1, n1):
        cols.append(flat(-(e @ d), B1 @ e, B2 @ e, Mat.zeros(f, n0, r), -(j @ e)))
    mid = n1 * n0 + 2 * n0 * n1 + n0 * r + r * n1
    iota = Mat.from_columns(f, cols, mid) if cols else Mat.zeros(f, mid, 0)

    dcols = []
    for e in units(n1, n0):        # d~
        dcols.append((B1 @ e @ B2 - B2 @ e @ B1).entries)
    for e in units(n0, n1):        # B1~
        dcols.append((e @ d @ B2 - B2 @ d @ e).entries)
    for e in units(n0, n1):        # B2~
        dcols.append((B1 @ d @ e - e @ d @ B1).entries)
    for e in units(n0, r):         # i~
        dcols.append((e @ j).entries)
    for e in units(r, n1):         # j~
        dcols.append((i @ e).entries)
    dmu = Mat.from_columns(f, dcols, n0 * n1) if dcols else Mat.zeros(f, n0 * n1, 0)
    return iota, dmu


def tangent_dimensions(X: BlowupRep) -> dict:
    """Ranks of the two maps and the middle cohomology dimension."""
    iota, dmu = tangent_maps(X)
    ri, rd = iota.rank(), dmu.rank()
    return {
        "iota_injective": ri == iota.ncols,
        "dmu_surjective": rd == dmu.nrows,
        "middle": dmu.ncols - rd - ri,
        "expected": X.r * (X.n0 + X.n1) - (X.n0 - X.n1) ** 2,
    }
