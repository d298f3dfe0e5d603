"""ADHM data on the plane, the two descents of blowup data to it, invariant
coordinates, and the lift d = id for equal dimensions."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import BoundExceeded, DimensionMismatch, FieldMismatch, MalformedInput, NotStable, UnsupportedField
from .exactla import Field, Mat, Subspace, field_from_json
from .quiverrep import DEFAULT_MAX_TUPLES, BlowupRep, closure_min_T, find_isomorphism
from .stability import StabilityVerdict


@dataclass(frozen=True)
class PlaneADHM:
    field: Field
    n: int
    r: int
    B1: Mat
    B2: Mat
    i: Mat
    j: Mat

    def __post_init__(self):
        shapes = {"B1": (self.n, self.n), "B2": (self.n, self.n), "i": (self.n, self.r), "j": (self.r, self.n)}
        for name, shape in shapes.items():
            m = getattr(self, name)
            if m.field != self.field:
                raise FieldMismatch(f"{name} is over {m.field!r}")
            if m.shape != shape:
                raise DimensionMismatch(f"{name} has shape {m.shape}, expected {shape}")

    @classmethod
    def build(cls, field: Field, n: int, r: int, B1=None, B2=None, i=None, j=None) -> "PlaneADHM":
        X = BlowupRep.build(field, n, n, r, B1, B2, None, i, j)
        return cls(field, n, r, X.B1, X.B2, X.i, X.j)

    def residual(self) -> Mat:
        """[B1, B2] + ij."""
        return self.B1 @ self.B2 - self.B2 @ self.B1 + self.i @ self.j

    def is_flat(self) -> bool:
        return self.residual().is_zero()

    def to_json(self) -> dict:
        return {"field": self.field.to_json(), "dims": {"v": self.n, "w": self.r},
                "B1": self.B1.to_json(), "B2": self.B2.to_json(), "i": self.i.to_json(), "j": self.j.to_json()}

    @classmethod
    def from_json(cls, data) -> "PlaneADHM":
        try:
            field = field_from_json(data["field"])
            n, r = int(data["dims"]["v"]), int(data["dims"].get("w", 0))
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInput(f"plane data JSON lacks field/dims: {exc}") from exc
        if n < 0 or r < 0:
            raise MalformedInput("dimensions must be nonnegative")
        return cls(field, n, r, Mat.from_json(field, data.get("B1", []), n, n),
                   Mat.from_json(field, data.get("B2", []), n, n),
                   Mat.from_json(field, data.get("i", []), n, r), Mat.from_json(field, data.get("j", []), r, n))


def enumerate_plane(n: int, r: int, field: Field, flat_only: bool = True,
                    max_tuples: int | None = None):
    """All plane tuples (B1, B2, i, j) over a finite field, lexicographically."""
    if not getattr(field, "is_finite", False):
        raise UnsupportedField("enumeration needs a finite field")
    e = 2 * n * n + 2 * n * r
    cap = DEFAULT_MAX_TUPLES if max_tuples is None else max_tuples
    if field.order ** e > cap:
        raise BoundExceeded(f"{field.order}^{e} tuples exceed the bound {cap}")
    sizes = [(n, n), (n, n), (n, r), (r, n)]
    for vals in itertools.product(list(field.elements()), repeat=e):
        mats = []
        pos = 0
        for a, b in sizes:
            mats.append(Mat._raw(field, tuple(tuple(vals[pos + t * b:pos + (t + 1) * b]) for t in range(a)), a, b))
            pos += a * b
        A = PlaneADHM(field, n, r, *mats)
        if not flat_only or A.is_flat():
            yield A


def _b_closure(A: PlaneADHM, start: Subspace) -> Subspace:
    T = start
    while True:
        Tn = T + T.image_under(A.B1) + T.image_under(A.B2)
        if Tn == T:
            return T
        T = Tn


def _b_interior(A: PlaneADHM, start: Subspace) -> Subspace:
    S = start
    while True:
        Sn = S.intersect(S.preimage_under(A.B1)).intersect(S.preimage_under(A.B2))
        if Sn == S:
            return S
        S = Sn


def plane_stability(A: PlaneADHM, which: str = "stable") -> StabilityVerdict:
    """stable: the B-closure of Im i is V. costable: the largest B-invariant
    subspace of Ker j is 0. The witness is that subspace when the test fails."""
    f = A.field
    if which == "stable":
        T = _b_closure(A, A.i.image() if A.r else Subspace.zero(f, A.n))
        if T.is_full():
            return StabilityVerdict("Stable", "Closure")
        return StabilityVerdict("Unstable", "Closure", witness=T)
    if which == "costable":
        S = _b_interior(A, A.j.kernel() if A.r else Subspace.full(f, A.n))
        if S.is_zero():
            return StabilityVerdict("Stable", "Closure")
        return StabilityVerdict("Unstable", "Closure", witness=S)
    raise MalformedInput(f"unknown plane stability {which!r}")


def to_plane(X: BlowupRep, side: str = "right") -> PlaneADHM:
    """left: (dB1, dB2, di, j) on V1; right: (B1 d, B2 d, i, jd) on V0."""
    if side == "left":
        return PlaneADHM(X.field, X.n1, X.r, X.d @ X.B1, X.d @ X.B2, X.d @ X.i, X.j)
    if side == "right":
        return PlaneADHM(X.field, X.n0, X.r, X.B1 @ X.d, X.B2 @ X.d, X.i, X.j @ X.d)
    raise MalformedInput(f"side must be left or right, not {side!r}")


def words(max_len: int, min_len: int = 1):
    """Words in {1, 2} by length, then lexicographically."""
    for k in range(min_len, max_len + 1):
        yield from itertools.product((1, 2), repeat=k)


def invariant_coords(A, max_len: int, side: str = "right") -> list:
    """tr(w) for words 1 <= |w| <= max_len, then the entries of j w i for
    0 <= |w| <= max_len (row-major). A blowup datum is first sent to the
    plane along ``side``."""
    if max_len < 1:
        raise MalformedInput("word length bound must be >= 1")
    if isinstance(A, BlowupRep):
        A = to_plane(A, side)
    f = A.field
    mats = {1: A.B1, 2: A.B2}
    out = []
    for w in words(max_len):
        M = Mat.identity(f, A.n)
        for a in w:
            M = M @ mats[a]
        out.append(M.trace())
    for w in words(max_len, 0):
        M = Mat.identity(f, A.n)
        for a in w:
            M = M @ mats[a]
        out.extend(x for row in (A.j @ M @ A.i).rows for x in row)
    return out


def _lift(A: PlaneADHM) -> BlowupRep:
    f = A.field
    return BlowupRep(f, A.n, A.n, A.r, A.B1, A.B2, Mat.identity(f, A.n), A.i, A.j)


def zero_chamber_stable(X: BlowupRep) -> bool:
    """Stability for zeta0 < 0, zeta1 < 0: the least pair containing Im i is
    everything. Without framing only the zero datum qualifies."""
    if X.r == 0:
        return X.n0 == 0 and X.n1 == 0
    P = closure_min_T(X)
    return P.S0.is_full() and P.S1.is_full()


def c1zero_lift(A: PlaneADHM) -> BlowupRep:
    """(B1, B2, id, i, j) on V0 = V1 = V."""
    if not A.is_flat():
        raise NotStable("plane data are not flat")
    if plane_stability(A).status != "Stable":
        raise NotStable("plane data are not stable")
    return _lift(A)


def plane_isomorphism(A: PlaneADHM, A2: PlaneADHM) -> Mat | None:
    """g in GL(V) with g B g^-1 = B', g i = i', j g^-1 = j', or None."""
    if (A.n, A.r, A.field) != (A2.n, A2.r, A2.field):
        return None
    iso = find_isomorphism(_lift(A), _lift(A2))
    return None if iso is None else iso[0]


def c1zero_roundtrip(A: PlaneADHM) -> bool:
    X = c1zero_lift(A)
    if not zero_chamber_stable(X) or to_plane(X, "left") != A:
        return False
    return plane_isomorphism(to_plane(X, "right"), A) is not None


def d_surjectivity_check(X: BlowupRep) -> bool:
    return X.d.rank() == X.n1
