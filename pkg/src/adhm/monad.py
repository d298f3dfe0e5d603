"""The three-term monad of a representation, evaluated at points of the
blown-up plane {([z0:z1:z2], [z:w]) : z1 w = z2 z} over finite fields.

Line-bundle fibres are trivialized by normalizing each projective factor so
that its first nonzero coordinate is 1; alpha and beta are then ordinary
matrices. alpha has rows C^2 x V0 + C^2 x V1 + W and columns V0 + V1; beta
has rows V0 + V1 and the same middle columns.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import kernels
from .errors import BoundExceeded, FieldMismatch, InvalidPoint, MalformedInput, NotS2, UnsupportedField
from .exactla import GF, Field, FiniteField, Mat, embed_values
from .quiverrep import BlowupRep, cm_data, hom_dim

DEFAULT_MAX_POINTS = 1 << 16
COORDS = ("z0", "z1", "z2", "z", "w")


def _normalize(field: Field, vec) -> tuple:
    for x in vec:
        if x != field.zero:
            c = field.inv(x)
            return tuple(field.mul(c, y) for y in vec)
    raise InvalidPoint("projective coordinates are all zero")


@dataclass(frozen=True)
class SurfacePoint:
    field: Field
    p2: tuple
    p1: tuple

    @classmethod
    def make(cls, field: Field, p2, p1) -> "SurfacePoint":
        if len(p2) != 3 or len(p1) != 2:
            raise MalformedInput("a point is ([z0, z1, z2], [z, w])")
        p2 = _normalize(field, [field.coerce(x) for x in p2])
        p1 = _normalize(field, [field.coerce(x) for x in p1])
        if field.mul(p2[1], p1[1]) != field.mul(p2[2], p1[0]):
            raise InvalidPoint("point violates z1 w = z2 z")
        return cls(field, p2, p1)

    @property
    def coords(self) -> tuple:
        """(z0, z1, z2, z, w) in normalized form."""
        return self.p2 + self.p1

    @property
    def on_exceptional(self) -> bool:
        z = self.field.zero
        return self.p2[0] != z and self.p2[1] == z and self.p2[2] == z

    @property
    def at_infinity(self) -> bool:
        return self.p2[0] == self.field.zero

    def to_json(self) -> dict:
        fmt = self.field.format
        return {"p2": [fmt(x) for x in self.p2], "p1": [fmt(x) for x in self.p1]}

    @classmethod
    def from_json(cls, field: Field, data) -> "SurfacePoint":
        try:
            return cls.make(field, data["p2"], data["p1"])
        except (KeyError, TypeError) as exc:
            raise MalformedInput(f"bad point {data!r}") from exc


def extension(field: FiniteField, degree: int) -> FiniteField:
    if degree < 1:
        raise MalformedInput("extension degree must be >= 1")
    return GF(field.p, field.k * degree)


def _projective_line(field: FiniteField):
    elems = list(field.elements())
    return [(field.one, x) for x in elems] + [(field.zero, field.one)]


def enumerate_points(field: FiniteField, ext_degree: int = 1,
                     max_points: int | None = None) -> list[SurfacePoint]:
    """All points over the degree-``ext_degree`` extension: the chart z0 = 1
    (the exceptional curve sits over z1 = z2 = 0) and then the line z0 = 0."""
    if not getattr(field, "is_finite", False):
        raise UnsupportedField("points are enumerated over finite fields only")
    if ext_degree < 1:
        raise MalformedInput("extension degree must be >= 1")
    q = field.q ** ext_degree
    cap = DEFAULT_MAX_POINTS if max_points is None else max_points
    if q * q + 2 * q + 1 > cap:
        raise BoundExceeded(f"{q * q + 2 * q + 1} points exceed the bound {cap}")
    return list(_points(extension(field, ext_degree)))


@lru_cache(maxsize=32)
def _points(F: FiniteField) -> tuple[SurfacePoint, ...]:
    o, z = F.one, F.zero
    out = []
    for z1, z2 in itertools.product(F.elements(), repeat=2):
        if z1 == z and z2 == z:
            out.extend(SurfacePoint(F, (o, z, z), p1) for p1 in _projective_line(F))
        else:
            out.append(SurfacePoint(F, (o, z1, z2), _normalize(F, (z1, z2))))
    for p1 in _projective_line(F):
        out.append(SurfacePoint(F, (z,) + p1, p1))
    return tuple(out)


# --- the matrices -------------------------------------------------------------------

def monad_coefficients(X: BlowupRep) -> tuple[dict, dict]:
    """Constant matrices A_t, B_t with alpha = sum_t t A_t, beta = sum_t t B_t
    over t in (z0, z1, z2, z, w)."""
    f = X.field
    n0, n1, r = X.dims
    mid = 2 * n0 + 2 * n1 + r
    I0, I1 = Mat.identity(f, n0), Mat.identity(f, n1)

    def place(nrows, ncols, blocks):
        rows = [[f.zero] * ncols for _ in range(nrows)]
        for (ro, co), M in blocks:
            for a in range(M.nrows):
                for b in range(M.ncols):
                    rows[ro + a][co + b] = M[a, b]
        return Mat._raw(f, tuple(tuple(x) for x in rows), nrows, ncols)

    # middle offsets: V0, V0, V1, V1, W
    m0, m1, m2, m3, m4 = 0, n0, 2 * n0, 2 * n0 + n1, 2 * n0 + 2 * n1
    dB1, dB2 = X.d @ X.B1, X.d @ X.B2
    alpha = {
        "z": place(mid, n0 + n1, [((m0, 0), I0)]),
        "w": place(mid, n0 + n1, [((m1, 0), I0)]),
        "z0": place(mid, n0 + n1, [((m0, n0), X.B1), ((m1, n0), X.B2), ((m2, n0), -dB1),
                                   ((m3, n0), -dB2), ((m4, n0), X.j)]),
        "z1": place(mid, n0 + n1, [((m2, n0), I1)]),
        "z2": place(mid, n0 + n1, [((m3, n0), I1)]),
    }
    beta = {
        "z2": place(n0 + n1, mid, [((0, m0), I0)]),
        "z1": place(n0 + n1, mid, [((0, m1), -I0)]),
        "z0": place(n0 + n1, mid, [((0, m2), X.B2), ((0, m3), -X.B1), ((0, m4), X.i)]),
        "w": place(n0 + n1, mid, [((n0, m0), X.d), ((n0, m2), I1)]),
        "z": place(n0 + n1, mid, [((n0, m1), -X.d), ((n0, m3), -I1)]),
    }
    return alpha, beta


@dataclass(frozen=True)
class MonadEval:
    alpha: Mat
    beta: Mat
    point: SurfacePoint

    def profile(self) -> tuple[int, int, int]:
        """(dim ker alpha, dim ker beta / im alpha, codim im beta)."""
        ra, rb = self.alpha.rank(), self.beta.rank()
        return (self.alpha.ncols - ra, self.beta.ncols - rb - ra, self.beta.nrows - rb)


def _rep_over(X: BlowupRep, F: Field) -> BlowupRep:
    if X.field == F:
        return X
    try:
        embed_values(X.field, F)
    except FieldMismatch:
        raise FieldMismatch(f"{F!r} does not extend {X.field!r}") from None
    return X.map_field(F)


def alpha_beta_at(X: BlowupRep, pt: SurfacePoint) -> MonadEval:
    Y = _rep_over(X, pt.field)
    A, B = monad_coefficients(Y)
    vals = dict(zip(COORDS, pt.coords))
    alpha = beta = None
    for t in COORDS:
        a, b = A[t].scale(vals[t]), B[t].scale(vals[t])
        alpha = a if alpha is None else alpha + a
        beta = b if beta is None else beta + b
    return MonadEval(alpha, beta, pt)


# --- batched ranks over a point set -------------------------------------------------

def _ranks(X: BlowupRep, pts: list[SurfacePoint]) -> tuple[list[int], list[int]]:
    """rank alpha and rank beta at every point (all points over one field)."""
    if not pts:
        return [], []
    F = pts[0].field
    n0, n1, r = X.dims
    mid = 2 * n0 + 2 * n1 + r
    if n0 + n1 == 0:
        return [0] * len(pts), [0] * len(pts)
    if not kernels.supports_numpy(F):
        evals = [alpha_beta_at(X, p) for p in pts]
        return [e.alpha.rank() for e in evals], [e.beta.rank() for e in evals]
    Y = _rep_over(X, F)
    A, B = monad_coefficients(Y)
    nf = kernels.NumpyField(F)
    coords = np.array([p.coords for p in pts], dtype=np.int64)
    alpha = np.zeros((len(pts), mid, n0 + n1), dtype=np.int64)
    beta = np.zeros((len(pts), n0 + n1, mid), dtype=np.int64)
    for t, name in enumerate(COORDS):
        c = coords[:, t][:, None, None]
        alpha = nf.add(alpha, nf.mul(c, np.array(A[name].rows, dtype=np.int64).reshape(1, mid, n0 + n1)))
        beta = nf.add(beta, nf.mul(c, np.array(B[name].rows, dtype=np.int64).reshape(1, n0 + n1, mid)))
    ra = kernels.batched_rank(nf, alpha) if mid else np.zeros(len(pts), dtype=np.int64)
    rb = kernels.batched_rank(nf, beta) if mid else np.zeros(len(pts), dtype=np.int64)
    return [int(x) for x in ra], [int(x) for x in rb]


def _in_subfield(F: FiniteField, x: int, sub_order: int) -> bool:
    # x lies in GF(sub_order) iff x^sub_order = x
    e = sub_order
    acc, base = F.one, x
    while e:
        if e & 1:
            acc = F.mul(acc, base)
        base = F.mul(base, base)
        e >>= 1
    return acc == x


def _new_points(field: FiniteField, degree: int, max_points: int | None) -> list[SurfacePoint]:
    """Points over the degree extension not already defined over a smaller one."""
    pts = enumerate_points(field, degree, max_points)
    if degree == 1:
        return pts
    F = pts[0].field
    subs = [field.q ** e for e in range(1, degree) if degree % e == 0]
    return [p for p in pts if not any(all(_in_subfield(F, x, s) for x in p.coords) for s in subs)]


def _scan_points(X: BlowupRep, max_ext_degree: int | None, max_points: int | None):
    if not getattr(X.field, "is_finite", False):
        raise UnsupportedField("point scans need a finite base field")
    E = X.n0 + X.n1 if max_ext_degree is None else max_ext_degree
    E = max(E, 1)
    for e in range(1, E + 1):
        yield e, _new_points(X.field, e, max_points)


@dataclass(frozen=True)
class ScanReport:
    """result: surjective_everywhere / fails_at for beta; injective_everywhere /
    finite_failures / curve_failure for alpha."""

    result: str
    points: tuple = ()
    degrees: int = 1

    def to_json(self) -> dict:
        out: dict = {"result": self.result, "max_ext_degree": self.degrees}
        if self.result == "fails_at":
            out["point"] = self.points[0].to_json()
        elif self.points:
            out["points"] = [p.to_json() for p in self.points]
        return out


def scan_beta(X: BlowupRep, max_ext_degree: int | None = None,
              max_points: int | None = None) -> ScanReport:
    """First point (degree by degree, canonical order) where beta is not
    surjective; the default degree bound is n0 + n1."""
    E = 0
    for e, pts in _scan_points(X, max_ext_degree, max_points):
        E = e
        _, rb = _ranks(X, pts)
        for p, rk in zip(pts, rb):
            if rk < X.n0 + X.n1:
                return ScanReport("fails_at", (p,), e)
    return ScanReport("surjective_everywhere", (), E)


def scan_alpha(X: BlowupRep, max_ext_degree: int | None = None,
               max_points: int | None = None) -> ScanReport:
    """Points where alpha is not injective, over the sampled extensions.

    curve_failure means every sampled point of the exceptional curve fails;
    the classification describes the sampled set only.
    """
    fails = []
    curve_total = curve_fail = 0
    E = 0
    for e, pts in _scan_points(X, max_ext_degree, max_points):
        E = e
        ra, _ = _ranks(X, pts)
        for p, rk in zip(pts, ra):
            bad = rk < X.n0 + X.n1
            if p.on_exceptional:
                curve_total += 1
                curve_fail += bad
            if bad:
                fails.append(p)
    if not fails:
        return ScanReport("injective_everywhere", (), E)
    if curve_total and curve_fail == curve_total:
        return ScanReport("curve_failure", tuple(fails), E)
    return ScanReport("finite_failures", tuple(fails), E)


# --- fibre profiles -----------------------------------------------------------------

@dataclass(frozen=True)
class FiberProfile:
    entries: tuple  # ((SurfacePoint, (h_minus, h_zero, h_plus)), ...)

    def euler(self) -> set[int]:
        return {a - b + c for _, (a, b, c) in self.entries}

    def to_json(self) -> dict:
        return {"entries": [{"point": p.to_json(), "profile": list(h)} for p, h in self.entries]}


def fiber_profile(X: BlowupRep, pts) -> FiberProfile:
    """Per point: (dim ker alpha, dim ker beta / im alpha, codim im beta)."""
    pts = list(pts)
    groups: dict = {}
    for idx, p in enumerate(pts):
        groups.setdefault(p.field, []).append(idx)
    out: list = [None] * len(pts)
    n = X.n0 + X.n1
    mid = 2 * n + X.r
    for F, idxs in groups.items():
        ra, rb = _ranks(X, [pts[t] for t in idxs])
        for t, a, b in zip(idxs, ra, rb):
            out[t] = (pts[t], (n - a, mid - b - a, n - b))
    return FiberProfile(tuple(out))


def _s2_holds(X: BlowupRep) -> bool:
    from .stability import check_condition
    v = check_condition(X, "S2")
    if v.status == "Unknown":
        return scan_beta(X).result == "surjective_everywhere"
    return v.holds


def framing_check(X: BlowupRep, ext_degree: int = 1, strict: bool = False,
                  max_points: int | None = None) -> bool:
    """The fibre on the line at infinity is (0, r, 0) and W maps isomorphically
    onto the middle cohomology there.

    Data failing (S2) give False, or raise NotS2 when ``strict``. With r = 0
    there is no framing and only the zero profile is checked.
    """
    if not _s2_holds(X):
        if strict:
            raise NotS2("the data violate (S2)")
        return False
    n0, n1, r = X.dims
    mid = 2 * n0 + 2 * n1 + r
    for e in range(1, ext_degree + 1):
        for p in _new_points(X.field, e, max_points):
            if not p.at_infinity:
                continue
            ev = alpha_beta_at(X, p)
            if ev.profile() != (0, r, 0):
                return False
            if r:
                F = p.field
                wcols = Mat._raw(F, tuple(tuple(F.one if row == mid - r + c else F.zero for c in range(r))
                                          for row in range(mid)), mid, r)
                if Mat.hstack(ev.alpha, wcols).rank() != ev.alpha.rank() + r:
                    return False
    return True


# --- Hom against C_n ----------------------------------------------------------------

def perverse_hom_profile(X: BlowupRep, m_max: int) -> list[tuple[int, int, int]]:
    """Rows (n, dim Hom(X, C_n), dim Hom(C_n, X)) for n = 0..m_max."""
    out = []
    for n in range(m_max + 1):
        C = cm_data(n, X.field)
        out.append((n, hom_dim(X, C), hom_dim(C, X)))
    return out


def perverse_test(profile, m: int) -> bool:
    """Hom(X, C_n) = 0 for n >= m and Hom(C_n', X) = 0 for n' < m, within the table."""
    return all((n < m or a == 0) and (n >= m or b == 0) for n, a, b in profile)


__all__ = [
    "DEFAULT_MAX_POINTS", "SurfacePoint", "MonadEval", "FiberProfile", "ScanReport",
    "enumerate_points", "extension", "monad_coefficients", "alpha_beta_at", "scan_beta",
    "scan_alpha", "fiber_profile", "framing_check", "perverse_hom_profile",
    "perverse_test",
]
