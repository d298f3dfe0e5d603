"""Representations with W = 0: the predicted moduli for a balanced parameter,
exhaustive stable-class counts, and the blown-up-plane coordinates on dims (1,1)."""
from __future__ import annotations

from dataclasses import dataclass
from math import prod

from ..errors import InvalidPoint, MalformedInput, NotS0Stable, PreconditionViolated
from ..exactla import Field, FiniteField, Mat
from ..quiverrep import BlowupRep, enumerate_reps, find_isomorphism
from .conditions import check_condition, zeta_semistable
from .params import StabilityParam


@dataclass(frozen=True)
class W0Class:
    """kind is one of UniqueCm, UniqueAm, SinglePoint, PlaneOrBlowup, Plane,
    PuncturedPlane, Empty; m is set for UniqueCm / UniqueAm."""

    kind: str
    m: int | None = None
    note: str = ""

    def expected_classes(self, q: int) -> int:
        """Number of stable isomorphism classes over F_q."""
        return {
            "UniqueCm": 1, "UniqueAm": 1, "SinglePoint": 1, "PlaneOrBlowup": q * q + q,
            "Plane": q * q, "PuncturedPlane": q * q - 1, "Empty": 0,
        }[self.kind]

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.m is not None:
            out["m"] = self.m
        if self.note:
            out["note"] = self.note
        return out


def classify_W0(dims, zeta: StabilityParam) -> W0Class:
    """Predicted stable moduli for W = 0 and a balanced parameter.

    The answer is the one over an algebraically closed field. Inside
    zeta0 + zeta1 < 0, zeta0 < 0 it holds over every field; outside it, a
    finite field can carry extra stable points when n0 = n1 >= 2 (commuting
    maps without a common eigenvector).
    """
    n0, n1 = dims[0], dims[1]
    if n0 < 0 or n1 < 0:
        raise MalformedInput("dimensions must be nonnegative")
    if n0 == 0 and n1 == 0:
        raise PreconditionViolated("the zero representation is not classified")
    if zeta.pairing(n0, n1) != 0:
        raise PreconditionViolated("needs zeta0 n0 + zeta1 n1 = 0")
    z0, z1 = zeta.zeta0, zeta.zeta1
    s = z0 + z1
    if s < 0 and z0 < 0:
        if n1 == n0 + 1:
            return W0Class("UniqueCm", n0)
        return W0Class("Empty", note="stable points need dims (m, m+1)")
    if s == 0 and z0 < 0:
        if (n0, n1) == (1, 1):
            return W0Class("PlaneOrBlowup", note="blowup of the plane at the origin")
        return W0Class("Empty", note="(S0) with n0 = n1 forces dims (1, 1)")
    if s < 0:   # z0 >= 0
        if (n0, n1) == (1, 0) and z0 == 0:
            return W0Class("SinglePoint")
        return W0Class("Empty")
    if s > 0 and z1 > 0:
        if n0 == n1 + 1:
            return W0Class("UniqueAm", n1)
        return W0Class("Empty", note="stable points need dims (m+1, m)")
    if s > 0:   # z1 <= 0
        if (n0, n1) == (0, 1) and z1 == 0:
            return W0Class("SinglePoint")
        return W0Class("Empty")
    if z0 > 0:  # s == 0
        if (n0, n1) == (1, 1):
            return W0Class("Plane")
        return W0Class("Empty")
    # zeta = 0: stable means simple
    if (n0, n1) == (1, 1):
        return W0Class("PuncturedPlane")
    if (n0, n1) in ((1, 0), (0, 1)):
        return W0Class("SinglePoint", note="simple vertex representation")
    return W0Class("Empty")


def gl_order(n: int, q: int) -> int:
    return prod(q ** n - q ** t for t in range(n))


def count_stable_w0(dims, zeta: StabilityParam, field: FiniteField,
                    max_tuples: int | None = None) -> tuple[int, int, list[BlowupRep]]:
    """(stable tuples, isomorphism classes, one representative per class)
    by exhaustive enumeration of flat W = 0 tuples."""
    n0, n1 = dims[0], dims[1]
    stable = 0
    reps: list[BlowupRep] = []
    for X in enumerate_reps((n0, n1, 0), field, flat_only=True, max_tuples=max_tuples):
        if zeta_semistable(X, zeta).status != "Stable":
            continue
        stable += 1
        if not any(find_isomorphism(X, Y) is not None for Y in reps):
            reps.append(X)
    return stable, len(reps), reps


# --- the blown-up plane on dims (1, 1) ---------------------------------------------

def _normalize(f: Field, vec):
    for x in vec:
        if x != f.zero:
            c = f.inv(x)
            return tuple(f.mul(c, y) for y in vec)
    raise InvalidPoint("projective coordinates are all zero")


def triple_to_point(field: Field, B1, B2, d):
    """((B1 d, B2 d), [B1 : B2]) for an (S0)-stable scalar triple."""
    B1, B2, d = (field.coerce(x) for x in (B1, B2, d))
    X = BlowupRep.build(field, 1, 1, 0, [[B1]], [[B2]], [[d]])
    if field.is_finite:
        if not check_condition(X, "S0").holds:
            raise NotS0Stable("(B1, B2) = (0, 0) violates (S0)")
    elif B1 == field.zero and B2 == field.zero:
        raise NotS0Stable("(B1, B2) = (0, 0) violates (S0)")
    return (field.mul(B1, d), field.mul(B2, d)), _normalize(field, (B1, B2))


def point_to_triple(field: Field, z12, zw):
    """(B1, B2, d) = (z, w, z1/z or z2/w) with [z : w] normalized."""
    z1, z2 = (field.coerce(x) for x in z12)
    z, w = _normalize(field, [field.coerce(x) for x in zw])
    if field.mul(z1, w) != field.mul(z2, z):
        raise InvalidPoint("point violates z1 w = z2 z")
    d = field.div(z1, z) if z != field.zero else field.div(z2, w)
    return z, w, d


def blowup_point_maps(field: Field, x):
    """Dispatch on shape: a triple (B1, B2, d) or a BlowupRep of dims (1,1,0)
    goes to a point; a point ((z1, z2), (z, w)) goes to a triple."""
    if isinstance(x, BlowupRep):
        if x.dims != (1, 1, 0):
            raise PreconditionViolated("blowup coordinates need dims (1, 1) and W = 0")
        return triple_to_point(field, x.B1[0, 0], x.B2[0, 0], x.d[0, 0])
    if len(x) == 3:
        return triple_to_point(field, *x)
    if len(x) == 2:
        return point_to_triple(field, *x)
    raise MalformedInput("expected a triple or a point")


def torus_normal_form(field: Field, B1, B2, d):
    """Representative of the torus orbit with [B1 : B2] normalized."""
    lead = B1 if B1 != field.zero else B2
    c = field.inv(lead)
    return field.mul(c, B1), field.mul(c, B2), field.mul(lead, d)


def blowup_points(field: FiniteField) -> list:
    """All points ((z1, z2), [z : w]) of the blown-up affine plane over F_q."""
    out = []
    elems = list(field.elements())
    lines = [(field.one, x) for x in elems] + [(field.zero, field.one)]
    for z, w in lines:
        for t in elems:
            # the fiber over [z : w] is the line t (z, w)
            out.append(((field.mul(t, z), field.mul(t, w)), (z, w)))
    return sorted(out, key=lambda p: (p[1] != (field.one, field.zero), p))


def s0_stable_classes(field: FiniteField) -> list[tuple]:
    """Torus orbits of (S0)-stable dims-(1,1) triples, as normal forms."""
    seen = set()
    elems = list(field.elements())
    for B1 in elems:
        for B2 in elems:
            for d in elems:
                X = BlowupRep.build(field, 1, 1, 0, [[B1]], [[B2]], [[d]])
                if check_condition(X, "S0").holds:
                    seen.add(torus_normal_form(field, B1, B2, d))
    return sorted(seen)
