"""The subspace conditions (S0), (S1), (S1)', (S2), zeta-stability and the
Hom-vanishing criteria against the C_m family."""
from __future__ import annotations

from fractions import Fraction

from ..errors import NeedsS2Certificate, PreconditionViolated
from ..exactla import Mat, Subspace
from ..quiverrep import (BlowupRep, SubrepPair, closure_max_S, closure_min_T, cm_data, hom_space,
                         pair_violation, subrep_pairs)
from .params import StabilityParam, StabilityVerdict

EXHAUSTIVE = "ExhaustiveSubspaces"
CLOSURE = "ClosurePair"
HOM = "HomCriteria"

CONDITIONS = ("S0", "S1", "S1prime", "S2")


def s_value(zeta: StabilityParam, P: SubrepPair) -> Fraction:
    """zeta0 dim S0 + zeta1 dim S1."""
    return zeta.pairing(P.S0.dim, P.S1.dim)


def t_value(zeta: StabilityParam, P: SubrepPair) -> Fraction:
    """zeta0 codim T0 + zeta1 codim T1."""
    return zeta.pairing(P.S0.codim, P.S1.codim)


def _is_whole(P: SubrepPair) -> bool:
    return P.S0.is_full() and P.S1.is_full()


def _is_nothing(P: SubrepPair) -> bool:
    return P.S0.is_zero() and P.S1.is_zero()


# --- the named conditions ----------------------------------------------------------

def _violates(which: str, P: SubrepPair) -> bool:
    s0, s1 = P.dims
    if which == "S0":
        return not (s0 > s1 or _is_nothing(P) or _is_whole(P))
    if which == "S1":
        return not (s0 > s1 or _is_nothing(P))
    if which == "S1prime":
        return not (s0 >= s1 or _is_nothing(P))
    # S2: codim T1 > codim T0 unless T = V
    return not (P.S1.codim > P.S0.codim or _is_whole(P))


def check_condition(X: BlowupRep, which: str, max_subspaces: int | None = None) -> StabilityVerdict:
    """Decide one of (S0), (S1), (S1)', (S2).

    (S2) also makes sense for r = 0, where Im i = 0 constrains nothing.
    Status Stable means the condition holds; Unstable carries the first
    violating pair. Over the rationals only the extremal closure pair is
    tested, which can refute but never confirm the condition.
    """
    if which not in CONDITIONS:
        raise PreconditionViolated(f"unknown condition {which!r}")
    if which == "S0":
        if X.r != 0 or X.n0 != X.n1:
            raise PreconditionViolated("(S0) needs r = 0 and n0 = n1")
    elif X.r < 1 and which != "S2":
        raise PreconditionViolated(f"({which}) needs r >= 1")
    s_inf = 1 if which == "S2" else 0
    if not X.field.is_finite:
        if which == "S0":
            return StabilityVerdict("Unknown", CLOSURE, note="(S0) over Q is not decided")
        if which == "S2":
            P = closure_min_T(X) if X.r else SubrepPair(Subspace.zero(X.field, X.n0), Subspace.zero(X.field, X.n1), 1)
        else:
            P = closure_max_S(X)
        if _violates(which, P):
            return StabilityVerdict("Unstable", CLOSURE, P)
        return StabilityVerdict("Unknown", CLOSURE, note="closure pair satisfies the condition")
    for P in subrep_pairs(X, s_inf, max_subspaces):
        if _violates(which, P):
            return StabilityVerdict("Unstable", EXHAUSTIVE, P)
    return StabilityVerdict("Stable", EXHAUSTIVE)


# --- zeta-stability -----------------------------------------------------------------

def _scan(X: BlowupRep, zeta: StabilityParam, families, max_subspaces) -> StabilityVerdict:
    """Run through (s_inf, exceptions) families; first violation wins, else first equality."""
    equality = None
    for s_inf, skip in families:
        for P in subrep_pairs(X, s_inf, max_subspaces):
            if skip(P):
                continue
            if s_inf == 0:
                v = s_value(zeta, P)
                bad = v > 0
            else:
                v = t_value(zeta, P)
                bad = v < 0
            if bad:
                return StabilityVerdict("Unstable", EXHAUSTIVE, P, v)
            if v == 0 and equality is None:
                equality = (P, v)
    if equality is not None:
        return StabilityVerdict("StrictlySemistable", EXHAUSTIVE, equality[0], equality[1])
    return StabilityVerdict("Stable", EXHAUSTIVE)


def zeta_semistable(X: BlowupRep, zeta: StabilityParam, strict: bool = True,
                    s2_certificate: bool | None = None,
                    max_subspaces: int | None = None) -> StabilityVerdict:
    """Stable / StrictlySemistable / Unstable for the zeta inequalities.

    With r = 0 and ``strict`` (the default) the balanced W = 0 notion is
    used: zeta0 n0 + zeta1 n1 must vanish, only the S-inequality is imposed
    and both (0,0) and (V0,V1) are exempt. ``strict=False`` applies the
    framed definition literally even when r = 0.
    """
    if X.r == 0 and strict:
        if zeta.pairing(X.n0, X.n1) != 0:
            raise PreconditionViolated("W = 0 stability needs zeta0 n0 + zeta1 n1 = 0")
        families = [(0, lambda P: _is_nothing(P) or _is_whole(P))]
    else:
        families = [(0, _is_nothing), (1, _is_whole)]
    if X.field.is_finite:
        return _scan(X, zeta, families, max_subspaces)
    if X.r == 0 and strict and zeta.in_region():
        return _w0_theorem_backed(X, zeta)
    if X.r >= 1 and zeta.in_zero_chamber():
        # condition (1) holds trivially; condition (2) reduces to the least T
        T = closure_min_T(X)
        if _is_whole(T):
            return StabilityVerdict("Stable", CLOSURE)
        return StabilityVerdict("Unstable", CLOSURE, T, t_value(zeta, T))
    if X.r >= 1 and zeta.in_region() and s2_certificate is not None:
        return criteria_semistable(X, zeta, s2_certificate=s2_certificate)
    return StabilityVerdict("Unknown", HOM, note="not decidable over Q without an (S2) certificate")


def _w0_theorem_backed(X: BlowupRep, zeta: StabilityParam) -> StabilityVerdict:
    """W = 0 over Q in the region: stable exactly for C_m; otherwise look for
    a witness among the subrepresentations the classification hands us."""
    from .kronecker import kronecker_decompose
    f = X.field
    method = "TheoremBacked"
    if X.is_zero():
        return StabilityVerdict("Stable", method)
    if not X.d.is_zero():
        cands = []
        for B in (X.B1, X.B2):
            cands.append(SubrepPair((B @ X.d).kernel(), (X.d @ B).kernel(), 0))
            cands.append(SubrepPair((B @ X.d).image(), (X.d @ B).image(), 0))
        for P in cands:
            if pair_violation(X, P.S0, P.S1, 0) is None and s_value(zeta, P) > 0:
                return StabilityVerdict("Unstable", method, P, s_value(zeta, P))
        return StabilityVerdict("Unknown", method, note="d != 0, so X is not stable")
    blocks, Pm, Qm = kronecker_decompose(X.B1, X.B2)
    V0basis = Pm.inverse()
    pairs = []
    r0 = r1 = 0
    for b in blocks:
        h0, h1 = b.shape()
        S0 = Subspace.span(f, X.n0, [V0basis.col(c) for c in range(r0, r0 + h0)])
        S1 = Subspace.span(f, X.n1, [Qm.col(c) for c in range(r1, r1 + h1)])
        pairs.append((b, SubrepPair(S0, S1, 0)))
        r0, r1 = r0 + h0, r1 + h1
    if len(blocks) == 1:
        if blocks[0].kind == "b":
            return StabilityVerdict("Stable", method)
        return StabilityVerdict("Unknown", method, note="indecomposable but not of type b")
    best = max(pairs, key=lambda bp: s_value(zeta, bp[1]))
    v = s_value(zeta, best[1])
    if v > 0:
        return StabilityVerdict("Unstable", method, best[1], v)
    if all(b.kind == "b" and s_value(zeta, P) == 0 for b, P in pairs):
        return StabilityVerdict("StrictlySemistable", method, pairs[0][1], Fraction(0))
    return StabilityVerdict("Unknown", method, note="decomposable; summands do not decide")


def _image_pair(xi0: Mat, xi1: Mat) -> SubrepPair:
    return SubrepPair(xi0.image(), xi1.image(), 0)


def _kernel_pair(xi0: Mat, xi1: Mat) -> SubrepPair:
    return SubrepPair(xi0.kernel(), xi1.kernel(), 1)


def criteria_semistable(X: BlowupRep, zeta: StabilityParam, s2_certificate: bool | None = None,
                        max_subspaces: int | None = None) -> StabilityVerdict:
    """zeta-stability through (S2) and Hom-vanishing against C_m, 0 <= m <= n0+n1.

    On the side m zeta0 + (m+1) zeta1 > 0 a nonzero map C_m -> X destabilizes
    through its image; on the other side a nonzero X -> C_m destabilizes
    through its kernel. On a wall a nonzero map in either direction gives an
    equality witness, so the verdict is a full trichotomy.

    Over Q, (S2) cannot be decided exhaustively: pass ``s2_certificate=True``
    to assert it (e.g. from a finite-field specialization), otherwise
    NeedsS2Certificate is raised unless the closure pair already refutes it.
    """
    if X.r < 1:
        raise PreconditionViolated("the Hom criteria need r >= 1")
    if not zeta.in_region():
        raise PreconditionViolated("the Hom criteria need zeta0 + zeta1 < 0 and zeta0 < 0")
    probabilistic = False
    if X.field.is_finite:
        s2 = check_condition(X, "S2", max_subspaces)
    else:
        s2 = check_condition(X, "S2")
        if s2.status == "Unknown":
            if s2_certificate is None:
                raise NeedsS2Certificate("(S2) is undecidable over Q; supply a certificate")
            probabilistic = True
            if not s2_certificate:
                s2 = StabilityVerdict("Unstable", HOM, note="(S2) certified false")
    if s2.status == "Unstable":
        P = s2.witness
        return StabilityVerdict("Unstable", HOM, P, t_value(zeta, P) if P else None,
                                note="(S2) fails", probabilistic=probabilistic)

    equality = None
    for m in range(X.n0 + X.n1 + 1):
        w = zeta.wall_form(m)
        C = cm_data(m, X.field)
        if w >= 0:
            H = hom_space(C, X)
            if H.dim:
                xi0, xi1, _ = H.basis[0]
                P = _image_pair(xi0, xi1)
                v = s_value(zeta, P)
                if w > 0:
                    return StabilityVerdict("Unstable", HOM, P, v, note=f"Hom(C_{m}, X) != 0",
                                            probabilistic=probabilistic)
                if equality is None:
                    equality = (P, v, f"Hom(C_{m}, X) != 0 on wall {m}")
        if w <= 0:
            H = hom_space(X, C)
            if H.dim:
                xi0, xi1, _ = H.basis[0]
                P = _kernel_pair(xi0, xi1)
                v = t_value(zeta, P)
                if w < 0:
                    return StabilityVerdict("Unstable", HOM, P, v, note=f"Hom(X, C_{m}) != 0",
                                            probabilistic=probabilistic)
                if equality is None:
                    equality = (P, v, f"Hom(X, C_{m}) != 0 on wall {m}")
    if equality is not None:
        P, v, note = equality
        return StabilityVerdict("StrictlySemistable", HOM, P, v, note=note, probabilistic=probabilistic)
    return StabilityVerdict("Stable", HOM, probabilistic=probabilistic)


def verify_witness(X: BlowupRep, zeta: StabilityParam, verdict: StabilityVerdict,
                   w0_balanced: bool | None = None) -> bool:
    """Re-check a verdict's witness: a valid pair satisfying the claimed
    strict violation (Unstable) or equality (StrictlySemistable)."""
    P = verdict.witness
    if verdict.status not in ("Unstable", "StrictlySemistable"):
        return P is None or pair_violation(X, P.S0, P.S1, P.s_inf) is None
    if P is None or pair_violation(X, P.S0, P.S1, P.s_inf) is not None:
        return False
    balanced = X.r == 0 if w0_balanced is None else w0_balanced
    if P.s_inf == 0 or balanced:
        v = s_value(zeta, P)
        trivial = _is_nothing(P) or (balanced and _is_whole(P))
        return (v > 0) if verdict.status == "Unstable" else (v == 0 and not trivial)
    v = t_value(zeta, P)
    return (v < 0) if verdict.status == "Unstable" else (v == 0 and not _is_whole(P))
