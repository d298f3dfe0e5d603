"""Slopes on the three-vertex quiver and Harder-Narasimhan / Jordan-Hoelder
filtrations by exhaustive search over subrepresentations."""
from __future__ import annotations

from fractions import Fraction

from ..errors import NotSemistable, PreconditionViolated, ZeroRepresentation
from ..exactla import Subspace
from ..quiverrep import BlowupRep, NewQuiverRep, SubrepPair, subquotient, subrep_pairs
from .params import Filtration, StabilityParam


def slope_theta(Y: NewQuiverRep, zeta: StabilityParam, zeta_inf) -> Fraction:
    n0, n1, ninf = Y.dims
    total = n0 + n1 + ninf
    if total == 0:
        raise ZeroRepresentation("slope of the zero representation")
    return (zeta.pairing(n0, n1) + Fraction(zeta_inf) * ninf) / total


class _Lattice:
    """All subrepresentations of a NewQuiverRep with their dimension data."""

    def __init__(self, Y: NewQuiverRep, zeta: StabilityParam, zeta_inf, max_subspaces=None):
        X = Y.rep
        self.X = X
        self.zeta = zeta
        self.zeta_inf = Fraction(zeta_inf)
        pairs = list(subrep_pairs(X, 0, max_subspaces))
        if Y.dim_inf:
            pairs += list(subrep_pairs(X, 1, max_subspaces))
        self.pairs = pairs
        self.weight = [zeta.pairing(P.S0.dim, P.S1.dim) + self.zeta_inf * P.s_inf for P in pairs]
        self.size = [P.total for P in pairs]

    def bottom(self) -> int:
        return min(range(len(self.pairs)), key=lambda t: self.size[t])

    def top(self) -> int:
        return max(range(len(self.pairs)), key=lambda t: self.size[t])

    def above(self, f: int) -> list[int]:
        F = self.pairs[f]
        return [t for t, P in enumerate(self.pairs) if self.size[t] > self.size[f] and P.contains(F)]

    def quotient_slope(self, t: int, f: int) -> Fraction:
        return (self.weight[t] - self.weight[f]) / (self.size[t] - self.size[f])


def _join(a: SubrepPair, b: SubrepPair) -> SubrepPair:
    return SubrepPair(a.S0 + b.S0, a.S1 + b.S1, max(a.s_inf, b.s_inf))


def _pieces(X: BlowupRep, steps: list[SubrepPair]):
    out = []
    for upper, lower in zip(steps, steps[1:]):
        out.append((subquotient(X, lower, upper), upper.s_inf - lower.s_inf))
    return tuple(out)


def _default_inf(Y: NewQuiverRep, zeta: StabilityParam, zeta_inf):
    if zeta_inf is not None:
        return Fraction(zeta_inf)
    if Y.dim_inf:
        return zeta.zeta_inf(Y.rep.n0, Y.rep.n1)
    return Fraction(0)


def hn_filtration(Y: NewQuiverRep, zeta: StabilityParam, zeta_inf=None,
                  max_subspaces: int | None = None) -> Filtration:
    """Harder-Narasimhan filtration; steps run from the whole down to 0 and
    slopes of the successive quotients increase along that list."""
    if Y.total == 0:
        raise ZeroRepresentation("HN filtration of the zero representation")
    zinf = _default_inf(Y, zeta, zeta_inf)
    L = _Lattice(Y, zeta, zinf, max_subspaces)
    cur = L.bottom()
    chain = [cur]
    top = L.top()
    while cur != top:
        cand = L.above(cur)
        slopes = {t: L.quotient_slope(t, cur) for t in cand}
        best = max(slopes.values())
        maximizers = [t for t in cand if slopes[t] == best]
        pick = max(maximizers, key=lambda t: L.size[t])
        # the maximal destabilizer is the sum of all slope maximizers
        joined = L.pairs[pick]
        for t in maximizers:
            joined = _join(joined, L.pairs[t])
        if joined != L.pairs[pick]:
            raise PreconditionViolated("slope maximizers are not closed under sums")
        chain.append(pick)
        cur = pick
    steps = [L.pairs[t] for t in reversed(chain)]
    slopes = tuple(L.quotient_slope(a, b) for a, b in zip(reversed(chain), list(reversed(chain))[1:]))
    return Filtration(tuple(steps), slopes, _pieces(L.X, steps))


def is_theta_semistable(Y: NewQuiverRep, zeta: StabilityParam, zeta_inf=None,
                        max_subspaces: int | None = None) -> bool:
    zinf = _default_inf(Y, zeta, zeta_inf)
    L = _Lattice(Y, zeta, zinf, max_subspaces)
    mu = slope_theta(Y, zeta, zinf)
    b = L.bottom()
    return all(L.quotient_slope(t, b) <= mu for t in L.above(b))


def jh_filtration(Y: NewQuiverRep, zeta: StabilityParam, zeta_inf=None,
                  max_subspaces: int | None = None) -> Filtration:
    """A Jordan-Hoelder filtration: each step adds a smallest subrepresentation
    of the current quotient having the common slope, so pieces are stable."""
    if Y.total == 0:
        raise ZeroRepresentation("JH filtration of the zero representation")
    zinf = _default_inf(Y, zeta, zeta_inf)
    L = _Lattice(Y, zeta, zinf, max_subspaces)
    mu = slope_theta(Y, zeta, zinf)
    cur = L.bottom()
    if any(L.quotient_slope(t, cur) > mu for t in L.above(cur)):
        raise NotSemistable("representation is not theta-semistable")
    top = L.top()
    chain = [cur]
    while cur != top:
        cand = [t for t in L.above(cur) if L.quotient_slope(t, cur) == mu]
        pick = min(cand, key=lambda t: L.size[t])
        chain.append(pick)
        cur = pick
    steps = [L.pairs[t] for t in reversed(chain)]
    slopes = tuple(mu for _ in steps[1:])
    return Filtration(tuple(steps), slopes, _pieces(L.X, steps))
