"""Chern data, candidate walls m zeta0 + (m+1) zeta1 = 0 and chamber representatives."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import InvalidChernData, PreconditionViolated
from ..exactla import GF, FiniteField
from ..quiverrep import BlowupRep, enumerate_reps
from .conditions import zeta_semistable
from .params import StabilityParam, StabilityVerdict


@dataclass(frozen=True)
class ChernData:
    r: int
    k: int
    n: Fraction

    def __post_init__(self):
        object.__setattr__(self, "n", Fraction(self.n))
        if not isinstance(self.r, int) or self.r < 1:
            raise InvalidChernData("r must be a positive integer")
        n0 = self.n + Fraction(self.k * self.k, 2 * self.r) - Fraction(self.k, 2)
        if n0.denominator != 1 or n0 < 0 or n0 + self.k < 0:
            raise InvalidChernData(f"(r, k, n) = ({self.r}, {self.k}, {self.n}) gives dims ({n0}, {n0 + self.k})")

    @property
    def dims(self) -> tuple[int, int]:
        n0 = int(self.n + Fraction(self.k * self.k, 2 * self.r) - Fraction(self.k, 2))
        return n0, n0 + self.k

    @classmethod
    def from_dims(cls, n0: int, n1: int, r: int) -> "ChernData":
        k = n1 - n0
        return cls(r, k, Fraction(n0 + n1, 2) - Fraction(k * k, 2 * r))


def candidate_walls(c: ChernData) -> list[int]:
    """m with (m, m+1) <= (n0, n1): dimension vectors that admit C_m as a factor."""
    n0, n1 = c.dims
    return [m for m in range(n0 + 1) if m + 1 <= n1]


def wall_parameter(m: int) -> StabilityParam:
    """A parameter on wall m inside zeta0 + zeta1 < 0, zeta0 < 0."""
    return StabilityParam(-1, Fraction(m, m + 1))


def wall_signs(zeta: StabilityParam, walls) -> dict[int, int]:
    out = {}
    for m in walls:
        v = zeta.wall_form(m)
        out[m] = (v > 0) - (v < 0)
    return out


def chamber_rep(m: int, walls) -> StabilityParam:
    """zeta0 = -1 and zeta1 strictly between walls m-1 and m (zeta1 = -1/2 for m = 0).

    ``m`` may be a wall or one past the largest wall; the result is checked
    to lie on the positive side of every wall below m and the negative side
    of the others.
    """
    walls = sorted(set(walls))
    sentinel = walls[-1] + 1 if walls else 0
    if m not in walls and m != sentinel:
        raise PreconditionViolated(f"{m} is neither a wall nor the sentinel {sentinel}")
    if m == 0:
        zeta = StabilityParam(-1, Fraction(-1, 2))
    else:
        zeta = StabilityParam(-1, (Fraction(m - 1, m) + Fraction(m, m + 1)) / 2)
    for w, s in wall_signs(zeta, walls).items():
        if s != (1 if w < m else -1):
            raise ArithmeticError(f"chamber {m} parameter on the wrong side of wall {w}")
    return zeta


def wall_witness(c: ChernData, m: int, field: FiniteField | None = None,
                 max_tuples: int | None = None) -> tuple[BlowupRep, StabilityVerdict] | None:
    """First flat tuple that is strictly semistable on wall m, or None.

    Exhaustive over the field (F_2 by default) within the enumeration bound.
    """
    field = field or GF(2)
    zeta = wall_parameter(m)
    n0, n1 = c.dims
    for X in enumerate_reps((n0, n1, c.r), field, flat_only=True, max_tuples=max_tuples):
        v = zeta_semistable(X, zeta)
        if v.status == "StrictlySemistable":
            return X, v
    return None
