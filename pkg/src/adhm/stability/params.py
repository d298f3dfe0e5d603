"""Stability parameters, verdicts and filtrations as plain values."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from ..errors import MalformedInput
from ..quiverrep import BlowupRep, SubrepPair

STATUSES = ("Stable", "StrictlySemistable", "Unstable", "Unknown")
METHODS = ("ExhaustiveSubspaces", "HomCriteria", "ClosurePair", "TheoremBacked")


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise MalformedInput(f"not a rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise MalformedInput(f"not a rational: {x!r}") from exc
    raise MalformedInput(f"not a rational: {x!r}")


@dataclass(frozen=True)
class StabilityParam:
    zeta0: Fraction
    zeta1: Fraction

    def __post_init__(self):
        object.__setattr__(self, "zeta0", _frac(self.zeta0))
        object.__setattr__(self, "zeta1", _frac(self.zeta1))

    @classmethod
    def parse(cls, text: str) -> "StabilityParam":
        parts = text.split(",")
        if len(parts) != 2:
            raise MalformedInput(f"expected 'zeta0,zeta1', got {text!r}")
        return cls(_frac(parts[0]), _frac(parts[1]))

    def pairing(self, a: int, b: int) -> Fraction:
        return self.zeta0 * a + self.zeta1 * b

    def zeta_inf(self, n0: int, n1: int) -> Fraction:
        return -self.zeta0 * n0 - self.zeta1 * n1

    def wall_form(self, m: int) -> Fraction:
        """m*zeta0 + (m+1)*zeta1; its sign says on which side of wall m we are."""
        return m * self.zeta0 + (m + 1) * self.zeta1

    def in_region(self) -> bool:
        """zeta0 + zeta1 < 0 and zeta0 < 0."""
        return self.zeta0 + self.zeta1 < 0 and self.zeta0 < 0

    def on_boundary(self) -> bool:
        """zeta0 + zeta1 = 0 and zeta0 < 0."""
        return self.zeta0 + self.zeta1 == 0 and self.zeta0 < 0

    def in_zero_chamber(self) -> bool:
        return self.zeta0 < 0 and self.zeta1 < 0

    def scaled(self, lam) -> "StabilityParam":
        lam = _frac(lam)
        return StabilityParam(self.zeta0 * lam, self.zeta1 * lam)

    def to_json(self) -> dict:
        return {"zeta0": str(self.zeta0), "zeta1": str(self.zeta1)}

    @classmethod
    def from_json(cls, data) -> "StabilityParam":
        try:
            return cls(_frac(data["zeta0"]), _frac(data["zeta1"]))
        except (KeyError, TypeError) as exc:
            raise MalformedInput(f"bad stability parameter: {data!r}") from exc


@dataclass(frozen=True)
class StabilityVerdict:
    status: str
    method: str
    witness: SubrepPair | None = None
    value: Fraction | None = None        # the defining inequality evaluated on the witness
    note: str = ""
    probabilistic: bool = False

    @property
    def semistable(self) -> bool | None:
        if self.status == "Unknown":
            return None
        return self.status != "Unstable"

    @property
    def holds(self) -> bool:
        """For condition checks: the condition holds."""
        return self.status == "Stable"

    def to_json(self) -> dict:
        out: dict[str, Any] = {"status": self.status, "method": self.method}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.value is not None:
            out["value"] = str(self.value)
        if self.note:
            out["note"] = self.note
        if self.probabilistic:
            out["probabilistic"] = True
        return out


@dataclass(frozen=True)
class Filtration:
    """Descending chain steps[0] = full > ... > steps[-1] = 0.

    ``slopes[t]`` is the slope of steps[t] / steps[t+1]; ``pieces[t]`` is that
    graded piece with its dimension at the framing vertex.
    """

    steps: tuple[SubrepPair, ...]
    slopes: tuple[Fraction, ...]
    pieces: tuple[tuple[BlowupRep, int], ...] = field(default=(), compare=False)

    def __len__(self):
        return len(self.slopes)

    def dimension_profile(self) -> tuple:
        return tuple((P.S0.dim, P.S1.dim, P.s_inf) for P in self.steps)

    def to_json(self) -> dict:
        return {
            "steps": [P.to_json() for P in self.steps],
            "slopes": [str(s) for s in self.slopes],
            "pieces": [{"dims": list(Y.dims), "dimInf": di} for Y, di in self.pieces],
        }
