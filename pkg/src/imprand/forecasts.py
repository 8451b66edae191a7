"""Forecasting systems: an interval forecast attached to every situation.

A forecasting system assigns each finite history s an interval forecast
for the next outcome. Kinds:

- ``stationary``: the same interval everywhere;
- ``alternating``: precise p at odd depths, precise q at even depths;
- ``witness``: precise p or q at depth n according to bit n of a driving
  witness sequence (p where the witness bit is 0, q where it is 1);
- ``perfect``: the degenerate system that at depth n forecasts exactly
  bit n of a reference path — it "predicts" that path outcome for
  outcome;
- ``explicit_table``: situation-keyed intervals; situations missing from
  the table get the vacuous forecast [0, 1] (conservative completion).

A system phi is *contained* in phi* when phi(s) is a subset of phi*(s)
everywhere — phi is the more informative of the two. Containment is what
transfers betting guarantees: any supermartingale for the wider system is
one for the narrower.

Temporal kinds depend on s only through its length |s|.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import ClassVar, Mapping

from .config import verification_depth_cap
from .errors import DepthError, DomainError, ResourceError
from .local import IntervalForecast
from .rationals import as_rational
from .situations import PathPrefix, Situation, situations_at_level

_ZERO = Fraction(0)
_ONE = Fraction(1)


class ForecastSpec:
    """Base class; concrete kinds implement ``at``."""

    kind: ClassVar[str]

    def at(self, situation: Situation) -> IntervalForecast:
        raise NotImplementedError

    def is_temporal(self) -> bool:
        """Whether the forecast depends on s only through |s|."""
        raise NotImplementedError

    def max_level(self) -> int | None:
        """Number of levels at which ``at`` is defined (None = all)."""
        return None

    def level_interval(self, level: int) -> IntervalForecast:
        """The common interval at a level; only for temporal kinds."""
        if not self.is_temporal():
            raise DomainError(f"{self.kind} forecast is not temporal")
        return self.at(Situation.zeros(level))

    def constant_interval(self) -> IntervalForecast | None:
        """The single interval used at every situation, if provably so."""
        return None


@dataclass(frozen=True)
class StationaryForecast(ForecastSpec):
    interval: IntervalForecast

    kind: ClassVar[str] = "stationary"

    def at(self, situation: Situation) -> IntervalForecast:
        return self.interval

    def is_temporal(self) -> bool:
        return True

    def level_interval(self, level: int) -> IntervalForecast:
        return self.interval

    def constant_interval(self) -> IntervalForecast | None:
        return self.interval


@dataclass(frozen=True)
class AlternatingForecast(ForecastSpec):
    """Precise p at odd depths, precise q at even depths (root included)."""

    p: Fraction
    q: Fraction

    kind: ClassVar[str] = "alternating"

    def __post_init__(self):
        object.__setattr__(self, "p", as_rational(self.p))
        object.__setattr__(self, "q", as_rational(self.q))
        for name, value in (("p", self.p), ("q", self.q)):
            if not _ZERO <= value <= _ONE:
                raise DomainError(f"alternating forecast {name} must lie in [0, 1], got {value}")

    def at(self, situation: Situation) -> IntervalForecast:
        return IntervalForecast.precise(self.p if situation.depth % 2 == 1 else self.q)

    def is_temporal(self) -> bool:
        return True


@dataclass(frozen=True)
class WitnessForecast(ForecastSpec):
    """Precise p or q at depth n as bit n of the witness is 0 or 1."""

    p: Fraction
    q: Fraction
    witness: PathPrefix

    kind: ClassVar[str] = "witness"

    def __post_init__(self):
        object.__setattr__(self, "p", as_rational(self.p))
        object.__setattr__(self, "q", as_rational(self.q))
        if not isinstance(self.witness, Situation):
            object.__setattr__(self, "witness", Situation(tuple(self.witness)))
        for name, value in (("p", self.p), ("q", self.q)):
            if not _ZERO <= value <= _ONE:
                raise DomainError(f"witness forecast {name} must lie in [0, 1], got {value}")
        if not self.p < self.q:
            raise DomainError(f"witness forecast needs p < q, got p={self.p}, q={self.q}")

    def at(self, situation: Situation) -> IntervalForecast:
        level = situation.depth
        if level >= len(self.witness.bits):
            raise DepthError(
                f"witness forecast has {len(self.witness.bits)} driving bits; "
                f"cannot evaluate at depth {level}"
            )
        return IntervalForecast.precise(self.q if self.witness.bits[level] else self.p)

    def is_temporal(self) -> bool:
        return True

    def max_level(self) -> int | None:
        return len(self.witness.bits)


@dataclass(frozen=True)
class PerfectForecast(ForecastSpec):
    """At depth n, forecast exactly bit n of the reference path.

    Equivalent to a witness system with p = 0, q = 1 driven by the path
    itself: every next outcome of the reference path is "predicted" with
    certainty.
    """

    path: PathPrefix

    kind: ClassVar[str] = "perfect"

    def __post_init__(self):
        if not isinstance(self.path, Situation):
            object.__setattr__(self, "path", Situation(tuple(self.path)))

    def at(self, situation: Situation) -> IntervalForecast:
        level = situation.depth
        if level >= len(self.path.bits):
            raise DepthError(
                f"perfect forecast has a {len(self.path.bits)}-bit reference path; "
                f"cannot evaluate at depth {level}"
            )
        return IntervalForecast.precise(self.path.bits[level])

    def is_temporal(self) -> bool:
        return True

    def max_level(self) -> int | None:
        return len(self.path.bits)


@dataclass(frozen=True)
class ExplicitForecastTable(ForecastSpec):
    """Situation-keyed intervals; missing situations are vacuous."""

    depth: int
    table: Mapping[Situation, IntervalForecast] = field(default_factory=dict)

    kind: ClassVar[str] = "explicit_table"

    def __post_init__(self):
        if self.depth < 0:
            raise DomainError(f"declared depth must be >= 0, got {self.depth}")
        clean: dict[Situation, IntervalForecast] = {}
        for key, value in self.table.items():
            if not isinstance(key, Situation):
                key = Situation.from_string(key) if isinstance(key, str) else Situation(tuple(key))
            if not isinstance(value, IntervalForecast):
                raise DomainError(f"table value for {key} is not an IntervalForecast")
            clean[key] = value
        object.__setattr__(self, "table", clean)

    def at(self, situation: Situation) -> IntervalForecast:
        return self.table.get(situation, IntervalForecast.vacuous())

    def is_temporal(self) -> bool:
        return False


def eval_forecast(spec: ForecastSpec, situation: Situation) -> IntervalForecast:
    """The interval a forecasting system attaches to a situation."""
    return spec.at(situation)


def contains(phi: ForecastSpec, phi_star: ForecastSpec, depth: int) -> bool:
    """Whether phi(s) is a subset of phi_star(s) for every |s| <= depth.

    phi contained in phi_star means phi is at least as informative. For
    a pair of temporal systems one situation per level decides the
    level; otherwise the sweep is exhaustive and the depth is capped.
    """
    if depth < 0:
        raise DomainError(f"depth must be >= 0, got {depth}")
    if phi.is_temporal() and phi_star.is_temporal():
        for level in range(depth + 1):
            if not phi_star.level_interval(level).encloses(phi.level_interval(level)):
                return False
        return True
    cap = verification_depth_cap()
    if depth > cap:
        raise ResourceError(
            f"containment to depth {depth} needs an exhaustive sweep beyond the cap {cap}; "
            f"set IMPRAND_DEPTH_CAP to raise it"
        )
    for level in range(depth + 1):
        for situation in situations_at_level(level):
            if not phi_star.at(situation).encloses(phi.at(situation)):
                return False
    return True
