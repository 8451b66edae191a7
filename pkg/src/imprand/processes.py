"""Processes and betting strategies on the binary event tree.

A *process* F assigns a rational value to every situation; its
*difference* at s is the local gamble ``x -> F(sx) - F(s)``.  A
*selection process* is {0, 1}-valued and marks which next outcomes
enter a subsequence.  A *multiplier process* assigns a non-negative
local gamble D(s); it generates the capital process

    T(root) = 1,    T(sx) = T(s) * D(s)(x),

which is automatically non-negative.  A :class:`StrategySpec` wraps
either additive increments (a gamble process, capital accumulates
``M(sx) = M(s) + dM(s)(x)``) or multiplicative increments (a
multiplier process).

A strategy M is a *supermartingale* for a forecasting system phi when
every local increment is offered at every situation:

    upper_E_{phi(s)}(dM(s)) <= 0    for all s,

i.e. the bettor only ever takes gambles the forecaster is committed
to offer.  :func:`is_supermartingale` verifies this exhaustively to a
depth (bounded by the configured cap), or level-by-level without a
depth bound when both the strategy and the forecast are temporal
(depend on s only through |s|).

:func:`selection_from_process` derives the temporal selection that
fires at epoch n exactly when some level-n situation would let the
process grow in expectation under a precise model r:

    S(n) = 1  iff  E_r(dF(s)) > 0 for some s with |s| = n.

Applied to the counting process ``F = 1 + running count of S`` of a
temporal selection S, this construction returns S itself, for any r:
the derivation is a left inverse of counting.

:func:`rescale_test_process` clips a capital process to 1 up to a
cutoff level N and continues it as T/K deeper, the standard device
for keeping capital below 1 on an initial segment while preserving
the representation family (multiplicative stays multiplicative).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import ClassVar, Mapping, Union

from .config import verification_depth_cap
from .errors import DepthError, DomainError, ResourceError
from .forecasts import ForecastSpec
from .local import (
    Gamble,
    IntervalForecast,
    linear_expectation,
    upper_expectation,
)
from .rationals import Rational, RationalLike, as_rational
from .situations import PathPrefix, Situation, situations_at_level

_ZERO = Fraction(0)
_ONE = Fraction(1)
_UNIT_GAMBLE = Gamble(_ONE, _ONE)
_ZERO_GAMBLE = Gamble(_ZERO, _ZERO)

_CLASS_TAGS = ("ML", "wML", "C", "S")


def _coerce_situation(key) -> Situation:
    if isinstance(key, Situation):
        return key
    if isinstance(key, str):
        return Situation.from_string(key)
    raise DomainError(f"table keys must be situations or bitstrings, got {key!r}")


_level_witness = Situation.zeros


# ---------------------------------------------------------------------------
# Selection processes
# ---------------------------------------------------------------------------


class SelectionSpec:
    """Base class for {0, 1}-valued processes choosing next outcomes."""

    kind: ClassVar[str]

    def at(self, situation: Situation) -> int:
        """0 or 1: whether the outcome following ``situation`` is selected."""
        raise NotImplementedError

    def is_temporal(self) -> bool:
        """Whether the selection depends on s only through |s|."""
        raise NotImplementedError

    def level_value(self, level: int) -> int:
        """The common value at a level; only for temporal kinds."""
        if not self.is_temporal():
            raise DomainError(f"{self.kind} selection is not temporal")
        return self.at(_level_witness(level))


@dataclass(frozen=True)
class AlwaysSelection(SelectionSpec):
    """Selects every outcome."""

    kind: ClassVar[str] = "always"

    def at(self, situation: Situation) -> int:
        return 1

    def is_temporal(self) -> bool:
        return True

    def level_value(self, level: int) -> int:
        return 1


@dataclass(frozen=True)
class NeverSelection(SelectionSpec):
    """Selects nothing."""

    kind: ClassVar[str] = "never"

    def at(self, situation: Situation) -> int:
        return 0

    def is_temporal(self) -> bool:
        return True

    def level_value(self, level: int) -> int:
        return 0


@dataclass(frozen=True)
class TemporalMaskSelection(SelectionSpec):
    """Selection given by an explicit per-level bit mask."""

    mask: tuple[int, ...]

    kind: ClassVar[str] = "temporal_mask"

    def __post_init__(self):
        bits = tuple(int(b) for b in self.mask)
        if any(b not in (0, 1) for b in bits):
            raise DomainError("mask entries must be 0 or 1")
        object.__setattr__(self, "mask", bits)

    def at(self, situation: Situation) -> int:
        return self.level_value(len(situation))

    def is_temporal(self) -> bool:
        return True

    def level_value(self, level: int) -> int:
        if level >= len(self.mask):
            raise DepthError(
                f"mask of length {len(self.mask)} has no entry for level {level}"
            )
        return self.mask[level]


@dataclass(frozen=True)
class FollowSymbolSelection(SelectionSpec):
    """Selects after every occurrence of one symbol.

    S(s) = 1 iff s is nonempty and its last bit equals ``symbol``; the
    root is never selected.  Not temporal: the value depends on the
    realized history, not just its length.
    """

    symbol: int

    kind: ClassVar[str] = "follow_symbol"

    def __post_init__(self):
        if self.symbol not in (0, 1):
            raise DomainError(f"symbol must be 0 or 1, got {self.symbol!r}")

    def at(self, situation: Situation) -> int:
        return 1 if situation.last() == self.symbol else 0

    def is_temporal(self) -> bool:
        return False


@dataclass(frozen=True)
class FromProcessSelection(SelectionSpec):
    """Selection derived from a process: fires where the process can grow.

    At epoch n the selection is 1 iff E_r(dF(s)) > 0 for some situation
    s with |s| = n.  Temporal by construction.  Levels are evaluated
    lazily and memoized; a non-temporal process is enumerated
    exhaustively per level, subject to the configured depth cap.
    """

    process: "ProcessSpec"
    rate: Fraction
    _memo: dict = field(
        default_factory=dict, init=False, repr=False, compare=False, hash=False
    )

    kind: ClassVar[str] = "from_process"

    def __post_init__(self):
        rate = as_rational(self.rate)
        if not (_ZERO <= rate <= _ONE):
            raise DomainError(f"rate must lie in [0, 1], got {rate}")
        object.__setattr__(self, "rate", rate)

    def at(self, situation: Situation) -> int:
        return self.level_value(len(situation))

    def is_temporal(self) -> bool:
        return True

    def level_value(self, level: int) -> int:
        cached = self._memo.get(level)
        if cached is None:
            cached = _selection_level(self.process, self.rate, level)
            self._memo[level] = cached
        return cached


def _selection_level(process: "ProcessSpec", rate: Fraction, level: int) -> int:
    """1 iff E_rate(dF(s)) > 0 for some situation s at the level."""
    if process.is_temporal():
        delta = process.delta_at(_level_witness(level))
        return 1 if linear_expectation(rate, delta) > 0 else 0
    cap = verification_depth_cap()
    if level > cap:
        raise ResourceError(
            f"enumerating level {level} of a non-temporal process exceeds "
            f"the depth cap {cap}"
        )
    for s in situations_at_level(level):
        if linear_expectation(rate, process.delta_at(s)) > 0:
            return 1
    return 0


# ---------------------------------------------------------------------------
# Multiplier processes (non-negative local gambles)
# ---------------------------------------------------------------------------


class MultiplierSpec:
    """Base class for non-negative gamble processes used as capital factors."""

    kind: ClassVar[str]

    def gamble_at(self, situation: Situation) -> Gamble:
        """The non-negative factor gamble D(s)."""
        raise NotImplementedError

    def is_temporal(self) -> bool:
        raise NotImplementedError

    def constant_gamble(self) -> Gamble | None:
        """The single gamble used at every situation, if provably so."""
        return None

    def level_gamble(self, level: int) -> Gamble:
        """The common gamble at a level; only for temporal kinds."""
        const = self.constant_gamble()
        if const is not None:
            return const
        if not self.is_temporal():
            raise DomainError(f"{self.kind} multiplier is not temporal")
        return self.gamble_at(_level_witness(level))


@dataclass(frozen=True)
class UnitMultiplier(MultiplierSpec):
    """D = 1 everywhere: the capital never moves."""

    kind: ClassVar[str] = "unit"

    def gamble_at(self, situation: Situation) -> Gamble:
        return _UNIT_GAMBLE

    def is_temporal(self) -> bool:
        return True

    def constant_gamble(self) -> Gamble | None:
        return _UNIT_GAMBLE


def _validated_stake(stake: RationalLike) -> Fraction:
    stake = as_rational(stake)
    if not (_ZERO <= stake <= _ONE):
        raise DomainError(f"stake must lie in [0, 1], got {stake}")
    return stake


@dataclass(frozen=True)
class KellyBuyMultiplier(MultiplierSpec):
    """Backs outcome 1 at the forecast's upper price q.

    D(1) = 1 + stake * (1 - q) / q and D(0) = 1 - stake, so that
    E_p'(D) = 1 + stake * (p' - q) / q <= 1 whenever p' <= q: the
    strategy is a supermartingale for any forecast bounded above by q
    and profits when ones appear more often than q predicts.
    """

    interval: IntervalForecast
    stake: Fraction

    kind: ClassVar[str] = "kelly_buy"

    def __post_init__(self):
        if not isinstance(self.interval, IntervalForecast):
            raise DomainError("interval must be an IntervalForecast")
        object.__setattr__(self, "stake", _validated_stake(self.stake))
        if self.interval.upper == 0:
            raise DomainError("buying against upper price 0 is undefined")
        q = self.interval.upper
        factor = Gamble(_ONE - self.stake, _ONE + self.stake * (_ONE - q) / q)
        object.__setattr__(self, "_factor", factor)

    def gamble_at(self, situation: Situation) -> Gamble:
        return self._factor

    def _gamble(self) -> Gamble:
        return self._factor

    def is_temporal(self) -> bool:
        return True

    def constant_gamble(self) -> Gamble | None:
        return self._gamble()


@dataclass(frozen=True)
class KellySellMultiplier(MultiplierSpec):
    """Backs outcome 0 at the forecast's lower price p.

    D(0) = 1 + stake * p / (1 - p) and D(1) = 1 - stake, so that
    E_p'(D) <= 1 whenever p' >= p: a supermartingale for any forecast
    bounded below by p, profiting when zeros appear more often than
    1 - p predicts.
    """

    interval: IntervalForecast
    stake: Fraction

    kind: ClassVar[str] = "kelly_sell"

    def __post_init__(self):
        if not isinstance(self.interval, IntervalForecast):
            raise DomainError("interval must be an IntervalForecast")
        object.__setattr__(self, "stake", _validated_stake(self.stake))
        if self.interval.lower == 1:
            raise DomainError("selling against lower price 1 is undefined")
        p = self.interval.lower
        factor = Gamble(_ONE + self.stake * p / (_ONE - p), _ONE - self.stake)
        object.__setattr__(self, "_factor", factor)

    def gamble_at(self, situation: Situation) -> Gamble:
        return self._factor

    def _gamble(self) -> Gamble:
        return self._factor

    def is_temporal(self) -> bool:
        return True

    def constant_gamble(self) -> Gamble | None:
        return self._gamble()


def _coerce_gamble(value) -> Gamble:
    if isinstance(value, Gamble):
        return value
    if isinstance(value, (tuple, list)) and len(value) == 2:
        return Gamble(as_rational(value[0]), as_rational(value[1]))
    raise DomainError(f"expected a gamble or an (at0, at1) pair, got {value!r}")


@dataclass(frozen=True)
class ExplicitTableMultiplier(MultiplierSpec):
    """Factor gambles tabulated per situation for all |s| < depth."""

    depth: int
    table: Mapping[Situation, Gamble] = field(hash=False)

    kind: ClassVar[str] = "explicit_table"

    def __post_init__(self):
        depth = int(self.depth)
        if depth < 0:
            raise DomainError(f"depth must be >= 0, got {depth}")
        object.__setattr__(self, "depth", depth)
        cleaned: dict[Situation, Gamble] = {}
        for key, value in dict(self.table).items():
            situation = _coerce_situation(key)
            if len(situation) >= depth:
                raise DomainError(
                    f"table entry at |s| = {len(situation)} exceeds depth {depth}"
                )
            g = _coerce_gamble(value)
            if g.minimum() < 0:
                raise DomainError(f"multiplier values must be >= 0, got {g} at {situation}")
            cleaned[situation] = g
        object.__setattr__(self, "table", cleaned)

    def gamble_at(self, situation: Situation) -> Gamble:
        if len(situation) >= self.depth:
            raise DepthError(
                f"multiplier table of depth {self.depth} has no entry at |s| = {len(situation)}"
            )
        try:
            return self.table[situation]
        except KeyError:
            raise DepthError(f"multiplier table has no entry at {situation}") from None

    def is_temporal(self) -> bool:
        return False


@dataclass(frozen=True)
class GatedMultiplier(MultiplierSpec):
    """Applies a base multiplier only where a selection fires, else holds.

    D(s) = base(s) when the selection chooses the outcome after s, and
    the unit gamble otherwise: the strategy bets exactly on the selected
    epochs.  Remains a supermartingale for any forecast the base is one
    for, since skipping a bet is always allowed.
    """

    base: MultiplierSpec
    selection: SelectionSpec

    kind: ClassVar[str] = "gated"

    def __post_init__(self):
        if not isinstance(self.base, MultiplierSpec):
            raise DomainError("base must be a MultiplierSpec")
        if not isinstance(self.selection, SelectionSpec):
            raise DomainError("selection must be a SelectionSpec")

    def gamble_at(self, situation: Situation) -> Gamble:
        if self.selection.at(situation):
            return self.base.gamble_at(situation)
        return _UNIT_GAMBLE

    def is_temporal(self) -> bool:
        return self.base.is_temporal() and self.selection.is_temporal()

    def constant_gamble(self) -> Gamble | None:
        if isinstance(self.selection, AlwaysSelection):
            return self.base.constant_gamble()
        if isinstance(self.selection, NeverSelection):
            return _UNIT_GAMBLE
        return None

    def level_gamble(self, level: int) -> Gamble:
        const = self.constant_gamble()
        if const is not None:
            return const
        if not self.is_temporal():
            raise DomainError("gated multiplier is not temporal")
        if self.selection.level_value(level):
            return self.base.level_gamble(level)
        return _UNIT_GAMBLE


@dataclass(frozen=True)
class RescaledMultiplier(MultiplierSpec):
    """Multiplier realizing a capital clip: 1 up to a cutoff, T/K deeper.

    Below the cutoff the factor is 1 (capital parked at 1); at the
    cutoff level the factor jumps straight to the clipped continuation
    T(sx)/K; beyond it the base strategy's own factors resume.
    """

    base: "StrategySpec"
    cutoff: int
    scale: int

    kind: ClassVar[str] = "rescaled"

    def __post_init__(self):
        _validate_rescale_args(self.base, self.cutoff, self.scale)
        if not self.base.is_multiplicative:
            raise DomainError("rescaled multiplier needs a multiplicative base")
        object.__setattr__(self, "cutoff", int(self.cutoff))
        object.__setattr__(self, "scale", int(self.scale))

    def gamble_at(self, situation: Situation) -> Gamble:
        level = len(situation)
        if level < self.cutoff:
            return _UNIT_GAMBLE
        if level == self.cutoff:
            return Gamble(
                capital_at(self.base, situation.child(0)) / self.scale,
                capital_at(self.base, situation.child(1)) / self.scale,
            )
        return self.base.increments.gamble_at(situation)

    def is_temporal(self) -> bool:
        return False


# ---------------------------------------------------------------------------
# Value processes
# ---------------------------------------------------------------------------


class ProcessSpec:
    """Base class for rational-valued processes on situations."""

    kind: ClassVar[str]

    def at(self, situation: Situation) -> Fraction:
        raise NotImplementedError

    def delta_at(self, situation: Situation) -> Gamble:
        """The difference gamble x -> F(sx) - F(s)."""
        value = self.at(situation)
        return Gamble(
            self.at(situation.child(0)) - value,
            self.at(situation.child(1)) - value,
        )

    def is_temporal(self) -> bool:
        raise NotImplementedError


@dataclass(frozen=True)
class ConstantProcess(ProcessSpec):
    """F = value everywhere; all differences vanish."""

    value: Fraction

    kind: ClassVar[str] = "constant"

    def __post_init__(self):
        object.__setattr__(self, "value", as_rational(self.value))

    def at(self, situation: Situation) -> Fraction:
        return self.value

    def delta_at(self, situation: Situation) -> Gamble:
        return _ZERO_GAMBLE

    def is_temporal(self) -> bool:
        return True


@dataclass(frozen=True)
class TemporalTableProcess(ProcessSpec):
    """F(s) = values[|s|]: a process depending on the level only."""

    values: tuple[Fraction, ...]

    kind: ClassVar[str] = "temporal_table"

    def __post_init__(self):
        values = tuple(as_rational(v) for v in self.values)
        if not values:
            raise DomainError("temporal table needs at least the root value")
        object.__setattr__(self, "values", values)

    def _value(self, level: int) -> Fraction:
        if level >= len(self.values):
            raise DepthError(
                f"temporal table of length {len(self.values)} has no value at level {level}"
            )
        return self.values[level]

    def at(self, situation: Situation) -> Fraction:
        return self._value(len(situation))

    def delta_at(self, situation: Situation) -> Gamble:
        step = self._value(len(situation) + 1) - self._value(len(situation))
        return Gamble(step, step)

    def is_temporal(self) -> bool:
        return True


@dataclass(frozen=True)
class CountingProcess(ProcessSpec):
    """F(s) = 1 + number of selected epochs strictly before |s|.

    The canonical companion of a selection process: its difference is
    dF(s) = (S(s), S(s)), so deriving a selection back out of it via
    :func:`selection_from_process` recovers S for any rate.
    """

    selection: SelectionSpec

    kind: ClassVar[str] = "counting_from_selection"

    def __post_init__(self):
        if not isinstance(self.selection, SelectionSpec):
            raise DomainError("selection must be a SelectionSpec")

    def at(self, situation: Situation) -> Fraction:
        total = 1
        for k in range(len(situation)):
            total += self.selection.at(situation.prefix(k))
        return Fraction(total)

    def delta_at(self, situation: Situation) -> Gamble:
        fired = Fraction(self.selection.at(situation))
        return Gamble(fired, fired)

    def is_temporal(self) -> bool:
        return self.selection.is_temporal()


@dataclass(frozen=True)
class MultiplierGeneratedProcess(ProcessSpec):
    """The capital process generated by a multiplier from initial value 1."""

    multiplier: MultiplierSpec

    kind: ClassVar[str] = "multiplier_generated"

    def __post_init__(self):
        if not isinstance(self.multiplier, MultiplierSpec):
            raise DomainError("multiplier must be a MultiplierSpec")

    def at(self, situation: Situation) -> Fraction:
        value = _ONE
        for k, outcome in enumerate(situation):
            value *= self.multiplier.gamble_at(situation.prefix(k))(outcome)
        return value

    def delta_at(self, situation: Situation) -> Gamble:
        value = self.at(situation)
        factor = self.multiplier.gamble_at(situation)
        return Gamble(value * (factor.at0 - _ONE), value * (factor.at1 - _ONE))

    def is_temporal(self) -> bool:
        const = self.multiplier.constant_gamble()
        return const is not None and const.at0 == const.at1


@dataclass(frozen=True)
class ExplicitTableProcess(ProcessSpec):
    """Process values tabulated per situation for all |s| <= depth."""

    depth: int
    table: Mapping[Situation, Fraction] = field(hash=False)

    kind: ClassVar[str] = "explicit_table"

    def __post_init__(self):
        depth = int(self.depth)
        if depth < 0:
            raise DomainError(f"depth must be >= 0, got {depth}")
        object.__setattr__(self, "depth", depth)
        cleaned: dict[Situation, Fraction] = {}
        for key, value in dict(self.table).items():
            situation = _coerce_situation(key)
            if len(situation) > depth:
                raise DomainError(
                    f"table entry at |s| = {len(situation)} exceeds depth {depth}"
                )
            cleaned[situation] = as_rational(value)
        object.__setattr__(self, "table", cleaned)

    def at(self, situation: Situation) -> Fraction:
        if len(situation) > self.depth:
            raise DepthError(
                f"process table of depth {self.depth} has no value at |s| = {len(situation)}"
            )
        try:
            return self.table[situation]
        except KeyError:
            raise DepthError(f"process table has no value at {situation}") from None

    def is_temporal(self) -> bool:
        return False


# ---------------------------------------------------------------------------
# Additive increment (gamble) processes
# ---------------------------------------------------------------------------


class GambleProcessSpec:
    """Base class for processes of local increment gambles dM(s)."""

    kind: ClassVar[str]

    def delta_at(self, situation: Situation) -> Gamble:
        raise NotImplementedError

    def is_temporal(self) -> bool:
        raise NotImplementedError

    def constant_delta(self) -> Gamble | None:
        """The single increment used at every situation, if provably so."""
        return None

    def level_delta(self, level: int) -> Gamble:
        """The common increment at a level; only for temporal kinds."""
        const = self.constant_delta()
        if const is not None:
            return const
        if not self.is_temporal():
            raise DomainError(f"{self.kind} increment process is not temporal")
        return self.delta_at(_level_witness(level))


@dataclass(frozen=True)
class ConstantGambleProcess(GambleProcessSpec):
    """The same increment gamble at every situation."""

    gamble: Gamble

    kind: ClassVar[str] = "constant"

    def __post_init__(self):
        object.__setattr__(self, "gamble", _coerce_gamble(self.gamble))

    def delta_at(self, situation: Situation) -> Gamble:
        return self.gamble

    def is_temporal(self) -> bool:
        return True

    def constant_delta(self) -> Gamble | None:
        return self.gamble


@dataclass(frozen=True)
class TemporalGambleProcess(GambleProcessSpec):
    """Increment gambles depending on the level only: dM(s) = gambles[|s|]."""

    gambles: tuple[Gamble, ...]

    kind: ClassVar[str] = "temporal_table"

    def __post_init__(self):
        object.__setattr__(
            self, "gambles", tuple(_coerce_gamble(g) for g in self.gambles)
        )

    def delta_at(self, situation: Situation) -> Gamble:
        return self.level_delta(len(situation))

    def is_temporal(self) -> bool:
        return True

    def level_delta(self, level: int) -> Gamble:
        if level >= len(self.gambles):
            raise DepthError(
                f"increment table of length {len(self.gambles)} has no entry at level {level}"
            )
        return self.gambles[level]


@dataclass(frozen=True)
class ExplicitGambleTable(GambleProcessSpec):
    """Increment gambles tabulated per situation for all |s| < depth."""

    depth: int
    table: Mapping[Situation, Gamble] = field(hash=False)

    kind: ClassVar[str] = "explicit_table"

    def __post_init__(self):
        depth = int(self.depth)
        if depth < 0:
            raise DomainError(f"depth must be >= 0, got {depth}")
        object.__setattr__(self, "depth", depth)
        cleaned: dict[Situation, Gamble] = {}
        for key, value in dict(self.table).items():
            situation = _coerce_situation(key)
            if len(situation) >= depth:
                raise DomainError(
                    f"table entry at |s| = {len(situation)} exceeds depth {depth}"
                )
            cleaned[situation] = _coerce_gamble(value)
        object.__setattr__(self, "table", cleaned)

    def delta_at(self, situation: Situation) -> Gamble:
        if len(situation) >= self.depth:
            raise DepthError(
                f"increment table of depth {self.depth} has no entry at |s| = {len(situation)}"
            )
        try:
            return self.table[situation]
        except KeyError:
            raise DepthError(f"increment table has no entry at {situation}") from None

    def is_temporal(self) -> bool:
        return False


@dataclass(frozen=True)
class RescaledGambleProcess(GambleProcessSpec):
    """Additive increments realizing a capital clip of a base strategy.

    Zero increment below the cutoff (capital parked at 1), the jump to
    the clipped continuation T(sx)/K - 1 at the cutoff level, and the
    base increments shrunk by 1/K beyond it.
    """

    base: "StrategySpec"
    cutoff: int
    scale: int

    kind: ClassVar[str] = "rescaled"

    def __post_init__(self):
        _validate_rescale_args(self.base, self.cutoff, self.scale)
        object.__setattr__(self, "cutoff", int(self.cutoff))
        object.__setattr__(self, "scale", int(self.scale))

    def delta_at(self, situation: Situation) -> Gamble:
        level = len(situation)
        if level < self.cutoff:
            return _ZERO_GAMBLE
        if level == self.cutoff:
            return Gamble(
                capital_at(self.base, situation.child(0)) / self.scale - _ONE,
                capital_at(self.base, situation.child(1)) / self.scale - _ONE,
            )
        return Fraction(1, self.scale) * _base_delta(self.base, situation)

    def is_temporal(self) -> bool:
        return False


def _validate_rescale_args(base, cutoff, scale) -> None:
    if not isinstance(base, StrategySpec):
        raise DomainError("base must be a StrategySpec")
    if int(cutoff) != cutoff or int(cutoff) < 0:
        raise DomainError(f"cutoff level must be an integer >= 0, got {cutoff!r}")
    if int(scale) != scale or int(scale) < 1:
        raise DomainError(f"scale must be an integer >= 1, got {scale!r}")


# ---------------------------------------------------------------------------
# Strategies
# ---------------------------------------------------------------------------


IncrementSpec = Union[MultiplierSpec, GambleProcessSpec]


@dataclass(frozen=True)
class StrategySpec:
    """A betting strategy: initial capital plus local increments.

    Multiplicative strategies (increments a :class:`MultiplierSpec`)
    generate capital ``M(sx) = M(s) * D(s)(x)`` and require a
    non-negative initial value, so the capital stays non-negative.
    Additive strategies (increments a :class:`GambleProcessSpec`)
    accumulate ``M(sx) = M(s) + dM(s)(x)``.

    ``class_tag`` is declarative metadata naming the intended strategy
    family (one of ML, wML, C, S, ordered from the most permissive
    effectiveness requirement to the strictest); nothing is verified
    about it at runtime.
    """

    initial: Fraction
    increments: IncrementSpec
    class_tag: str = "C"

    def __post_init__(self):
        object.__setattr__(self, "initial", as_rational(self.initial))
        if not isinstance(self.increments, (MultiplierSpec, GambleProcessSpec)):
            raise DomainError(
                "increments must be a MultiplierSpec or a GambleProcessSpec"
            )
        if self.class_tag not in _CLASS_TAGS:
            raise DomainError(
                f"class_tag must be one of {', '.join(_CLASS_TAGS)}, got {self.class_tag!r}"
            )
        if self.is_multiplicative and self.initial < 0:
            raise DomainError(
                "multiplicative strategies model non-negative capital; "
                f"initial must be >= 0, got {self.initial}"
            )

    @classmethod
    def multiplicative(
        cls,
        multiplier: MultiplierSpec,
        initial: RationalLike = 1,
        class_tag: str = "C",
    ) -> "StrategySpec":
        return cls(as_rational(initial), multiplier, class_tag)

    @classmethod
    def additive(
        cls,
        increments: GambleProcessSpec,
        initial: RationalLike = 1,
        class_tag: str = "C",
    ) -> "StrategySpec":
        return cls(as_rational(initial), increments, class_tag)

    @property
    def is_multiplicative(self) -> bool:
        return isinstance(self.increments, MultiplierSpec)

    def is_temporal(self) -> bool:
        return self.increments.is_temporal()


def _base_delta(strategy: StrategySpec, situation: Situation) -> Gamble:
    """The increment gamble dM(s) of a strategy at a situation."""
    if strategy.is_multiplicative:
        value = capital_at(strategy, situation)
        factor = strategy.increments.gamble_at(situation)
        return Gamble(value * (factor.at0 - _ONE), value * (factor.at1 - _ONE))
    return strategy.increments.delta_at(situation)


# ---------------------------------------------------------------------------
# Verification reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    """A situation where the increment's upper expectation is positive."""

    situation: Situation
    excess: Fraction


@dataclass(frozen=True)
class SupermartingaleReport:
    """Outcome of a supermartingale check.

    ``mode`` records how the tree was covered: "exhaustive" (every
    situation above the depth), "temporal" (one representative per
    level, exact for temporal strategy/forecast pairs; stops at the
    shallowest violating level), or "path" (only the situations along
    a given prefix).  ``checked`` counts evaluated situations; zero-
    capital subtrees of multiplicative strategies are skipped, since
    no increment there can be nonzero.
    """

    ok: bool
    depth: int
    mode: str
    violations: tuple[Violation, ...]
    checked: int

    def __bool__(self) -> bool:
        return self.ok


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------


def process_difference(process: ProcessSpec, situation: Situation) -> Gamble:
    """The local gamble x -> F(sx) - F(s)."""
    return process.delta_at(situation)


def evaluate_capital(strategy: StrategySpec, prefix: PathPrefix) -> list[Fraction]:
    """Capital values along a prefix: [M(root), M(w_1), ..., M(w_{1:n})].

    Temporal strategies are evaluated per level without materializing
    intermediate situations; everything is exact rational arithmetic.
    """
    bits = prefix.bits
    values = [strategy.initial]
    inc = strategy.increments
    if strategy.is_multiplicative:
        if inc.is_temporal():
            for k, outcome in enumerate(bits):
                values.append(values[-1] * inc.level_gamble(k)(outcome))
        else:
            for k, outcome in enumerate(bits):
                values.append(values[-1] * inc.gamble_at(prefix.prefix(k))(outcome))
    else:
        if inc.is_temporal():
            for k, outcome in enumerate(bits):
                values.append(values[-1] + inc.level_delta(k)(outcome))
        else:
            for k, outcome in enumerate(bits):
                values.append(values[-1] + inc.delta_at(prefix.prefix(k))(outcome))
    return values


def capital_at(strategy: StrategySpec, situation: Situation) -> Fraction:
    """The strategy's capital after the history ``situation``."""
    return evaluate_capital(strategy, situation)[-1]


def _exhaustive_by_levels(
    strategy: StrategySpec, phi: ForecastSpec, depth: int
) -> SupermartingaleReport | None:
    """Exhaustive verification folded level-by-level for temporal pairs.

    When the strategy and the forecast both depend only on depth, every
    situation at a level shares one increment check, so a clean run can
    be settled with one expectation per level while counting exactly
    the situations the full walk would visit (capital that hits zero
    prunes a subtree).  Returns None when any reachable level violates:
    the caller's walk then enumerates the individual violations.
    """
    checked = 0
    inc = strategy.increments
    if strategy.is_multiplicative:
        alive = 1 if strategy.initial > 0 else 0
        for k in range(depth):
            if alive == 0:
                break
            factor = inc.level_gamble(k)
            if upper_expectation(phi.level_interval(k), factor - _ONE) > 0:
                return None
            checked += alive
            alive *= (factor.at0 > 0) + (factor.at1 > 0)
    else:
        for k in range(depth):
            if upper_expectation(phi.level_interval(k), inc.level_delta(k)) > 0:
                return None
        checked = (1 << depth) - 1
    return SupermartingaleReport(
        ok=True, depth=depth, mode="exhaustive", violations=(), checked=checked
    )


def _verify_exhaustive(
    strategy: StrategySpec, phi: ForecastSpec, depth: int
) -> SupermartingaleReport:
    if strategy.is_temporal() and phi.is_temporal():
        report = _exhaustive_by_levels(strategy, phi, depth)
        if report is not None:
            return report
    violations: list[Violation] = []
    checked = 0
    # Distinct (interval, gamble) pairs are few when forecasts and
    # strategies repeat per level, so the expectation in the inner loop
    # is memoised; capital stays positive on unpruned branches, making
    # the per-unit excess sign-equivalent to the full excess.
    memo: dict[tuple, Fraction] = {}
    if strategy.is_multiplicative:
        mult = strategy.increments
        stack: list[tuple[Situation, Fraction]] = [(Situation.root(), strategy.initial)]
        while stack:
            s, value = stack.pop()
            if len(s) >= depth or value == 0:
                continue
            factor = mult.gamble_at(s)
            checked += 1
            interval = phi.at(s)
            key = (interval.lower, interval.upper, factor.at0, factor.at1)
            unit = memo.get(key)
            if unit is None:
                unit = upper_expectation(interval, factor - _ONE)
                memo[key] = unit
            if unit > 0:
                violations.append(Violation(s, value * unit))
            stack.append((s.child(1), value * factor.at1))
            stack.append((s.child(0), value * factor.at0))
    else:
        inc = strategy.increments
        stack = [Situation.root()]
        while stack:
            s = stack.pop()
            if len(s) >= depth:
                continue
            checked += 1
            delta = inc.delta_at(s)
            interval = phi.at(s)
            key = (interval.lower, interval.upper, delta.at0, delta.at1)
            excess = memo.get(key)
            if excess is None:
                excess = upper_expectation(interval, delta)
                memo[key] = excess
            if excess > 0:
                violations.append(Violation(s, excess))
            stack.append(s.child(1))
            stack.append(s.child(0))
    violations.sort(key=lambda v: (len(v.situation), v.situation.bits))
    return SupermartingaleReport(
        ok=not violations,
        depth=depth,
        mode="exhaustive",
        violations=tuple(violations),
        checked=checked,
    )


def _verify_temporal(
    strategy: StrategySpec, phi: ForecastSpec, depth: int
) -> SupermartingaleReport:
    violations: list[Violation] = []
    checked = 0
    inc = strategy.increments
    if strategy.is_multiplicative:
        const_factor = inc.constant_gamble()
        const_interval = phi.constant_interval()
        single_check = const_factor is not None and const_interval is not None
        value = strategy.initial
        witness: list[int] = []
        for level in range(depth):
            if value == 0:
                break
            factor = inc.level_gamble(level)
            checked += 1
            excess = value * upper_expectation(phi.level_interval(level), factor - _ONE)
            if excess > 0:
                violations.append(Violation(Situation(tuple(witness)), excess))
                break
            if single_check:
                # Identical check at every level while capital stays
                # positive; one clean pass settles them all.
                break
            if factor.at0 > 0:
                witness.append(0)
                value *= factor.at0
            elif factor.at1 > 0:
                witness.append(1)
                value *= factor.at1
            else:
                value = _ZERO
    else:
        const_delta = inc.constant_delta()
        const_interval = phi.constant_interval()
        single_check = const_delta is not None and const_interval is not None
        for level in range(depth):
            delta = inc.level_delta(level)
            checked += 1
            excess = upper_expectation(phi.level_interval(level), delta)
            if excess > 0:
                violations.append(Violation(_level_witness(level), excess))
                break
            if single_check:
                break
    return SupermartingaleReport(
        ok=not violations,
        depth=depth,
        mode="temporal",
        violations=tuple(violations),
        checked=checked,
    )


def is_supermartingale(
    strategy: StrategySpec, phi: ForecastSpec, depth: int
) -> SupermartingaleReport:
    """Checks upper_E_{phi(s)}(dM(s)) <= 0 at every situation with |s| < depth.

    Depths within the configured cap are verified exhaustively over all
    2^depth - 1 situations with every violation listed.  Greater depths
    are accepted only when both the strategy and the forecast are
    temporal, in which case one representative per level is exact and
    the report stops at the shallowest violating level.
    """
    depth = int(depth)
    if depth < 0:
        raise DomainError(f"depth must be >= 0, got {depth}")
    if depth <= verification_depth_cap():
        return _verify_exhaustive(strategy, phi, depth)
    if strategy.is_temporal() and phi.is_temporal():
        return _verify_temporal(strategy, phi, depth)
    raise ResourceError(
        f"exhaustive verification to depth {depth} exceeds the cap "
        f"{verification_depth_cap()} and the strategy/forecast pair is not temporal"
    )


def verify_along_path(
    strategy: StrategySpec, phi: ForecastSpec, prefix: PathPrefix
) -> SupermartingaleReport:
    """Checks the supermartingale condition at the situations along a prefix.

    A fallback audit for strategies too deep and too irregular for
    :func:`is_supermartingale`: only the bets actually placed along
    ``prefix`` are inspected.
    """
    violations: list[Violation] = []
    checked = 0
    bits = prefix.bits
    if strategy.is_multiplicative:
        mult = strategy.increments
        value = strategy.initial
        for k in range(len(bits)):
            s = prefix.prefix(k)
            if value == 0:
                break
            factor = mult.gamble_at(s)
            checked += 1
            excess = value * upper_expectation(phi.at(s), factor - _ONE)
            if excess > 0:
                violations.append(Violation(s, excess))
            value *= factor(bits[k])
    else:
        inc = strategy.increments
        for k in range(len(bits)):
            s = prefix.prefix(k)
            checked += 1
            excess = upper_expectation(phi.at(s), inc.delta_at(s))
            if excess > 0:
                violations.append(Violation(s, excess))
    return SupermartingaleReport(
        ok=not violations,
        depth=len(bits),
        mode="path",
        violations=tuple(violations),
        checked=checked,
    )


def rescale_test_process(
    strategy: StrategySpec, cutoff: int, scale: int
) -> StrategySpec:
    """Clips a capital process: 1 at levels <= cutoff, T(s)/scale deeper.

    The result starts at 1, stays parked at 1 through the cutoff level,
    and continues as the base capital divided by ``scale`` beyond it;
    choosing ``scale`` at least the base's maximum capital on level
    cutoff + 1 keeps the clipped process below 1 there, and it is a
    supermartingale for any forecast the base is one for beyond the
    cutoff.  Multiplicative strategies stay multiplicative, additive
    stay additive.
    """
    if strategy.is_multiplicative:
        increments: IncrementSpec = RescaledMultiplier(strategy, cutoff, scale)
    else:
        increments = RescaledGambleProcess(strategy, cutoff, scale)
    return StrategySpec(_ONE, increments, strategy.class_tag)


def max_capital_at_level(strategy: StrategySpec, level: int) -> Fraction:
    """The largest capital the strategy attains over all level-``level`` histories.

    Enumerates the full level, so it is subject to the verification
    depth cap; useful for picking a clipping scale.
    """
    level = int(level)
    if level < 0:
        raise DomainError(f"level must be >= 0, got {level}")
    if level > verification_depth_cap():
        raise ResourceError(
            f"enumerating level {level} exceeds the depth cap {verification_depth_cap()}"
        )
    best: Fraction | None = None
    for s in situations_at_level(level):
        value = capital_at(strategy, s)
        if best is None or value > best:
            best = value
    assert best is not None
    return best


def selection_from_process(
    process: ProcessSpec, rate: RationalLike, horizon: int
) -> TemporalMaskSelection:
    """The temporal selection firing where the process can grow under rate r.

    Epoch n (for n < horizon) is selected iff E_r(dF(s)) > 0 for some
    situation s at level n.  Temporal processes need one evaluation per
    level; non-temporal ones are enumerated exhaustively per level,
    subject to the configured depth cap.  Applied to the counting
    process of a temporal selection this returns that selection back,
    whatever the rate.
    """
    rate = as_rational(rate)
    if not (_ZERO <= rate <= _ONE):
        raise DomainError(f"rate must lie in [0, 1], got {rate}")
    horizon = int(horizon)
    if horizon < 0:
        raise DomainError(f"horizon must be >= 0, got {horizon}")
    if not process.is_temporal():
        cap = verification_depth_cap()
        if horizon > cap:
            raise ResourceError(
                f"deriving a selection from a non-temporal process to horizon "
                f"{horizon} exceeds the depth cap {cap}"
            )
    mask = tuple(_selection_level(process, rate, n) for n in range(horizon))
    return TemporalMaskSelection(mask)
