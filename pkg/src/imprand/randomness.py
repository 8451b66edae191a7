"""Finite-prefix randomness diagnostics.

Two complementary instruments, both reporting evidence at a horizon n
rather than verdicts about infinite paths (no finite prefix can decide
randomness):

* **Betting batteries.**  :func:`run_battery` drives verified
  supermartingale strategies along an observed prefix and reports how
  much capital each accumulates, where the running maximum occurs, and
  where (if anywhere) the capital first exceeds each growth function's
  threshold.  Large capital is evidence against the forecasting system;
  a capital process that beats an unbounded growth function is the
  stronger, effectively-witnessed version of that evidence.

* **Frequency statistics.**  :func:`church_statistic` computes, for a
  selection process S and forecast phi, the running deviation ratios

      lower stat = sum_k S_k (w_{k+1} - lower(phi(w_{1:k}))) / sum_k S_k
      upper stat = sum_k S_k (w_{k+1} - upper(phi(w_{1:k}))) / sum_k S_k

  which a forecast-conforming path should keep respectively above and
  below zero (up to tolerance) on every selected subsequence.

:func:`build_selection_battery` derives selections from value processes
(the selection fires where the process can grow in expectation), and
:func:`estimate_interval` inverts the frequency view: the hull of the
selected-subsequence frequencies over a battery is the tightest
stationary interval the battery cannot reject.

Exactness policy: every reported number is an exact rational.  Long
multiplicative trajectories are scanned in floating point (logarithms)
only to locate candidate extrema and threshold crossings, each of which
is then confirmed in exact arithmetic before being reported.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import ClassVar, Sequence

import numpy as np

from .errors import DepthError, DomainError, ResourceError, StrategyRejectedError
from .forecasts import ForecastSpec
from .local import IntervalForecast
from .processes import (
    AlwaysSelection,
    FollowSymbolSelection,
    FromProcessSelection,
    NeverSelection,
    ProcessSpec,
    SelectionSpec,
    StrategySpec,
    TemporalMaskSelection,
    evaluate_capital,
    is_supermartingale,
    selection_from_process,
    verify_along_path,
)
from .rationals import RationalLike, as_rational
from .situations import PathPrefix

_ZERO = Fraction(0)
_ONE = Fraction(1)

DEFAULT_MIN_COUNT = 30
DEFAULT_TOLERANCE = _ZERO

# Float-log scans locate candidates conservatively with this margin and
# confirm them exactly; the accumulated rounding error of the scans is
# orders of magnitude below it for any horizon this package handles.
_LOG_MARGIN = 1e-6
# Above this many near-maximal candidates the trajectory is nearly flat
# in log scale, which makes the exact incremental scan cheap; switch to it.
_MAX_CANDIDATES = 4096
# Vectorized trajectory scans need the per-step factors to come from a
# small alphabet so exact powers can reconstruct any step's value.
_MAX_DISTINCT_FACTORS = 16


# ---------------------------------------------------------------------------
# Growth functions
# ---------------------------------------------------------------------------


class GrowthFn:
    """A non-decreasing, non-negative threshold sequence tau(n).

    The named kinds are unbounded by construction; the table kind is a
    finite window whose extension is up to the caller, so only
    monotonicity and non-negativity are checked for it.
    """

    kind: ClassVar[str]

    def value_at(self, n: int) -> Fraction:
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class LinearGrowth(GrowthFn):
    """tau(n) = slope * n with slope > 0."""

    slope: Fraction

    kind: ClassVar[str] = "linear"

    def __post_init__(self):
        slope = as_rational(self.slope)
        if slope <= 0:
            raise DomainError(f"linear growth needs slope > 0, got {slope}")
        object.__setattr__(self, "slope", slope)

    def value_at(self, n: int) -> Fraction:
        if n < 0:
            raise DomainError(f"growth functions are defined for n >= 0, got {n}")
        return self.slope * n

    def describe(self) -> str:
        return f"linear({self.slope})"


@dataclass(frozen=True)
class Log2FloorGrowth(GrowthFn):
    """tau(n) = floor(log2 n) for n >= 1, and 0 at n = 0."""

    kind: ClassVar[str] = "log2_floor"

    def value_at(self, n: int) -> Fraction:
        if n < 0:
            raise DomainError(f"growth functions are defined for n >= 0, got {n}")
        return Fraction(n.bit_length() - 1 if n >= 1 else 0)

    def describe(self) -> str:
        return "log2_floor"


@dataclass(frozen=True)
class SqrtFloorGrowth(GrowthFn):
    """tau(n) = floor(sqrt(n))."""

    kind: ClassVar[str] = "sqrt_floor"

    def value_at(self, n: int) -> Fraction:
        if n < 0:
            raise DomainError(f"growth functions are defined for n >= 0, got {n}")
        return Fraction(math.isqrt(n))

    def describe(self) -> str:
        return "sqrt_floor"


@dataclass(frozen=True)
class TableGrowth(GrowthFn):
    """tau given by an explicit finite table of values."""

    values: tuple[Fraction, ...]

    kind: ClassVar[str] = "table"

    def __post_init__(self):
        values = tuple(as_rational(v) for v in self.values)
        if not values:
            raise DomainError("growth table needs at least one value")
        if values[0] < 0:
            raise DomainError("growth values must be >= 0")
        if any(b < a for a, b in zip(values, values[1:])):
            raise DomainError("growth table must be non-decreasing")
        object.__setattr__(self, "values", values)

    def value_at(self, n: int) -> Fraction:
        if n < 0:
            raise DomainError(f"growth functions are defined for n >= 0, got {n}")
        if n >= len(self.values):
            raise DepthError(
                f"growth table of length {len(self.values)} has no value at {n}"
            )
        return self.values[n]

    def describe(self) -> str:
        return f"table[{len(self.values)}]"


def default_growth_functions() -> tuple[GrowthFn, ...]:
    """The standard reporting set: slow linear, square root, and log."""
    return (LinearGrowth(Fraction(1, 100)), SqrtFloorGrowth(), Log2FloorGrowth())


# ---------------------------------------------------------------------------
# Report types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BatteryResult:
    """One strategy's capital summary along a prefix.

    ``argmax_step`` is the first step attaining the maximum.
    ``exceedances`` holds, per growth function, the first step n whose
    capital reaches tau(n), restricted to steps where tau(n) > 1
    (thresholds at or below the starting capital carry no evidence),
    or None if the capital never gets there.
    """

    max_capital: Fraction
    argmax_step: int
    final_capital: Fraction
    exceedances: tuple[int | None, ...]


@dataclass(frozen=True)
class FreqReport:
    """Frequency diagnostics of one selection against a forecast.

    When nothing is selected the frequency and both statistics are
    reported as 0 and the verdict is insufficient_data.
    """

    count: int
    frequency: Fraction
    lower_statistic: Fraction
    upper_statistic: Fraction
    verdict: str


PASS = "pass"
FAIL_LOW = "fail_low"
FAIL_HIGH = "fail_high"
INSUFFICIENT = "insufficient_data"


# ---------------------------------------------------------------------------
# Internal: trajectory scanning
# ---------------------------------------------------------------------------


def _bits_array(prefix: PathPrefix) -> np.ndarray:
    return np.asarray(prefix.bits, dtype=np.uint8)


def _float_log(value: Fraction) -> float:
    if value == 0:
        return float("-inf")
    return math.log(value.numerator) - math.log(value.denominator)


def _growth_float_values(growth: GrowthFn, n: int) -> np.ndarray:
    steps = np.arange(n + 1, dtype=np.float64)
    if isinstance(growth, LinearGrowth):
        return float(growth.slope) * steps
    if isinstance(growth, SqrtFloorGrowth):
        return np.floor(np.sqrt(steps))
    if isinstance(growth, Log2FloorGrowth):
        with np.errstate(divide="ignore"):
            vals = np.floor(np.log2(np.maximum(steps, 1.0)))
        return vals
    return np.array([float(growth.value_at(k)) for k in range(n + 1)], dtype=np.float64)


def _first_exceedance_exact(
    capitals: Sequence[Fraction], growth: GrowthFn
) -> int | None:
    for n, value in enumerate(capitals):
        tau = growth.value_at(n)
        if tau > 1 and value >= tau:
            return n
    return None


def _stats_from_exact(
    capitals: Sequence[Fraction], growth_fns: Sequence[GrowthFn]
) -> BatteryResult:
    best = capitals[0]
    best_at = 0
    for n, value in enumerate(capitals):
        if value > best:
            best, best_at = value, n
    return BatteryResult(
        max_capital=best,
        argmax_step=best_at,
        final_capital=capitals[-1],
        exceedances=tuple(_first_exceedance_exact(capitals, g) for g in growth_fns),
    )


class _FactorTrajectory:
    """Exact random access into a product-of-factors capital trajectory.

    The per-step factors take values in a small alphabet, so the exact
    capital at any step is the product of alphabet values raised to
    their running counts; a float cumulative-log array locates
    interesting steps first.
    """

    def __init__(self, alphabet: list[Fraction], ids: np.ndarray):
        self.alphabet = alphabet
        # counts[k][i] = how many of the first k factors are alphabet[i]
        self._cumulative = np.zeros((len(ids) + 1, len(alphabet)), dtype=np.int64)
        for i in range(len(alphabet)):
            np.cumsum(ids == i, out=self._cumulative[1:, i])
        logs = np.array([_float_log(f) for f in alphabet], dtype=np.float64)
        with np.errstate(invalid="ignore"):
            self.log_capital = np.concatenate(
                ([0.0], np.cumsum(logs[ids], dtype=np.float64))
            )

    def exact_at(self, step: int) -> Fraction:
        value = _ONE
        for i, factor in enumerate(self.alphabet):
            count = int(self._cumulative[step, i])
            if count:
                value *= factor**count
        return value


def _trajectory_result(
    strategy: StrategySpec, prefix: PathPrefix, growth_fns: Sequence[GrowthFn]
) -> BatteryResult:
    n = len(prefix)
    fast = None
    if strategy.is_multiplicative and n > 64:
        fast = _factor_trajectory(strategy, prefix)
    if fast is None:
        return _stats_from_exact(evaluate_capital(strategy, prefix), growth_fns)

    logs = fast.log_capital
    # Maximum: confirm every near-maximal candidate exactly.
    top = logs.max()
    candidates = np.nonzero(logs >= top - _LOG_MARGIN)[0]
    if len(candidates) > _MAX_CANDIDATES:
        return _stats_from_exact(evaluate_capital(strategy, prefix), growth_fns)
    best: Fraction | None = None
    best_at = 0
    for step in candidates:
        value = fast.exact_at(int(step))
        if best is None or value > best:
            best, best_at = value, int(step)
    assert best is not None

    final = fast.exact_at(n)

    exceedances: list[int | None] = []
    for growth in growth_fns:
        taus = _growth_float_values(growth, n)
        with np.errstate(divide="ignore"):
            log_taus = np.log(np.maximum(taus, 0.0))
        hits = np.nonzero(
            (taus > 1.0 - 1e-9) & (logs >= log_taus - _LOG_MARGIN)
        )[0]
        found: int | None = None
        for step in hits:
            k = int(step)
            tau = growth.value_at(k)
            if tau > 1 and fast.exact_at(k) >= tau:
                found = k
                break
        exceedances.append(found)

    return BatteryResult(
        max_capital=best,
        argmax_step=best_at,
        final_capital=final,
        exceedances=tuple(exceedances),
    )


def _factor_trajectory(
    strategy: StrategySpec, prefix: PathPrefix
) -> _FactorTrajectory | None:
    """Per-step factors of a multiplicative strategy, if cheaply available."""
    if strategy.initial != 1:
        return None
    inc = strategy.increments
    bits = prefix.bits
    n = len(bits)
    alphabet: list[Fraction] = []
    index: dict[Fraction, int] = {}
    ids = np.empty(n, dtype=np.int64)
    const = inc.constant_gamble()
    if const is not None:
        for value in (const.at0, const.at1):
            if value not in index:
                index[value] = len(alphabet)
                alphabet.append(value)
        lookup = np.array([index[const.at0], index[const.at1]], dtype=np.int64)
        ids = lookup[_bits_array(prefix)]
        return _FactorTrajectory(alphabet, ids)
    if not inc.is_temporal():
        return None
    for k in range(n):
        factor = inc.level_gamble(k)(bits[k])
        i = index.get(factor)
        if i is None:
            if len(alphabet) >= _MAX_DISTINCT_FACTORS:
                return None
            i = len(alphabet)
            index[factor] = i
            alphabet.append(factor)
        ids[k] = i
    return _FactorTrajectory(alphabet, ids)


# ---------------------------------------------------------------------------
# Battery runs
# ---------------------------------------------------------------------------


def run_battery(
    prefix: PathPrefix,
    phi: ForecastSpec,
    strategies: Sequence[StrategySpec],
    growth: Sequence[GrowthFn] | None = None,
) -> list[BatteryResult]:
    """Capital summaries of verified test strategies along a prefix.

    Every strategy must start with capital 1 and pass the
    supermartingale check against ``phi`` over the prefix's depth —
    only bets the forecaster actually offers count as evidence.  The
    check is exhaustive within the depth cap, per-level for temporal
    strategy/forecast pairs beyond it, and confined to the situations
    along the prefix otherwise.  A failing strategy raises
    :class:`StrategyRejectedError` naming a violating situation.
    """
    growth_fns = tuple(default_growth_functions() if growth is None else growth)
    results = []
    for position, strategy in enumerate(strategies):
        if strategy.initial != 1:
            raise DomainError(
                f"battery strategies start at capital 1, got {strategy.initial} "
                f"(strategy {position})"
            )
        try:
            report = is_supermartingale(strategy, phi, len(prefix))
        except ResourceError:
            report = verify_along_path(strategy, phi, prefix)
        if not report.ok:
            where = report.violations[0].situation
            raise StrategyRejectedError(
                f"strategy {position} is not a supermartingale for the forecast: "
                f"positive-price increment at situation {where}",
                situation=where,
            )
        results.append(_trajectory_result(strategy, prefix, growth_fns))
    return results


# ---------------------------------------------------------------------------
# Frequency statistics
# ---------------------------------------------------------------------------


def _selection_mask(selection: SelectionSpec, n: int, bits: np.ndarray) -> np.ndarray | None:
    """Boolean step mask of a selection along a prefix, when vectorizable."""
    if isinstance(selection, AlwaysSelection):
        return np.ones(n, dtype=bool)
    if isinstance(selection, NeverSelection):
        return np.zeros(n, dtype=bool)
    if isinstance(selection, TemporalMaskSelection):
        if len(selection.mask) < n:
            raise DepthError(
                f"mask of length {len(selection.mask)} has no entry for level {n - 1}"
            )
        return np.asarray(selection.mask[:n], dtype=np.uint8).astype(bool)
    if isinstance(selection, FollowSymbolSelection):
        mask = np.zeros(n, dtype=bool)
        if n > 1:
            mask[1:] = bits[:-1] == selection.symbol
        return mask
    if isinstance(selection, FromProcessSelection):
        return np.array(
            [bool(selection.level_value(k)) for k in range(n)], dtype=bool
        )
    return None


def church_statistic(
    prefix: PathPrefix,
    selection: SelectionSpec,
    phi: ForecastSpec,
    *,
    tolerance: RationalLike = DEFAULT_TOLERANCE,
    min_count: int = DEFAULT_MIN_COUNT,
) -> FreqReport:
    """Deviation statistics of the selected subsequence against a forecast.

    With fewer than ``min_count`` selected outcomes the verdict is
    insufficient_data.  Otherwise the verdict is fail_low when the
    lower statistic drops below -tolerance (selected outcomes run under
    the forecast's lower rates), fail_high when the upper statistic
    rises above +tolerance, and pass when neither happens.  Since the
    lower statistic never falls below the upper one, the two failure
    modes are mutually exclusive.
    """
    tolerance = as_rational(tolerance)
    if tolerance < 0:
        raise DomainError(f"tolerance must be >= 0, got {tolerance}")
    min_count = int(min_count)
    if min_count < 1:
        raise DomainError(f"min_count must be >= 1, got {min_count}")

    n = len(prefix)
    bits = _bits_array(prefix)
    mask = _selection_mask(selection, n, bits)
    const = phi.constant_interval()

    if mask is not None and const is not None:
        count = int(mask.sum())
        ones = int(bits[mask].sum())
        low_sum = ones - count * const.lower
        high_sum = ones - count * const.upper
    elif mask is not None and phi.is_temporal():
        count = int(mask.sum())
        ones = int(bits[mask].sum())
        low_sum = Fraction(ones)
        high_sum = Fraction(ones)
        for k in np.nonzero(mask)[0]:
            interval = phi.level_interval(int(k))
            low_sum -= interval.lower
            high_sum -= interval.upper
    else:
        count = 0
        ones = 0
        low_sum = _ZERO
        high_sum = _ZERO
        for k in range(n):
            s = prefix.prefix(k)
            if not selection.at(s):
                continue
            interval = phi.at(s)
            count += 1
            ones += prefix.bits[k]
            low_sum += prefix.bits[k] - interval.lower
            high_sum += prefix.bits[k] - interval.upper

    if count == 0:
        return FreqReport(0, _ZERO, _ZERO, _ZERO, INSUFFICIENT)
    frequency = Fraction(ones, count)
    lower_stat = low_sum / count
    upper_stat = high_sum / count
    if count < min_count:
        verdict = INSUFFICIENT
    elif lower_stat < -tolerance:
        verdict = FAIL_LOW
    elif upper_stat > tolerance:
        verdict = FAIL_HIGH
    else:
        verdict = PASS
    return FreqReport(count, frequency, lower_stat, upper_stat, verdict)


def selection_frequency(
    prefix: PathPrefix, selection: SelectionSpec
) -> tuple[int, Fraction]:
    """(count, frequency of ones) of the selected subsequence; (0, 0) if empty."""
    n = len(prefix)
    bits = _bits_array(prefix)
    mask = _selection_mask(selection, n, bits)
    if mask is not None:
        count = int(mask.sum())
        ones = int(bits[mask].sum())
    else:
        count = 0
        ones = 0
        for k in range(n):
            if selection.at(prefix.prefix(k)):
                count += 1
                ones += prefix.bits[k]
    if count == 0:
        return 0, _ZERO
    return count, Fraction(ones, count)


# ---------------------------------------------------------------------------
# Batteries of selections and interval estimation
# ---------------------------------------------------------------------------


def build_selection_battery(
    p: RationalLike,
    q: RationalLike,
    processes: Sequence[ProcessSpec],
    horizon: int,
) -> list[TemporalMaskSelection]:
    """Selections derived from each process at each of the two rates.

    For every process F and rate r in (p, q), in that order, the
    derived selection fires at the levels where F can grow in
    expectation under r; duplicates (by evaluated mask up to the
    horizon) are dropped, keeping first appearances.
    """
    p = as_rational(p)
    q = as_rational(q)
    for rate in (p, q):
        if not (_ZERO <= rate <= _ONE):
            raise DomainError(f"rates must lie in [0, 1], got {rate}")
    battery: list[TemporalMaskSelection] = []
    seen: set[tuple[int, ...]] = set()
    for process in processes:
        for rate in (p, q):
            sel = selection_from_process(process, rate, horizon)
            if sel.mask not in seen:
                seen.add(sel.mask)
                battery.append(sel)
    return battery


def estimate_interval(
    prefix: PathPrefix,
    battery: Sequence[SelectionSpec],
    min_count: int = DEFAULT_MIN_COUNT,
) -> IntervalForecast:
    """The hull of selected-subsequence frequencies over a battery.

    Selections whose count along the prefix falls short of
    ``min_count`` are ignored; if none qualifies the vacuous interval
    [0, 1] is returned.  The result always contains the frequency of
    every qualifying selection, so enlarging the battery can only
    widen it.
    """
    if not battery:
        raise DomainError("estimation needs a nonempty selection battery")
    min_count = int(min_count)
    if min_count < 1:
        raise DomainError(f"min_count must be >= 1, got {min_count}")
    lo: Fraction | None = None
    hi: Fraction | None = None
    for selection in battery:
        count, frequency = selection_frequency(prefix, selection)
        if count < min_count:
            continue
        if lo is None or frequency < lo:
            lo = frequency
        if hi is None or frequency > hi:
            hi = frequency
    if lo is None or hi is None:
        return IntervalForecast.vacuous()
    return IntervalForecast(lo, hi)
