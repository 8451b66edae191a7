"""Forecast systems driven by a hidden path, and what they give away.

A witness system forecasts the next outcome as exactly q when the bit
of a hidden driving path is 1 and exactly p when it is 0.  Every such
system stays inside the stationary band [p, q], so any strategy that
is safe for the band is safe for every witness system.  At the extreme,
a perfect forecaster predicts its own path outright — and then no test
strategy can ever multiply its initial capital.
"""

from fractions import Fraction as F

from imprand import (
    CountingProcess,
    ExplicitTableMultiplier,
    FromProcessSelection,
    Gamble,
    GatedMultiplier,
    IntervalForecast,
    KellyBuyMultiplier,
    PathPrefix,
    PerfectForecast,
    StationaryForecast,
    StrategySpec,
    TemporalMaskSelection,
    WitnessForecast,
    canonical_path,
    contains,
    eval_forecast,
    evaluate_capital,
    is_supermartingale,
    run_battery,
    selection_from_process,
    situations_at_level,
)

p, q = F(1, 4), F(3, 4)
band = StationaryForecast(IntervalForecast(p, q))

# The driving path 110 pins the forecast at q, q, p by level.
driven = WitnessForecast(p, q, PathPrefix((1, 1, 0)))
for level, history in enumerate([(), (0,), (0, 1)]):
    print(f"level {level}: forecast {eval_forecast(driven, PathPrefix(history))}")

# Pointwise the witness system sits inside the band...
print("inside the band:", contains(driven, band, depth=2))

# ...so the band's supermartingales transfer to it automatically.
kelly = StrategySpec.multiplicative(KellyBuyMultiplier(IntervalForecast(p, q), F(1, 2)))
print("kelly safe for band:   ", is_supermartingale(kelly, band, 10).ok)
print("kelly safe for witness:", is_supermartingale(kelly, driven, 3).ok)

# A perfect forecaster announces its own path outright.  Any strategy
# that is safe for it — here one that stakes everything against each
# announcement — can never lift its capital above the start along the
# predicted path, however wildly it would win on any deviation.
omega = PathPrefix((1, 0, 0, 1))
seer = PerfectForecast(omega)
contrarian = StrategySpec.multiplicative(
    ExplicitTableMultiplier(
        4,
        {
            sit: Gamble(F(0), F(2)) if omega.bits[level] == 0 else Gamble(F(2), F(0))
            for level in range(4)
            for sit in situations_at_level(level)
        },
    )
)
print("\ncontrarian safe for the seer:", is_supermartingale(contrarian, seer, 4).ok)
print(
    "capital along the predicted path:",
    [str(c) for c in evaluate_capital(contrarian, omega)],
)
print(
    "capital when the seer errs at once:",
    [str(c) for c in evaluate_capital(contrarian, PathPrefix((0,)))],
)

# A computable path cannot look random: its own bits form a computable
# betting schedule.  Here the alternating sequence 0101... is taken to
# the cleaners — betting only at levels whose next bit is 1 multiplies
# capital by 7/6 five thousand times while staying fair for the band.
path = canonical_path("alternating", 10_000)
marked = TemporalMaskSelection(path.bits)
schedule = FromProcessSelection(CountingProcess(marked), F(1, 2))
gated = StrategySpec.multiplicative(
    GatedMultiplier(KellyBuyMultiplier(IntervalForecast(p, q), F(1, 2)), schedule)
)
(result,) = run_battery(path, band, [gated])
digits = len(str(int(result.final_capital)))
print(f"\nfinal capital on 0101... : (7/6)^5000, a {digits}-digit number")
print("thresholds first crossed at steps:", result.exceedances)

# The schedule itself round-trips through its counting process.
recovered = selection_from_process(CountingProcess(marked), F(1, 2), 10)
print("recovered schedule mask, first 10 levels:", recovered.mask)
