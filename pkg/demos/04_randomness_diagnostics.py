"""Diagnosing a recorded outcome sequence against an interval forecast.

Two complementary instruments are run over a finite prefix.  Frequency
checks pick subsequences with selection rules and ask whether the share
of ones stays inside the forecast band.  Betting checks run a battery
of strategies and watch for capital growing past computable thresholds.
A sequence that lets any of them win is not random for the forecast.
"""

from fractions import Fraction as F

from imprand import (
    AlwaysSelection,
    FollowSymbolSelection,
    IntervalForecast,
    KellyBuyMultiplier,
    LinearGrowth,
    SqrtFloorGrowth,
    StationaryForecast,
    StrategySpec,
    church_statistic,
    estimate_interval,
    run_battery,
    sample_path,
    selection_frequency,
)

band = IntervalForecast(F(1, 4), F(3, 4))
forecast = StationaryForecast(band)

# Draw 20,000 fair-coin outcomes from seed 2026 (bit-reproducible).
source = StationaryForecast(IntervalForecast(F(1, 2), F(1, 2)))
path = sample_path(source, 20_000, 2026)
count, share = selection_frequency(path, AlwaysSelection())
print(f"observed {count} outcomes, share of ones = {share} ~ {float(share):.4f}")

# Frequency check: the share along every chosen subsequence must stay
# within [1/4, 3/4] (up to a tolerance for finite samples).
for name, rule in [
    ("all positions ", AlwaysSelection()),
    ("after a zero  ", FollowSymbolSelection(0)),
    ("after a one   ", FollowSymbolSelection(1)),
]:
    report = church_statistic(path, rule, forecast, tolerance=F(1, 50))
    print(
        f"  {name} count={report.count:6d} share={float(report.frequency):.4f} "
        f"verdict={report.verdict}"
    )

# Betting check: proportional bets priced at the edges of the band must
# not multiply capital past computable thresholds.  Capitals are exact
# fractions; only the display below rounds them.
def order_of_magnitude(value):
    if value == 0:
        return "0"
    shift = value.numerator.bit_length() - value.denominator.bit_length()
    return f"~10^{shift * 30103 // 100000}"


battery = [
    StrategySpec.multiplicative(KellyBuyMultiplier(band, F(1, 4))),
    StrategySpec.multiplicative(KellyBuyMultiplier(band, F(1, 2))),
]
growth = (LinearGrowth(F(1, 100)), SqrtFloorGrowth())
for stake, result in zip(("1/4", "1/2"), run_battery(path, forecast, battery, growth)):
    print(
        f"  stake {stake}: max capital {float(result.max_capital):.4f} "
        f"at step {result.argmax_step}, final {order_of_magnitude(result.final_capital)}, "
        f"threshold crossings {result.exceedances}"
    )

# The same battery of selection rules can run in reverse: find the
# narrowest band every rule's subsequence share fits into.
rules = [AlwaysSelection(), FollowSymbolSelection(0), FollowSymbolSelection(1)]
estimate = estimate_interval(path, rules)
print(f"narrowest compatible band: [{estimate.lower}, {estimate.upper}]")

# A heavily biased source fails the same diagnostics against the band.
biased = sample_path(StationaryForecast(IntervalForecast(F(9, 10), F(9, 10))), 20_000, 7)
report = church_statistic(biased, AlwaysSelection(), forecast, tolerance=F(1, 50))
print(f"\nbiased source: share={float(report.frequency):.4f} verdict={report.verdict}")
