"""Capital processes on the binary tree and supermartingale checks.

A strategy starts with capital 1 and updates it at every situation
(finite history of outcomes).  Multiplicative strategies scale capital
by a non-negative factor gamble; additive ones add a gamble.  Against a
forecast the strategy is a supermartingale when no situation lets it
expect a gain, and the verifier reports every situation that does.
"""

from fractions import Fraction as F

from imprand import (
    ConstantGambleProcess,
    Gamble,
    IntervalForecast,
    KellyBuyMultiplier,
    PathPrefix,
    StationaryForecast,
    StrategySpec,
    evaluate_capital,
    is_supermartingale,
    max_capital_at_level,
    rescale_test_process,
)

band = IntervalForecast(F(1, 4), F(3, 4))
forecast = StationaryForecast(band)

# A proportional bet on outcome 1 priced at the top of the band: risks
# half the current capital, never goes negative.
kelly = StrategySpec.multiplicative(KellyBuyMultiplier(band, F(1, 2)))
print("factor gamble:", kelly.increments.gamble_at(PathPrefix(())))

for history in [(1, 1, 1), (1, 0, 1), (0,)]:
    capitals = evaluate_capital(kelly, PathPrefix(history))
    print(f"capital along {history}: {[str(c) for c in capitals]}")

# The verifier walks every situation to the requested depth.
report = is_supermartingale(kelly, forecast, 12)
print(f"\nkelly vs band: ok={report.ok} mode={report.mode} checked={report.checked}")

# An even-money additive bet on outcome 1 is NOT acceptable to this
# forecaster: at every situation the expected change tops out at +1/2.
even_money = StrategySpec.additive(ConstantGambleProcess(Gamble(F(-1), F(1))))
report = is_supermartingale(even_money, forecast, 2)
print(f"even-money vs band: ok={report.ok}")
for violation in report.violations:
    print(f"  situation {violation.situation.to_string()!r:6} expects +{violation.excess}")

# Deep checks stay cheap when strategy and forecast depend only on the
# clock: one exact check per level instead of 2^depth situations.
deep = is_supermartingale(kelly, forecast, 10_000)
print(f"depth 10^4: ok={deep.ok} mode={deep.mode} checks={deep.checked}")

# A capital process can be rescaled so that everything below a cutoff
# level is frozen and later values are divided by a power of two --
# useful for turning "grows without bound" into "exceeds 1 eventually"
# without losing the supermartingale property.
print("\nmax capital of kelly at level 5:", max_capital_at_level(kelly, 5))
shrunk = rescale_test_process(kelly, cutoff=5, scale=4)
print("rescaled max at level 5:", max_capital_at_level(shrunk, 5))
print("rescaled still a supermartingale:", is_supermartingale(shrunk, forecast, 8).ok)
