"""Exact prices for finite-horizon payoffs by backward recursion.

A depth-n payoff assigns a rational to every length-n outcome string.
Folding the tree from the leaves to the root through the per-situation
interval forecasts yields its exact upper and lower price.  A deliberate
second opinion — brute-force enumeration of every way to pick an
endpoint of every interval — must agree wherever it is feasible.
"""

from fractions import Fraction as F

from imprand import (
    AlternatingForecast,
    ClopenEvent,
    DepthGamble,
    IntervalForecast,
    PathPrefix,
    PerfectForecast,
    StationaryForecast,
    global_lower_expectation,
    global_upper_expectation,
    lower_probability,
    upper_expectation_enum_oracle,
    upper_probability,
)

band = StationaryForecast(IntervalForecast(F(1, 4), F(3, 4)))

# "The first two outcomes agree" pays 1 on 00 and 11.
agree = DepthGamble.from_map(2, {"00": 1, "01": 0, "10": 0, "11": 1})
print("upper price:", global_upper_expectation(band, agree))
print("lower price:", global_lower_expectation(band, agree))
print("oracle says:", upper_expectation_enum_oracle(band, agree))

# Payoffs form a small vector space; prices respond exactly.
doubled_shifted = agree * F(2) + F(3)
print("2*payoff + 3 upper:", global_upper_expectation(band, doubled_shifted))

# Events are payoff functions too: indicator of a set of histories.
event = ClopenEvent.from_strings(2, ["11", "10"])  # "first outcome is 1"
print("\nP_upper(first is 1):", upper_probability(band, event))
print("P_lower(first is 1):", lower_probability(band, event))
print(
    "complement identity:",
    upper_probability(band, event.complement()) + lower_probability(band, event),
)

# A perfect forecaster concentrates all probability on one path.
oracle_forecast = PerfectForecast(PathPrefix((1, 1)))
print("\nperfect forecaster, P(11):", upper_probability(oracle_forecast, ClopenEvent.from_strings(2, ["11"])))
print("perfect forecaster, P(00):", upper_probability(oracle_forecast, ClopenEvent.from_strings(2, ["00"])))

# Forecasts may vary with the clock: here the band alternates between
# wide at even levels and a point at odd ones.
swinging = AlternatingForecast(F(1, 4), F(3, 4))
print("\nalternating forecaster, upper(agree):", global_upper_expectation(swinging, agree))
print("matches its oracle:", upper_expectation_enum_oracle(swinging, agree)
      == global_upper_expectation(swinging, agree))
