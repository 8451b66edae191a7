"""One round of betting on a binary outcome under an interval forecast.

A forecaster quotes a closed subinterval [lower, upper] of [0, 1] as the
price band for the next outcome.  A gamble pays one rational amount if
the outcome is 0 and another if it is 1.  The forecaster's band turns
every gamble into an exact upper and lower price, and those prices obey
the classical coherence laws with no rounding anywhere.
"""

from fractions import Fraction as F

from imprand import (
    Gamble,
    IntervalForecast,
    cone_decompose,
    is_offered,
    linear_expectation,
    lower_expectation,
    upper_expectation,
)

band = IntervalForecast(F(1, 4), F(3, 4))
print(f"forecast band: [{band.lower}, {band.upper}]")

# The gamble X pays 1 on outcome 1 and 0 on outcome 0.  Its upper price
# is the top of the band, its lower price the bottom.
X = Gamble(F(0), F(1))
print("upper price of X:", upper_expectation(band, X))
print("lower price of X:", lower_expectation(band, X))

# A linear expectation at a single probability p sits between the two.
for p in (F(1, 4), F(1, 2), F(3, 4)):
    print(f"  E_{p}(X) = {linear_expectation(p, X)}")

# Coherence in action: prices are homogeneous, translate with constants,
# and are subadditive across gambles.
f = Gamble(F(-1), F(2))
g = Gamble(F(3, 2), F(-1, 2))
print("upper(f)         :", upper_expectation(band, f))
print("upper(3*f)       :", upper_expectation(band, f * F(3)))
print("upper(f + 5)     :", upper_expectation(band, f + F(5)))
print("upper(f) + upper(g):", upper_expectation(band, f) + upper_expectation(band, g))
print("upper(f + g)     :", upper_expectation(band, f + g))

# Mirror image: the lower price of f is minus the upper price of -f.
print("lower(f) == -upper(-f):", lower_expectation(band, f) == -upper_expectation(band, -f))

# The gambles the forecaster is willing to offer (upper price <= 0) are
# exactly the ones that decompose into a positive combination of two
# primitive tickets: buying the outcome at a price at or below the band
# and selling it at a price at or above it.
offered = Gamble(F(-1, 2), F(1, 8))
print("\noffered?", is_offered(band, offered))
witness = cone_decompose(band, offered)
print("decomposition:", witness)
alpha, p, beta, q = witness.alpha, witness.p, witness.beta, witness.q
rebuilt = Gamble(alpha * p - beta * q, alpha * (p - 1) + beta * (1 - q))
print("reconstructs exactly:", rebuilt == offered)

# A gamble with positive upper price is declined: no decomposition exists.
print("declined gamble decomposes:", cone_decompose(band, Gamble(F(1), F(1, 8))))
