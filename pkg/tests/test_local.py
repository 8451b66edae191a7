"""Local betting model: gambles, interval forecasts, exact expectation laws."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from imprand import (
    ConeDecomposition,
    DomainError,
    Gamble,
    IntervalForecast,
    cone_decompose,
    is_offered,
    linear_expectation,
    lower_expectation,
    upper_expectation,
)

F = Fraction

rationals = st.fractions(min_value=-16, max_value=16, max_denominator=24)
unit_rationals = st.fractions(min_value=0, max_value=1, max_denominator=24)
gambles = st.builds(Gamble, rationals, rationals)
scales = st.fractions(min_value=0, max_value=8, max_denominator=12)


@st.composite
def intervals(draw):
    a = draw(unit_rationals)
    b = draw(unit_rationals)
    return IntervalForecast(min(a, b), max(a, b))


# ---------------------------------------------------------------------------
# Gamble and IntervalForecast basics
# ---------------------------------------------------------------------------


class TestGamble:
    def test_call_returns_coordinates(self):
        f = Gamble(F(-3, 4), F(1, 4))
        assert f(0) == F(-3, 4)
        assert f(1) == F(1, 4)

    def test_call_rejects_other_outcomes(self):
        with pytest.raises(DomainError):
            Gamble(F(0), F(1))(2)

    def test_arithmetic(self):
        f = Gamble(F(1), F(2))
        g = Gamble(F(-1), F(3))
        assert f + g == Gamble(F(0), F(5))
        assert f - g == Gamble(F(2), F(-1))
        assert -f == Gamble(F(-1), F(-2))
        assert f * F(1, 2) == Gamble(F(1, 2), F(1))
        assert F(2) * f == Gamble(F(2), F(4))

    def test_min_max_dominates(self):
        f = Gamble(F(1), F(-2))
        assert f.minimum() == F(-2)
        assert f.maximum() == F(1)
        assert Gamble(F(1), F(1)).dominates(f)
        assert not f.dominates(Gamble(F(1), F(1)))

    def test_constant_and_identity(self):
        assert Gamble.constant(F(5)) == Gamble(F(5), F(5))
        assert Gamble.identity() == Gamble(F(0), F(1))

    def test_rejects_floats(self):
        with pytest.raises(DomainError):
            Gamble(0.5, F(1))


class TestIntervalForecast:
    def test_orders_endpoints(self):
        with pytest.raises(DomainError):
            IntervalForecast(F(3, 4), F(1, 4))

    def test_requires_unit_range(self):
        with pytest.raises(DomainError):
            IntervalForecast(F(-1, 4), F(1, 2))
        with pytest.raises(DomainError):
            IntervalForecast(F(1, 2), F(5, 4))

    def test_precise_and_vacuous(self):
        assert IntervalForecast.precise(F(1, 3)).is_precise
        assert not IntervalForecast.precise(F(1, 3)).is_vacuous
        assert IntervalForecast.vacuous() == IntervalForecast(F(0), F(1))
        assert IntervalForecast.vacuous().is_vacuous

    def test_encloses(self):
        wide = IntervalForecast(F(1, 4), F(3, 4))
        assert wide.encloses(IntervalForecast(F(1, 2), F(1, 2)))
        assert wide.encloses(wide)
        assert not wide.encloses(IntervalForecast(F(0), F(1, 2)))


# ---------------------------------------------------------------------------
# Expectations: pinned values
# ---------------------------------------------------------------------------


class TestExpectationValues:
    def test_linear_degenerate_zero(self):
        assert linear_expectation(F(0), Gamble(F(3), F(7))) == F(3)

    def test_linear_quarter(self):
        assert linear_expectation(F(1, 4), Gamble(F(-3, 4), F(1, 4))) == F(-1, 2)

    def test_linear_rejects_outside_unit(self):
        with pytest.raises(DomainError):
            linear_expectation(F(5, 4), Gamble(F(0), F(1)))

    def test_upper_of_next_outcome(self):
        interval = IntervalForecast(F(1, 4), F(3, 4))
        assert upper_expectation(interval, Gamble.identity()) == F(3, 4)
        assert lower_expectation(interval, Gamble.identity()) == F(1, 4)

    def test_precise_interval_is_linear(self):
        interval = IntervalForecast.precise(F(2, 7))
        f = Gamble(F(-2), F(5))
        assert upper_expectation(interval, f) == linear_expectation(F(2, 7), f)
        assert lower_expectation(interval, f) == linear_expectation(F(2, 7), f)

    def test_decreasing_gamble(self):
        interval = IntervalForecast(F(1, 4), F(3, 4))
        f = Gamble(F(1), F(-1))
        assert upper_expectation(interval, f) == F(1, 2)
        assert lower_expectation(interval, f) == F(-1, 2)


# ---------------------------------------------------------------------------
# Expectation laws (exact, property-based)
# ---------------------------------------------------------------------------


class TestExpectationLaws:
    @given(intervals(), gambles)
    def test_bounds(self, interval, f):
        assert f.minimum() <= lower_expectation(interval, f)
        assert lower_expectation(interval, f) <= upper_expectation(interval, f)
        assert upper_expectation(interval, f) <= f.maximum()

    @given(intervals(), gambles, scales)
    def test_positive_homogeneity(self, interval, f, lam):
        assert upper_expectation(interval, f * lam) == lam * upper_expectation(interval, f)

    @given(intervals(), gambles, gambles)
    def test_subadditivity(self, interval, f, g):
        assert (
            upper_expectation(interval, f + g)
            <= upper_expectation(interval, f) + upper_expectation(interval, g)
        )

    @given(intervals(), gambles, rationals)
    def test_constant_shift(self, interval, f, mu):
        assert (
            upper_expectation(interval, f + Gamble.constant(mu))
            == upper_expectation(interval, f) + mu
        )

    @given(intervals(), gambles, gambles)
    def test_monotone(self, interval, f, g):
        high = Gamble(f.at0 + abs(g.at0), f.at1 + abs(g.at1))
        assert upper_expectation(interval, f) <= upper_expectation(interval, high)

    @given(intervals(), gambles)
    def test_conjugacy(self, interval, f):
        assert lower_expectation(interval, f) == -upper_expectation(interval, -f)

    @given(intervals(), gambles, gambles)
    def test_lower_superadditive(self, interval, f, g):
        assert (
            lower_expectation(interval, f + g)
            >= lower_expectation(interval, f) + lower_expectation(interval, g)
        )


# ---------------------------------------------------------------------------
# Offered gambles and the buy/sell cone
# ---------------------------------------------------------------------------


class TestOfferedCone:
    interval = IntervalForecast(F(1, 4), F(3, 4))

    def test_zero_gamble_offered(self):
        assert is_offered(self.interval, Gamble(F(0), F(0)))

    def test_positive_constant_not_offered(self):
        assert not is_offered(self.interval, Gamble(F(1), F(1)))

    def test_boundary_gamble_offered(self):
        assert is_offered(self.interval, Gamble(F(-3, 4), F(1, 4)))

    def test_decompose_pure_buy(self):
        d = cone_decompose(self.interval, Gamble(F(-3, 4), F(1, 4)))
        assert d == ConeDecomposition(alpha=F(0), p=F(0), beta=F(1), q=F(3, 4))

    def test_decompose_constant_slack(self):
        d = cone_decompose(self.interval, Gamble(F(-1), F(-1)))
        assert (d.alpha, d.beta) == (F(1), F(1))
        assert (d.p, d.q) == (F(0), F(1))
        assert d.reconstruct() == Gamble(F(-1), F(-1))

    def test_decompose_refuses_unoffered(self):
        assert cone_decompose(self.interval, Gamble(F(1), F(1))) is None

    def test_threshold_may_leave_unit_interval(self):
        # Selling below an impossible price is favorable no matter the
        # forecast, so thresholds are not clamped to [0, 1].
        f = Gamble(F(-2), F(-1))
        d = cone_decompose(self.interval, f)
        assert d is not None and d.reconstruct() == f
        assert d.q == F(2)

    def test_rejects_negative_coefficients(self):
        with pytest.raises(DomainError):
            ConeDecomposition(alpha=F(-1), p=F(0), beta=F(0), q=F(1))

    @given(intervals(), gambles)
    def test_decomposition_iff_offered(self, interval, f):
        d = cone_decompose(interval, f)
        assert (d is not None) == is_offered(interval, f)

    @given(intervals(), gambles)
    def test_decomposition_reconstructs_exactly(self, interval, f):
        d = cone_decompose(interval, f)
        if d is not None:
            assert d.reconstruct() == f
            assert d.alpha >= 0 and d.beta >= 0
            assert d.p <= interval.lower
            assert d.q >= interval.upper
