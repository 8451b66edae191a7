"""Processes on the situation tree: strategies, verification, rescaling."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from imprand import (
    AlwaysSelection,
    ConstantGambleProcess,
    ConstantProcess,
    CountingProcess,
    DepthError,
    DomainError,
    ExplicitGambleTable,
    ExplicitTableMultiplier,
    ExplicitTableProcess,
    FollowSymbolSelection,
    FromProcessSelection,
    Gamble,
    GatedMultiplier,
    IntervalForecast,
    KellyBuyMultiplier,
    KellySellMultiplier,
    MultiplierGeneratedProcess,
    NeverSelection,
    ResourceError,
    Situation,
    StationaryForecast,
    StrategySpec,
    TemporalGambleProcess,
    TemporalMaskSelection,
    TemporalTableProcess,
    UnitMultiplier,
    capital_at,
    evaluate_capital,
    is_supermartingale,
    linear_expectation,
    max_capital_at_level,
    process_difference,
    rescale_test_process,
    selection_from_process,
    upper_expectation,
    verify_along_path,
)

F = Fraction
I = IntervalForecast
QUARTERS = I(F(1, 4), F(3, 4))
PHI = StationaryForecast(QUARTERS)


def s(text: str) -> Situation:
    return Situation.from_string(text)


def kelly_buy(stake, interval=QUARTERS) -> StrategySpec:
    return StrategySpec.multiplicative(KellyBuyMultiplier(interval, F(stake)))


# ---------------------------------------------------------------------------
# Selections
# ---------------------------------------------------------------------------


class TestSelections:
    def test_always_and_never(self):
        assert AlwaysSelection().at(s("")) == 1
        assert AlwaysSelection().at(s("0110")) == 1
        assert NeverSelection().at(s("01")) == 0
        assert AlwaysSelection().is_temporal()
        assert NeverSelection().is_temporal()

    def test_temporal_mask(self):
        mask = TemporalMaskSelection((1, 0, 1))
        assert mask.at(s("")) == 1
        assert mask.at(s("0")) == 0
        assert mask.at(s("11")) == 1
        assert mask.is_temporal()
        with pytest.raises(DepthError):
            mask.at(s("0000"))

    def test_mask_validates_bits(self):
        with pytest.raises(DomainError):
            TemporalMaskSelection((1, 2))

    def test_follow_symbol(self):
        follow1 = FollowSymbolSelection(1)
        assert follow1.at(s("")) == 0
        assert follow1.at(s("01")) == 1
        assert follow1.at(s("10")) == 0
        assert not follow1.is_temporal()

    def test_follow_symbol_validates(self):
        with pytest.raises(DomainError):
            FollowSymbolSelection(2)

    def test_from_process_fires_on_positive_price(self):
        counting = CountingProcess(TemporalMaskSelection((1, 0, 1)))
        derived = FromProcessSelection(counting, F(1, 2))
        for text in ("", "0", "1", "00", "11"):
            assert derived.at(s(text)) == (1 if len(text) != 1 else 0)
        assert derived.is_temporal()

    def test_from_process_rate_is_validated(self):
        counting = CountingProcess(AlwaysSelection())
        with pytest.raises(DomainError):
            FromProcessSelection(counting, F(3, 2))


# ---------------------------------------------------------------------------
# Multipliers
# ---------------------------------------------------------------------------


class TestKellyMultipliers:
    def test_buy_gamble(self):
        d = KellyBuyMultiplier(QUARTERS, F(1)).gamble_at(s(""))
        assert d == Gamble(F(0), F(4, 3))

    def test_buy_half_stake(self):
        d = KellyBuyMultiplier(QUARTERS, F(1, 2)).gamble_at(s(""))
        assert d == Gamble(F(1, 2), F(7, 6))

    def test_sell_gamble(self):
        d = KellySellMultiplier(QUARTERS, F(1)).gamble_at(s(""))
        assert d == Gamble(F(4, 3), F(0))

    def test_buy_rejects_zero_upper(self):
        with pytest.raises(DomainError):
            KellyBuyMultiplier(I.precise(F(0)), F(1, 2))

    def test_sell_rejects_unit_lower(self):
        with pytest.raises(DomainError):
            KellySellMultiplier(I.precise(F(1)), F(1, 2))

    def test_stake_range(self):
        with pytest.raises(DomainError):
            KellyBuyMultiplier(QUARTERS, F(3, 2))
        with pytest.raises(DomainError):
            KellyBuyMultiplier(QUARTERS, F(-1, 4))

    @given(
        st.fractions(min_value=0, max_value=1, max_denominator=16),
        st.fractions(min_value=0, max_value=1, max_denominator=16),
    )
    def test_buy_price_identity(self, stake, p_true):
        """E_p'(D) = 1 + stake (p' - q)/q: a fair or favorable trade
        exactly when the true probability does not exceed the upper
        endpoint used to price it."""
        q = QUARTERS.upper
        d = KellyBuyMultiplier(QUARTERS, stake).gamble_at(s(""))
        assert linear_expectation(p_true, d) == 1 + stake * (p_true - q) / q

    def test_buy_is_temporal_with_constant_gamble(self):
        mult = KellyBuyMultiplier(QUARTERS, F(1, 2))
        assert mult.is_temporal()
        assert mult.constant_gamble() == Gamble(F(1, 2), F(7, 6))


class TestOtherMultipliers:
    def test_unit(self):
        assert UnitMultiplier().gamble_at(s("01")) == Gamble(F(1), F(1))
        assert UnitMultiplier().constant_gamble() == Gamble(F(1), F(1))

    def test_explicit_table(self):
        table = ExplicitTableMultiplier(1, {s(""): Gamble(F(3, 2), F(1, 2))})
        assert table.gamble_at(s("")) == Gamble(F(3, 2), F(1, 2))
        with pytest.raises(DepthError):
            table.gamble_at(s("0"))

    def test_explicit_table_requires_nonnegative(self):
        with pytest.raises(DomainError):
            ExplicitTableMultiplier(1, {s(""): Gamble(F(-1), F(1))})

    def test_explicit_table_missing_key(self):
        with pytest.raises(DepthError):
            ExplicitTableMultiplier(2, {s(""): Gamble(F(1), F(1))}).gamble_at(s("0"))

    def test_gated_by_always_is_base(self):
        base = KellyBuyMultiplier(QUARTERS, F(1, 2))
        gated = GatedMultiplier(base, AlwaysSelection())
        assert gated.gamble_at(s("01")) == base.gamble_at(s("01"))
        assert gated.constant_gamble() == base.constant_gamble()

    def test_gated_by_never_is_unit(self):
        base = KellyBuyMultiplier(QUARTERS, F(1, 2))
        gated = GatedMultiplier(base, NeverSelection())
        assert gated.gamble_at(s("01")) == Gamble(F(1), F(1))

    def test_gated_follows_selection(self):
        base = KellyBuyMultiplier(QUARTERS, F(1))
        gated = GatedMultiplier(base, FollowSymbolSelection(0))
        assert gated.gamble_at(s("10")) == Gamble(F(0), F(4, 3))
        assert gated.gamble_at(s("11")) == Gamble(F(1), F(1))
        assert not gated.is_temporal()


# ---------------------------------------------------------------------------
# Value processes and differences
# ---------------------------------------------------------------------------


class TestProcesses:
    def test_constant_has_zero_difference(self):
        proc = ConstantProcess(F(5))
        assert proc.at(s("010")) == F(5)
        assert process_difference(proc, s("01")) == Gamble(F(0), F(0))

    def test_temporal_table(self):
        proc = TemporalTableProcess((F(1), F(2), F(4)))
        assert proc.at(s("")) == F(1)
        assert proc.at(s("01")) == F(4)
        assert process_difference(proc, s("0")) == Gamble(F(2), F(2))
        with pytest.raises(DepthError):
            proc.at(s("000"))

    def test_counting_process(self):
        proc = CountingProcess(TemporalMaskSelection((1, 0, 1)))
        assert proc.at(s("")) == F(1)
        assert proc.at(s("0")) == F(2)
        assert proc.at(s("01")) == F(2)
        assert proc.at(s("011")) == F(3)

    def test_counting_difference_is_flat(self):
        proc = CountingProcess(AlwaysSelection())
        assert process_difference(proc, s("0110")) == Gamble(F(1), F(1))
        never = CountingProcess(NeverSelection())
        assert process_difference(never, s("0")) == Gamble(F(0), F(0))

    def test_multiplier_generated_walks_product(self):
        proc = MultiplierGeneratedProcess(KellyBuyMultiplier(QUARTERS, F(1)))
        assert proc.at(s("")) == F(1)
        assert proc.at(s("1")) == F(4, 3)
        assert proc.at(s("11")) == F(16, 9)
        assert proc.at(s("0")) == F(0)
        assert proc.at(s("01")) == F(0)

    def test_multiplier_generated_difference(self):
        proc = MultiplierGeneratedProcess(KellyBuyMultiplier(QUARTERS, F(1)))
        assert process_difference(proc, s("1")) == Gamble(F(-4, 3), F(4, 9))

    def test_explicit_table_difference(self):
        proc = ExplicitTableProcess(
            1, {s(""): F(1), s("0"): F(2), s("1"): F(1, 2)}
        )
        assert process_difference(proc, s("")) == Gamble(F(1), F(-1, 2))
        with pytest.raises(DepthError):
            proc.at(s("00"))

    def test_explicit_table_requires_all_keys_to_depth(self):
        with pytest.raises(DepthError):
            ExplicitTableProcess(1, {s(""): F(1), s("0"): F(2)}).at(s("1"))


# ---------------------------------------------------------------------------
# Strategies and capital evaluation
# ---------------------------------------------------------------------------


class TestCapital:
    def test_kelly_full_stake_on_ones(self):
        strat = kelly_buy(1)
        assert evaluate_capital(strat, s("11")) == [F(1), F(4, 3), F(16, 9)]

    def test_kelly_full_stake_dies_on_zero(self):
        assert evaluate_capital(kelly_buy(1), s("0")) == [F(1), F(0)]

    def test_capital_at_is_last_point(self):
        assert capital_at(kelly_buy(1), s("11")) == F(16, 9)

    def test_additive_walk(self):
        strat = StrategySpec.additive(ConstantGambleProcess(Gamble(F(-1), F(1))))
        assert evaluate_capital(strat, s("101")) == [F(1), F(2), F(1), F(2)]

    def test_additive_initial_offset(self):
        strat = StrategySpec.additive(
            ConstantGambleProcess(Gamble(F(0), F(0))), initial=F(5)
        )
        assert evaluate_capital(strat, s("01")) == [F(5), F(5), F(5)]

    def test_multiplicative_requires_nonnegative_initial(self):
        with pytest.raises(DomainError):
            StrategySpec.multiplicative(UnitMultiplier(), initial=F(-1))

    def test_class_tag_validated(self):
        with pytest.raises(DomainError):
            StrategySpec.multiplicative(UnitMultiplier(), class_tag="X")

    @given(st.lists(st.integers(min_value=0, max_value=1), max_size=8))
    def test_temporal_fast_path_matches_generic_walk(self, bits):
        """Level-indexed evaluation must agree with the situation walk."""
        strat = StrategySpec.multiplicative(KellyBuyMultiplier(QUARTERS, F(1, 3)))
        prefix = Situation(tuple(bits))
        values = evaluate_capital(strat, prefix)
        expected = [F(1)]
        for k, bit in enumerate(bits):
            d = strat.increments.gamble_at(prefix.prefix(k))
            expected.append(expected[-1] * d(bit))
        assert values == expected

    def test_gated_capital_multiplies_only_when_selected(self):
        gated = StrategySpec.multiplicative(
            GatedMultiplier(KellyBuyMultiplier(QUARTERS, F(1, 2)), FollowSymbolSelection(0))
        )
        # Bets trigger after each 0; on "011" only the first step bets.
        assert evaluate_capital(gated, s("011")) == [F(1), F(1), F(7, 6), F(7, 6)]


# ---------------------------------------------------------------------------
# Supermartingale verification
# ---------------------------------------------------------------------------


class TestVerification:
    def test_kelly_buy_is_supermartingale_for_its_interval(self):
        report = is_supermartingale(kelly_buy(1), PHI, depth=12)
        assert report.ok
        assert bool(report)
        assert report.violations == ()

    def test_kelly_sell_is_supermartingale_for_its_interval(self):
        strat = StrategySpec.multiplicative(KellySellMultiplier(QUARTERS, F(1, 2)))
        assert is_supermartingale(strat, PHI, depth=12).ok

    def test_unit_is_supermartingale_for_anything(self):
        strat = StrategySpec.multiplicative(UnitMultiplier())
        assert is_supermartingale(strat, PHI, depth=10).ok

    def test_fair_coin_bet_fails_for_imprecise_interval(self):
        strat = StrategySpec.additive(ConstantGambleProcess(Gamble(F(-1), F(1))))
        report = is_supermartingale(strat, PHI, depth=3)
        assert not report.ok
        assert len(report.violations) == 7
        assert all(v.excess == F(1, 2) for v in report.violations)

    def test_violations_sorted_shallowest_first(self):
        strat = StrategySpec.additive(ConstantGambleProcess(Gamble(F(-1), F(1))))
        report = is_supermartingale(strat, PHI, depth=3)
        texts = [v.situation.to_string() for v in report.violations]
        assert texts == ["", "0", "1", "00", "01", "10", "11"]

    def test_exhaustive_mode_depth_zero_checks_root_only(self):
        strat = StrategySpec.additive(ConstantGambleProcess(Gamble(F(-1), F(1))))
        report = is_supermartingale(strat, PHI, depth=0)
        assert report.checked == 0 and report.ok

    def test_temporal_mode_handles_large_depth(self):
        report = is_supermartingale(kelly_buy("1/2"), PHI, depth=10_000)
        assert report.ok and report.mode == "temporal"

    def test_temporal_mode_reports_shallowest_level(self):
        strat = StrategySpec.additive(ConstantGambleProcess(Gamble(F(-1), F(1))))
        report = is_supermartingale(strat, PHI, depth=100)
        assert not report.ok
        assert [v.situation.to_string() for v in report.violations] == [""]

    def test_nontemporal_beyond_cap_raises(self):
        table = ExplicitTableMultiplier(1, {s(""): Gamble(F(1), F(1))})
        strat = StrategySpec.multiplicative(table)
        with pytest.raises(ResourceError):
            is_supermartingale(strat, PHI, depth=40)

    def test_dead_capital_branches_are_not_flagged(self):
        # After multiplying by 0 the capital is stuck at 0; any gamble is
        # then harmless, even one with positive upper expectation.
        table = ExplicitTableMultiplier(
            2,
            {
                s(""): Gamble(F(0), F(0)),
                s("0"): Gamble(F(5), F(5)),
                s("1"): Gamble(F(5), F(5)),
            },
        )
        strat = StrategySpec.multiplicative(table)
        assert is_supermartingale(strat, PHI, depth=2).ok

    def test_verify_along_path_checks_visited_prefixes(self):
        strat = StrategySpec.additive(ConstantGambleProcess(Gamble(F(-1), F(1))))
        report = verify_along_path(strat, PHI, s("01"))
        assert not report.ok
        assert report.mode == "path"
        assert [v.situation.to_string() for v in report.violations] == ["", "0"]

    def test_verify_along_path_accepts_kelly(self):
        assert verify_along_path(kelly_buy(1), PHI, s("110")).ok

    @given(st.integers(min_value=0, max_value=6))
    @settings(max_examples=20)
    def test_perfect_forecast_test_supermartingale_stays_below_one(self, n):
        """A multiplier that halves on the realized outcome keeps capital
        in [0, 1] along the realized path at every step."""
        from imprand import PerfectForecast

        path = Situation(tuple(k % 2 for k in range(6)))
        phi = PerfectForecast(path)
        mult = TemporalGambleMultiplierForPath(path)
        strat = StrategySpec.multiplicative(mult)
        assert is_supermartingale(strat, phi, depth=6).ok
        values = evaluate_capital(strat, path.prefix(n))
        assert values == [F(1, 2**k) for k in range(n + 1)]


class TemporalGambleMultiplierForPath(ExplicitTableMultiplier):
    """Halve on the path's realized bit, pay 3 on the other branch."""

    def __init__(self, path: Situation):
        table = {}
        frontier = [Situation(())]
        for level in range(len(path.bits)):
            table.update(
                {
                    sit: Gamble(
                        F(1, 2) if path.bits[level] == 0 else F(3),
                        F(1, 2) if path.bits[level] == 1 else F(3),
                    )
                    for sit in frontier
                }
            )
            frontier = [sit.child(b) for sit in frontier for b in (0, 1)]
        super().__init__(len(path.bits), table)


# ---------------------------------------------------------------------------
# Rescaling
# ---------------------------------------------------------------------------


class TestRescaling:
    @staticmethod
    def doubling(depth: int) -> StrategySpec:
        table = {
            sit: Gamble(F(2), F(2))
            for level in range(depth)
            for sit in _level(level)
        }
        return StrategySpec.multiplicative(ExplicitTableMultiplier(depth, table))

    def test_unit_below_cutoff(self):
        scaled = rescale_test_process(self.doubling(4), cutoff=2, scale=8)
        assert capital_at(scaled, s("")) == F(1)
        assert capital_at(scaled, s("1")) == F(1)
        assert capital_at(scaled, s("11")) == F(1)

    def test_scaled_copy_beyond_cutoff(self):
        base = self.doubling(4)
        scaled = rescale_test_process(base, cutoff=2, scale=8)
        # Base reaches 8 at level 3, 16 at level 4.
        assert capital_at(scaled, s("111")) == F(1)
        assert capital_at(scaled, s("1111")) == F(2)
        assert capital_at(base, s("111")) / 8 == capital_at(scaled, s("111"))

    def test_rescaled_is_still_supermartingale(self):
        scaled = rescale_test_process(self.doubling(3), cutoff=3, scale=8)
        # The base doubles, so it is NOT a supermartingale for PHI; but
        # below the cutoff the rescaled process does not bet at all, and
        # the base table ends exactly at the cutoff.
        assert is_supermartingale(scaled, PHI, depth=3).ok

    def test_scale_and_cutoff_validated(self):
        with pytest.raises(DomainError):
            rescale_test_process(self.doubling(2), cutoff=-1, scale=8)
        with pytest.raises(DomainError):
            rescale_test_process(self.doubling(2), cutoff=1, scale=0)

    def test_additive_strategy_rescales_too(self):
        base = StrategySpec.additive(ConstantGambleProcess(Gamble(F(1), F(3))))
        scaled = rescale_test_process(base, cutoff=1, scale=4)
        assert capital_at(scaled, s("1")) == F(1)
        # At the cutoff the process jumps to base/scale: base at "11" is
        # 1 + 3 + 3 = 7, so the rescaled value is 7/4.
        assert capital_at(scaled, s("11")) == F(7, 4)

    def test_max_capital_at_level(self):
        base = self.doubling(3)
        assert max_capital_at_level(base, 3) == F(8)
        assert max_capital_at_level(kelly_buy(1), 2) == F(16, 9)


def _level(level: int):
    from imprand import situations_at_level

    return situations_at_level(level)


# ---------------------------------------------------------------------------
# Selection round trips
# ---------------------------------------------------------------------------


class TestSelectionFromProcess:
    @given(
        st.lists(st.integers(min_value=0, max_value=1), min_size=1, max_size=20),
        st.sampled_from([F(0), F(1, 4), F(3, 4), F(1)]),
    )
    def test_round_trip_at_any_rate(self, mask_bits, rate):
        mask = TemporalMaskSelection(tuple(mask_bits))
        counting = CountingProcess(mask)
        derived = selection_from_process(counting, rate, horizon=len(mask_bits))
        assert derived == mask

    def test_nontemporal_process_beyond_cap_raises(self):
        counting = CountingProcess(FollowSymbolSelection(1))
        with pytest.raises(ResourceError):
            selection_from_process(counting, F(1, 2), horizon=40)

    def test_nontemporal_process_within_cap_enumerates(self):
        counting = CountingProcess(FollowSymbolSelection(1))
        derived = selection_from_process(counting, F(1, 2), horizon=3)
        # A level fires when SOME situation at it has a positive-price
        # increment: at level 1 the situation "1" fires, the root does not.
        assert derived.mask == (0, 1, 1)

    def test_rate_validated(self):
        counting = CountingProcess(AlwaysSelection())
        with pytest.raises(DomainError):
            selection_from_process(counting, F(2), horizon=3)
