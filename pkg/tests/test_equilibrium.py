"""Unit tests for the closed forms, deviation checks, and the oracle."""

import math
from fractions import Fraction

import pytest

from quorumgames import (
    DegenerateRatio,
    DeviationDirection,
    NoAdventurersNeeded,
    PayoffConfig,
    PayoffSemantics,
    SplitRecord,
    best_response_oracle,
    equilibrium_counts,
    integer_equilibrium_point,
    mixed_strategy,
    verify_nash,
)

FLAGSHIP = PayoffConfig(100_000, 70_000_000)  # gamma = 1/700

GAMMA_GRID = [Fraction(1, 700), Fraction(1, 10), Fraction(1, 3), Fraction(499, 1000)]
COUNT_GRID = [Fraction(0), Fraction(1, 2), Fraction(7, 3), Fraction(10), Fraction(100)]


class TestEquilibriumCounts:
    def test_flagship_point(self):
        point = equilibrium_counts(0, 0, FLAGSHIP)
        assert point.g_star == Fraction(350, 349)
        assert point.b_star == Fraction(1, 698)
        assert not point.citizens_cover_quorum

    def test_zero_risk_factor_limit(self):
        point = equilibrium_counts(0, 0, gamma=0)
        assert point.g_star == 1
        assert point.b_star == 0

    def test_mixed_population(self):
        point = equilibrium_counts(10, 100, FLAGSHIP)
        assert point.g_star == Fraction(140_700, 698) - 10
        assert point.g_star == Fraction(66_860, 349)
        assert point.b_star == Fraction(201, 698)

    def test_negative_g_star_flagged_not_clamped(self):
        point = equilibrium_counts(100, 0, FLAGSHIP)
        assert point.g_star < 0
        assert point.citizens_cover_quorum

    def test_degenerate_ratio_rejected(self):
        with pytest.raises(DegenerateRatio):
            equilibrium_counts(0, 0, PayoffConfig(1, 2))
        with pytest.raises(DegenerateRatio):
            equilibrium_counts(0, 0, gamma=Fraction(1, 2))
        with pytest.raises(DegenerateRatio):
            equilibrium_counts(0, 0, gamma="0.6")

    def test_gamma_and_payoffs_are_exclusive(self):
        with pytest.raises(TypeError):
            equilibrium_counts(0, 0, FLAGSHIP, gamma=Fraction(1, 700))
        with pytest.raises(TypeError):
            equilibrium_counts(0, 0)

    def test_negative_inputs_rejected(self):
        with pytest.raises(ValueError):
            equilibrium_counts(-1, 0, FLAGSHIP)
        with pytest.raises(ValueError):
            equilibrium_counts(0, 0, gamma=-1)

    def test_undefined_direct_ratio_when_totals_cancel(self):
        # gamma = 2/5 makes g* + b* = 0 at c = 7, t = 0
        point = equilibrium_counts(7, 0, gamma=Fraction(2, 5))
        assert point.g_star + point.b_star == 0
        assert point.pr_g_direct is None


class TestClosedFormIdentities:
    @pytest.mark.parametrize("gamma", GAMMA_GRID)
    def test_zero_sum_and_quorum_tightness(self, gamma):
        for c in COUNT_GRID:
            for t in COUNT_GRID:
                point = equilibrium_counts(c, t, gamma=gamma)
                assert point.b_star == gamma * (point.g_star + c)
                assert c + point.g_star == 1 + 2 * (t + point.b_star)

    @pytest.mark.parametrize("gamma", GAMMA_GRID)
    def test_b_star_independent_of_citizens(self, gamma):
        for t in COUNT_GRID:
            values = {
                equilibrium_counts(c, t, gamma=gamma).b_star for c in COUNT_GRID
            }
            assert len(values) == 1

    @pytest.mark.parametrize("gamma", GAMMA_GRID)
    def test_direct_ratio_is_a_probability_when_g_star_nonnegative(self, gamma):
        for c in COUNT_GRID:
            for t in COUNT_GRID:
                point = equilibrium_counts(c, t, gamma=gamma)
                if point.g_star >= 0:
                    assert 0 <= point.pr_g_direct <= 1

    def test_monotonicity(self):
        gamma = Fraction(1, 700)
        g_in_t = [equilibrium_counts(3, t, gamma=gamma).g_star for t in range(5)]
        assert all(a < b for a, b in zip(g_in_t, g_in_t[1:]))
        g_in_c = [equilibrium_counts(c, 3, gamma=gamma).g_star for c in range(5)]
        assert all(a > b for a, b in zip(g_in_c, g_in_c[1:]))
        b_in_t = [equilibrium_counts(3, t, gamma=gamma).b_star for t in range(5)]
        assert all(a < b for a, b in zip(b_in_t, b_in_t[1:]))
        b_in_gamma = [
            equilibrium_counts(3, 3, gamma=g).b_star
            for g in (Fraction(1, 700), Fraction(1, 10), Fraction(1, 3))
        ]
        assert all(a < b for a, b in zip(b_in_gamma, b_in_gamma[1:]))


class TestMixedStrategy:
    def test_flagship_lottery(self):
        lottery = mixed_strategy(0, 0, FLAGSHIP)
        assert lottery.pr_yes == Fraction(700, 701)
        assert lottery.pr_no == Fraction(1, 701)

    @pytest.mark.parametrize("t", [0, 1, 10, 100])
    def test_no_citizens_ratio_independent_of_terrorists(self, t):
        lottery = mixed_strategy(0, t, FLAGSHIP)
        assert lottery.pr_yes == 1 / (1 + Fraction(1, 700))

    def test_zero_risk_factor_votes_yes_surely(self):
        lottery = mixed_strategy(0, 0, gamma=0)
        assert lottery.pr_yes == 1
        assert lottery.pr_no == 0

    def test_alternative_form_reported_with_gap(self):
        lottery = mixed_strategy(0, 1, FLAGSHIP)
        assert lottery.pr_yes_paper is not None
        assert lottery.discrepancy == abs(lottery.pr_yes - lottery.pr_yes_paper)
        assert lottery.discrepancy > 0

    def test_no_adventurers_needed(self):
        with pytest.raises(NoAdventurersNeeded):
            mixed_strategy(7, 0, gamma=Fraction(2, 5))


class TestPublishedRatioGap:
    def test_forms_agree_only_at_origin(self):
        at_origin = equilibrium_counts(0, 0, FLAGSHIP)
        assert at_origin.pr_g_direct == at_origin.pr_g_paper

    @pytest.mark.parametrize("t", [1, 10, 100])
    def test_published_form_retains_t_dependence(self, t):
        point = equilibrium_counts(0, t, FLAGSHIP)
        assert point.pr_g_direct == Fraction(700, 701)
        assert point.pr_g_paper != point.pr_g_direct


class TestIntegerPoint:
    @pytest.mark.parametrize(
        "c,t,expected",
        [
            (0, 0, (3, 1)),
            (1, 0, (2, 1)),
            (0, 1, (5, 1)),
            (10, 10, (13, 1)),
            (100, 0, (0, 1)),
        ],
    )
    def test_known_points(self, c, t, expected):
        assert integer_equilibrium_point(c, t, FLAGSHIP) == expected

    def test_quorum_holds_at_point(self):
        for c in range(6):
            for t in range(6):
                g, b = integer_equilibrium_point(c, t, FLAGSHIP)
                assert c + g >= 1 + 2 * (t + b)

    def test_point_covers_real_bounds(self):
        for c in range(6):
            for t in range(6):
                point = equilibrium_counts(c, t, FLAGSHIP)
                g, b = integer_equilibrium_point(c, t, FLAGSHIP)
                assert b >= point.b_star
                assert g >= point.g_star or g == 0

    def test_rejects_fractional_counts(self):
        with pytest.raises(ValueError):
            integer_equilibrium_point(Fraction(1, 2), 0, FLAGSHIP)
        with pytest.raises(ValueError):
            verify_nash(0, Fraction(3, 2), FLAGSHIP)


class TestVerifyNash:
    def test_proof_consistent_stable_at_flagship(self):
        reports = verify_nash(0, 0, FLAGSHIP)
        assert len(reports) == 2
        assert all(not r.improving for r in reports)
        by_dir = {r.direction: r for r in reports}
        bad_to_good = by_dir[DeviationDirection.BAD_TO_GOOD]
        assert bad_to_good.pre_payoff == 70_000_000
        assert bad_to_good.post_payoff == Fraction(100_000, 4)
        good_to_bad = by_dir[DeviationDirection.GOOD_TO_BAD]
        assert good_to_bad.consensus_broken
        assert good_to_bad.post_payoff == 0

    def test_literal_semantics_exposes_the_gap(self):
        reports = verify_nash(0, 0, FLAGSHIP, PayoffSemantics.LITERAL)
        by_dir = {r.direction: r for r in reports}
        bad_to_good = by_dir[DeviationDirection.BAD_TO_GOOD]
        # a no-voter at a quorate state earns nothing under the literal
        # winners-only rule, so joining the paid side always gains
        assert bad_to_good.pre_payoff == 0
        assert bad_to_good.post_payoff > 0
        assert bad_to_good.improving

    def test_citizens_dominated_network_is_quiet(self):
        # quorum is held by citizens alone; the yes side needs nobody, so
        # the only populated deviation is bad-to-good and it loses money
        reports = verify_nash(100, 0, PayoffConfig(1, 10**6))
        by_dir = {r.direction: r for r in reports}
        assert not by_dir[DeviationDirection.GOOD_TO_BAD].feasible
        assert not by_dir[DeviationDirection.BAD_TO_GOOD].improving
        assert all(not r.improving for r in reports)

    def test_improving_matches_payoff_comparison(self):
        for semantics in PayoffSemantics:
            for reports in (
                verify_nash(2, 3, FLAGSHIP, semantics),
                verify_nash(0, 5, FLAGSHIP, semantics),
            ):
                for r in reports:
                    if r.feasible:
                        assert r.improving == (r.post_payoff > r.pre_payoff)
                    else:
                        assert not r.improving


class TestBestResponseOracle:
    def test_regression_fixture_two_adventurers(self):
        # frozen from the oracle itself: the quorate split (2,0) and the
        # dead split (0,2) that one switch cannot revive
        stable = best_response_oracle(0, 0, 2, FLAGSHIP)
        assert stable == (
            SplitRecord(g=0, b=2, consensus_ok=False),
            SplitRecord(g=2, b=0, consensus_ok=True),
        )

    def test_literal_fixture_two_adventurers(self):
        stable = best_response_oracle(0, 0, 2, FLAGSHIP, PayoffSemantics.LITERAL)
        assert stable == (SplitRecord(g=0, b=2, consensus_ok=False),)

    def test_no_adventurers_with_citizens(self):
        stable = best_response_oracle(3, 0, 0, FLAGSHIP)
        assert stable == (SplitRecord(g=0, b=0, consensus_ok=True),)

    def test_no_adventurers_all_terrorists_flags_consensus(self):
        stable = best_response_oracle(0, 5, 0, FLAGSHIP)
        assert stable == (SplitRecord(g=0, b=0, consensus_ok=False),)

    def test_scan_cap(self):
        with pytest.raises(ValueError):
            best_response_oracle(0, 0, 10_001, FLAGSHIP)

    def test_stable_splits_near_integer_optimum(self):
        # instances induced by the equilibrium itself: the total adventurer
        # pool is the integer point's population
        for gamma_pay in (FLAGSHIP, PayoffConfig(1, 10)):
            for c in range(5):
                for t in range(5):
                    g_pt, b_pt = integer_equilibrium_point(c, t, gamma_pay)
                    a = g_pt + b_pt
                    if c + t + a > 50:
                        continue
                    point = equilibrium_counts(c, t, gamma_pay)
                    target = max(0, math.ceil(point.g_star))
                    stable = best_response_oracle(c, t, a, gamma_pay)
                    assert stable, f"no stable split at c={c} t={t} a={a}"
                    assert min(abs(s.g - target) for s in stable) <= 1

    def test_point_itself_is_oracle_stable(self):
        for c in range(4):
            for t in range(4):
                g_pt, b_pt = integer_equilibrium_point(c, t, FLAGSHIP)
                stable = best_response_oracle(c, t, g_pt + b_pt, FLAGSHIP)
                assert any(s.g == g_pt and s.b == b_pt for s in stable)
