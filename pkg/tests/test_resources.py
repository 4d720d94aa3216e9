import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import DEGENERATE, SYMMETRIC, random_capable_channel
from teleportsim.channel import channel_entropy, make_channel
from teleportsim.qlinalg import LOG2_3, binary_entropy, qubit_qutrit_tangle
from teleportsim.resources import (
    B_INTERCEPT,
    K_SLOPE,
    branch_tangles,
    classical_cost,
    gour_e12_case1,
    gour_e12_case2,
    lower_bound_sum,
    measurement_entanglement,
    resource_report,
    upper_bound_sum,
)
from teleportsim.scheme import SchemeParams, admissible_theta3, assemble_D12, solve_constraints

# frozen fixtures, each computed once from the defining formulas
H_THREE_QUARTERS = 0.8112781244591328
E12_BALANCED = 0.9056390622295664        # (1 + H(3/4)) / 2
H_TWO_THIRDS = 0.9182958340544896        # binary_entropy(2/3)
SUM_UPPER_AT_HALF = 3.4056390622295667   # upper_bound_sum(1/sqrt 2)
SUM_MAX = 3.584962500721156              # 1 + log2 6
LOWER_NEAR_ONE = 3.000001724796099       # lower_bound_sum(1 + 1e-6)
LOWER_AT_THREE_HALVES = 3.503258334775646  # affine piece at E = 3/2
G_AT_HALF = 3.0588138903312014           # low-E piece limit as E -> 3/2 from below
K_FROZEN = 0.9616497307872428
B_FROZEN = 2.060783738594782


def _solved(ch, frac=0.5):
    lo, hi = admissible_theta3(ch)
    return solve_constraints(ch, lo + frac * (hi - lo))


class TestClassicalCost:
    def test_uniform_six(self):
        assert classical_cost([1 / 6] * 6) == pytest.approx(math.log2(6), abs=1e-12)

    def test_four_outcomes(self):
        assert classical_cost([0, 0, 0.25, 0.25, 0.25, 0.25]) == pytest.approx(2.0, abs=1e-15)

    def test_degenerate_balanced(self):
        p = [1 / 8, 1 / 8, 1 / 4, 1 / 8, 1 / 8, 1 / 4]
        assert classical_cost(p) == pytest.approx(2.5, abs=1e-15)

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            classical_cost([-0.1, 1.1, 0, 0, 0, 0])


class TestMeasurementEntanglement:
    def test_all_maximal(self):
        assert measurement_entanglement([1 / 6] * 6, [1.0] * 6) == pytest.approx(1.0, abs=1e-12)

    def test_degenerate_family_closed_form(self):
        # e12(theta1) = [1 + sin^2 H((1+cos^2)/2) + cos^2 H((1+sin^2)/2)] / 2
        ch = make_channel(*DEGENERATE)
        for t1 in np.linspace(0.0, math.pi / 2, 9):
            params = solve_constraints(ch, math.pi / 4, theta2_hint=0.0, theta1_hint=t1)
            rep = resource_report(ch, params)
            c2, s2 = math.cos(t1) ** 2, math.sin(t1) ** 2
            expected = 0.5 * (1.0 + s2 * binary_entropy((1 + c2) / 2)
                              + c2 * binary_entropy((1 + s2) / 2))
            assert rep.e12 == pytest.approx(expected, abs=1e-10)

    def test_balanced_point(self):
        ch = make_channel(*DEGENERATE)
        params = solve_constraints(ch, math.pi / 4, theta2_hint=0.0, theta1_hint=math.pi / 4)
        rep = resource_report(ch, params)
        assert rep.e12 == pytest.approx(E12_BALANCED, abs=1e-12)


class TestBranchTangles:
    def test_identity_rows_zero(self):
        params = SchemeParams(theta=(0.0, 0.0, 0.0), delta=(0.0, 0.0))
        assert max(branch_tangles(params)) <= 1e-12

    def test_symmetric_third_row_maximal(self):
        # equal third-row weights with 120-degree phases give tangle 1
        theta2 = math.asin(math.sqrt(1.0 / 3.0))
        params = SchemeParams(theta=(0.3, theta2, math.pi / 4),
                              delta=(2 * math.pi / 3, 2 * math.pi / 3))
        assert branch_tangles(params)[2] == pytest.approx(1.0, abs=1e-10)

    @given(st.integers(0, 10_000))
    @settings(max_examples=40, deadline=None)
    def test_matches_raw_rows(self, seed):
        rng = np.random.default_rng(seed)
        ch = random_capable_channel(rng)
        params = _solved(ch, frac=rng.uniform())
        _, basis = assemble_D12(params)
        closed = branch_tangles(params)
        raw = [qubit_qutrit_tangle(v) for v in basis.vectors]
        assert np.max(np.abs(np.array(closed) - np.array(raw))) <= 1e-10


class TestGourComparison:
    def test_case1_maximally_entangled(self):
        assert gour_e12_case1(1.0 / math.sqrt(3.0)) == pytest.approx(1.0, abs=1e-12)

    def test_case1_degenerate_limit(self):
        val = gour_e12_case1(math.sqrt(0.5 - 1e-9))
        assert val == pytest.approx(H_TWO_THIRDS, abs=1e-6)

    def test_case1_capability_boundary(self):
        # a1^2 = 1/4 puts a0^2 exactly at the capability threshold 1/2
        assert gour_e12_case1(0.5) == pytest.approx(H_TWO_THIRDS, abs=1e-12)

    def test_case1_domain(self):
        with pytest.raises(ValueError):
            gour_e12_case1(0.9)
        with pytest.raises(ValueError):
            gour_e12_case1(0.49)

    def test_case2_small_a2_limit(self):
        assert gour_e12_case2(math.sqrt(0.5 - 1e-10), 1e-5) == pytest.approx(H_TWO_THIRDS, abs=1e-6)

    def test_case2_balanced_point(self):
        # regression-pinned: the case-2 value is H(2/3) across the slice
        assert gour_e12_case2(0.5, 0.5) == pytest.approx(H_TWO_THIRDS, abs=1e-12)
        assert 0.9 < gour_e12_case2(0.5, 0.5) <= 1.0

    def test_case2_off_slice_rejected(self):
        with pytest.raises(ValueError):
            gour_e12_case2(0.5, 0.6)


class TestUpperBound:
    def test_maximally_entangled_point(self):
        assert upper_bound_sum(1.0 / math.sqrt(3.0)) == pytest.approx(SUM_MAX, abs=1e-9)

    def test_balanced_endpoint(self):
        assert upper_bound_sum(math.sqrt(0.5)) == pytest.approx(SUM_UPPER_AT_HALF, abs=1e-12)
        # equals 3 + H(3/4)/2
        assert upper_bound_sum(math.sqrt(0.5)) == pytest.approx(3 + H_THREE_QUARTERS / 2, abs=1e-9)

    def test_domain(self):
        with pytest.raises(ValueError):
            upper_bound_sum(0.5)  # a1^2 = 1/4 < 1/3

    def test_dominates_scheme_sums_on_curve(self):
        for b in np.linspace(1 / 3 + 1e-6, 0.5, 12):
            a = max(1.0 - 2.0 * b, 0.0)
            ch = make_channel(math.sqrt(a), math.sqrt(b), math.sqrt(b))
            lo, hi = admissible_theta3(ch)
            params = solve_constraints(ch, 0.5 * (lo + hi), theta2_hint=math.pi / 4)
            rep = resource_report(ch, params)
            assert upper_bound_sum(math.sqrt(b)) >= rep.sum - 1e-9


class TestLowerBound:
    def test_near_unit_entanglement(self):
        val = lower_bound_sum(1.0 + 1e-6)
        assert val == pytest.approx(LOWER_NEAR_ONE, abs=1e-12)
        assert math.isclose(val, 3.0, rel_tol=1e-6)

    def test_maximally_entangled_point(self):
        assert lower_bound_sum(LOG2_3) == pytest.approx(SUM_MAX, abs=1e-9)

    def test_affine_constants(self):
        assert K_SLOPE == pytest.approx(K_FROZEN, abs=1e-12)
        assert B_INTERCEPT == pytest.approx(B_FROZEN, abs=1e-12)

    def test_three_halves_uses_affine_piece(self):
        assert lower_bound_sum(1.5) == pytest.approx(LOWER_AT_THREE_HALVES, abs=1e-12)

    def test_discontinuity_exposed(self):
        below = lower_bound_sum(1.5 - 1e-9)
        assert below == pytest.approx(G_AT_HALF, abs=1e-3)
        assert lower_bound_sum(1.5) - below > 0.4

    def test_domain(self):
        with pytest.raises(ValueError):
            lower_bound_sum(0.9)
        with pytest.raises(ValueError):
            lower_bound_sum(1.7)

    def test_generic_channel_margin(self, rng):
        # the affine piece can exceed solved-scheme sums for generic channels
        # near maximal entanglement by a few 1e-6; pin that margin
        worst = np.inf
        for _ in range(300):
            ch = random_capable_channel(rng)
            e = channel_entropy(ch)
            if not (1.0 < e < LOG2_3):
                continue
            rep = resource_report(ch, _solved(ch, frac=0.5))
            worst = min(worst, rep.sum - lower_bound_sum(e))
        assert worst >= -5e-6


class TestResourceReport:
    def test_degenerate_two_qubit_reduction(self):
        ch = make_channel(*DEGENERATE)
        params = solve_constraints(ch, math.pi / 4, theta2_hint=0.0, theta1_hint=0.0)
        rep = resource_report(ch, params)
        assert rep.e12 == pytest.approx(1.0, abs=1e-12)
        assert rep.h12 == pytest.approx(2.0, abs=1e-12)
        assert rep.sum == pytest.approx(3.0, abs=1e-12)

    def test_degenerate_balanced(self):
        ch = make_channel(*DEGENERATE)
        params = solve_constraints(ch, math.pi / 4, theta2_hint=0.0, theta1_hint=math.pi / 4)
        rep = resource_report(ch, params)
        assert rep.e12 == pytest.approx(E12_BALANCED, abs=1e-12)
        assert rep.h12 == pytest.approx(2.5, abs=1e-12)

    def test_symmetric_consistent_with_bound(self):
        ch = make_channel(*SYMMETRIC)
        rep = resource_report(ch, _solved(ch))
        assert rep.sum >= lower_bound_sum(LOG2_3) - 1e-9

    def test_invariant_ranges(self, rng):
        for _ in range(20):
            ch = random_capable_channel(rng)
            rep = resource_report(ch, _solved(ch, frac=rng.uniform()))
            assert 0.0 <= rep.e12 <= 1.0 + 1e-12
            assert 0.0 <= rep.h12 <= math.log2(6) + 1e-12
            assert all(0.0 <= c <= 1.0 for c in rep.tangles)
            assert sum(rep.probabilities) == pytest.approx(1.0, abs=1e-12)
            assert rep.sum == pytest.approx(rep.e12 + rep.h12, abs=1e-15)
