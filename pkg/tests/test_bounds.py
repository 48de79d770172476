import math

import numpy as np
import pytest

from woundpoly.bounds import (
    CSV_FIELDS,
    EqualityCase,
    classify_equality,
    cnk_product,
    derivative_bracket,
    equal_angle_curve,
    equality_witnesses,
    inv_one_minus_cos,
    lemma11_check,
    optimal_k1,
    prop10_bound,
    prop10_trials,
    prop12_bound,
    prop12_constants,
    prop12_trials,
    random_unit_partitions,
    reciprocal_coefficient,
    reciprocal_coefficient_derivative,
    remark13_compare,
    split_bound,
    t_over_sin,
)
from woundpoly.errors import BadParameters
from woundpoly.polarity import volume_product

PI = math.pi


class TestClosedForms:
    def test_cnk_values(self):
        assert cnk_product(5, 2) == pytest.approx(22.6127, abs=1e-4)
        assert cnk_product(8, 2) == pytest.approx(32.0, rel=1e-15)
        assert cnk_product(3, 1) == pytest.approx(6.75, rel=1e-15)

    def test_cnk_monotone_in_n(self):
        for k in range(1, 7):
            v = [cnk_product(n, k) for n in range(2 * k + 1, 8 * k + 1)]
            assert all(b > a for a, b in zip(v, v[1:]))

    def test_cnk_bad(self):
        with pytest.raises(BadParameters):
            cnk_product(4, 2)

    def test_prop10_values(self):
        assert prop10_bound(5, 2) == pytest.approx(22.6127, abs=1e-4)
        assert prop10_bound(8, 2) == pytest.approx(32.0)
        assert prop10_bound(7, 2) == pytest.approx(49 * math.sin(2 * PI / 7) ** 2, rel=1e-15)
        assert prop10_bound(7, 2) == pytest.approx(29.9518, abs=1e-4)

    def test_prop10_range(self):
        with pytest.raises(BadParameters):
            prop10_bound(9, 2)
        with pytest.raises(BadParameters):
            prop10_bound(4, 2)


class TestClassify:
    def test_dilate(self):
        assert classify_equality(5, 2, [1.3] * 5) is EqualityCase.CNK_DILATE

    def test_rhomb(self):
        r = [1, 2] * 4
        assert classify_equality(8, 2, r) is EqualityCase.RHOMB_TRAVERSED
        assert volume_product(equal_angle_curve(r, 2)) == pytest.approx(32, abs=1e-9)

    def test_none(self):
        r = [1] * 6 + [2]
        assert classify_equality(7, 2, r) is EqualityCase.NONE
        assert volume_product(equal_angle_curve(r, 2)) > prop10_bound(7, 2)

    def test_alternating_off_4k_is_none(self):
        assert classify_equality(6, 2, [1, 2] * 3) is EqualityCase.NONE

    def test_length(self):
        with pytest.raises(BadParameters):
            classify_equality(5, 2, [1] * 4)

    @pytest.mark.parametrize("n,k", [(5, 2), (8, 2), (12, 3), (16, 4)])
    def test_witnesses(self, n, k):
        for r, case, gap in equality_witnesses(n, k, 20, seed=3):
            assert case is not EqualityCase.NONE
            assert abs(gap) < 1e-6


class TestProp10Trials:
    @pytest.mark.parametrize("n,k", [(5, 2), (7, 2), (8, 2), (9, 3)])
    def test_no_violation(self, n, k):
        rep = prop10_trials(n, k, trials=2000, seed=1)
        assert rep.gap >= -1e-9
        assert rep.trials == 2000

    def test_deterministic(self):
        a = prop10_trials(7, 2, trials=500, seed=42)
        b = prop10_trials(7, 2, trials=500, seed=42)
        assert a.achieved == b.achieved

    def test_csv_row(self):
        row = prop10_trials(5, 2, trials=100, seed=0).csv_row()
        assert tuple(row) == CSV_FIELDS


class TestLemma11:
    def test_grid(self):
        rep = lemma11_check(1000)
        assert rep.passed
        assert rep.min_second_difference_inv_cos > 0
        assert rep.min_second_difference_t_sin > 0

    def test_min_grid(self):
        with pytest.raises(BadParameters):
            lemma11_check(9)

    def test_t_over_sin_near_zero(self):
        t = np.array([1e-4, 2e-4, 3e-4])
        y = t_over_sin(t)
        assert y[0] == pytest.approx(1 + t[0] ** 2 / 6, rel=1e-12)
        # second difference is about h^2 * f''(0) = h^2 / 3
        assert y[0] - 2 * y[1] + y[2] > 0

    def test_inv_cos_near_pi_matches_second_derivative(self):
        # f = 1/(1 - cos t), f'' = (1 + cos t + sin^2 t ... ) written out below
        def f2(t):
            c, s = np.cos(t), np.sin(t)
            return (2 * s**2 - c * (1 - c)) / (1 - c) ** 3

        h = (PI - 0.02) / 999
        t = PI - 0.01 - h
        sd = inv_one_minus_cos(t - h) - 2 * inv_one_minus_cos(t) + inv_one_minus_cos(t + h)
        assert sd > 0
        assert sd == pytest.approx(h * h * f2(t), rel=1e-4)
        assert f2(PI) == pytest.approx(0.25, rel=1e-15)


class TestProp12:
    def test_constants(self):
        c = prop12_constants()
        assert abs(c.c0_degrees - 115.5) < 0.5
        assert c.c0 == pytest.approx(2.016, abs=1e-3)
        assert abs(c.coefficient - 1.7366) < 5e-4
        assert c.coefficient == pytest.approx(4 / c.r_min)

    def test_root_is_exact(self):
        c = prop12_constants()
        assert abs(reciprocal_coefficient_derivative(c.c0)) < 1e-12

    def test_strict_minimum(self):
        c = prop12_constants()
        assert reciprocal_coefficient(c.c0 - 0.1) > c.r_min
        assert reciprocal_coefficient(c.c0 + 0.1) > c.r_min

    def test_minimum_by_dense_grid(self):
        t = np.linspace(0.01, PI - 0.01, 2_000_001)
        v = reciprocal_coefficient(t)
        i = int(np.argmin(v))
        c = prop12_constants()
        assert abs(t[i] - c.c0) < 2 * (t[1] - t[0])
        assert v[i] == pytest.approx(c.r_min, rel=1e-10)

    def test_bracket(self):
        lo, hi = derivative_bracket()
        assert 1.5 <= lo < hi <= 2.5
        t = np.linspace(0.01, PI - 0.01, 1000)
        s = np.sign(reciprocal_coefficient_derivative(t))
        assert np.count_nonzero(s[:-1] != s[1:]) == 1

    def test_derivative_by_differences(self):
        t = np.linspace(0.2, 3.0, 30)
        h = 1e-6
        fd = (reciprocal_coefficient(t + h) - reciprocal_coefficient(t - h)) / (2 * h)
        np.testing.assert_allclose(reciprocal_coefficient_derivative(t), fd, rtol=1e-6, atol=1e-8)

    def test_bound_k2(self):
        assert prop12_bound(2) == pytest.approx(6.9466, abs=1e-4)
        with pytest.raises(BadParameters):
            prop12_bound(1)

    def test_optimal_split(self):
        c0 = prop12_constants().c0
        assert 0 < optimal_k1(2, c0) < 4
        # brute-force minimisation of the quadratic in k1
        A = PI**2 / 4 * math.sin(c0) / c0
        B = (1 - math.cos(c0)) / 2
        k1 = np.linspace(0, 4, 400_001)
        q = k1**2 * A + (4 - k1) ** 2 * B
        assert abs(k1[np.argmin(q)] - optimal_k1(2, c0)) < 2e-5
        assert q.min() == pytest.approx(split_bound(2, c0), rel=1e-9)

    def test_split_bound_at_c0_is_the_coefficient(self):
        c = prop12_constants()
        for k in (2, 5, 10):
            assert split_bound(k, c.c0) == pytest.approx(prop12_bound(k), rel=1e-12)

    def test_split_bound_is_best_at_c0(self):
        c0 = prop12_constants().c0
        cs = np.linspace(0.3, 3.0, 1001)
        assert max(split_bound(3, c) for c in cs) <= split_bound(3, c0) * (1 + 1e-12)

    def test_ratio_tends_to_quarter_coefficient(self):
        coef = prop12_constants().coefficient
        r = [prop12_bound(k) / cnk_product(2 * k + 1, k) for k in (10, 100, 10_000)]
        assert all(b > a for a, b in zip(r, r[1:]))
        assert r[-1] == pytest.approx(coef / 4, rel=1e-4)
        assert abs(coef / 4 - 0.434) < 0.002

    def test_trials_small(self):
        rep = prop12_trials(2, trials=2000, seed=5)
        assert rep.achieved >= prop12_bound(2) - 1e-6
        assert 5 <= rep.n <= 8


class TestPartitions:
    @pytest.mark.parametrize("n,k", [(5, 2), (8, 2), (13, 3), (16, 4), (40, 4)])
    def test_valid(self, n, k, rng):
        th = random_unit_partitions(n, k, 2000, rng)
        assert np.all((th > 0) & (th < PI))
        np.testing.assert_allclose(th.sum(axis=1), 2 * PI * k, rtol=1e-13)

    def test_spread(self, rng):
        # the sampler should reach near the faces of the feasible slice
        th = random_unit_partitions(5, 2, 5000, rng)
        assert th.max() > 0.95 * PI


class TestRemark13:
    def test_k2(self):
        r = remark13_compare(2)
        assert r.smaller == "simplex"
        assert r.simplex == pytest.approx(28.44, abs=5e-3)
        assert r.prism == pytest.approx(30.15, abs=5e-3)

    @pytest.mark.parametrize("k", range(3, 11))
    def test_prism_for_larger_k(self, k):
        assert remark13_compare(k).smaller == "prism"

    @pytest.mark.parametrize("k", range(4, 11))
    def test_ratio_structure(self, k):
        r = remark13_compare(k)
        # simplex/prism equals 16k^2 / (3 (2k+1)^2 sin^2(k pi/(2k+1)))
        expected = 16 * k * k / (3 * (2 * k + 1) ** 2 * math.sin(k * PI / (2 * k + 1)) ** 2)
        assert r.simplex / r.prism == pytest.approx(expected, rel=1e-12)
        assert 16 * k * k / (3 * (2 * k + 1) ** 2) > 1
