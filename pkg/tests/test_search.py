import math

import numpy as np
import pytest

from woundpoly.bounds import cnk_product
from woundpoly.curve import apply_linear, construct_cnk, validate
from woundpoly.errors import BadParameters, InvalidProbeError
from woundpoly.sampling import random_curve
from woundpoly.santalo import santalo_product
from woundpoly.search import (
    GaugeChart,
    Mode,
    SearchConfig,
    best_trace,
    criticality_gradient,
    criticality_residual,
    local_search,
    perturb,
    restart_search,
    sweep_increasing,
    unboundedness_sweep,
)

PI = math.pi


def c52_bumped(r=1.2):
    C = construct_cnk(5, 2)
    rho = C.rho.copy()
    rho[2] = r
    return validate(np.column_stack((C.phi, rho)), 2)


def rotation(a):
    return [[math.cos(a), -math.sin(a)], [math.sin(a), math.cos(a)]]


class TestGauge:
    def test_round_trip(self, c52):
        chart = GaugeChart(c52)
        C = chart.curve(chart.coords(c52))
        np.testing.assert_allclose(C.xy, c52.xy, atol=1e-15)
        assert chart.dim == 8

    def test_symmetric_chart(self):
        C = construct_cnk(8, 3)
        chart = GaugeChart(C, Mode.HALF_PERIOD_SYMMETRIC)
        assert chart.dim == 6
        np.testing.assert_allclose(chart.curve(chart.coords(C)).xy, C.xy, atol=1e-14)

    def test_symmetric_needs_periodic_reference(self):
        with pytest.raises(BadParameters):
            GaugeChart(construct_cnk(5, 2), Mode.HALF_PERIOD_SYMMETRIC)
        C = construct_cnk(8, 3)
        rho = C.rho.copy()
        rho[1] = 1.01
        with pytest.raises(BadParameters):
            GaugeChart(validate(np.column_stack((C.phi, rho)), 3), Mode.HALF_PERIOD_SYMMETRIC)

    @pytest.mark.parametrize("make", [lambda: construct_cnk(5, 2), c52_bumped,
                                      lambda: random_curve(np.random.default_rng(1), 2, 6)])
    def test_residual_rotation_and_scale_invariant(self, make):
        C = make()
        r0 = criticality_residual(C)
        assert abs(criticality_residual(apply_linear(C, rotation(0.7))) - r0) < 1e-8
        assert abs(criticality_residual(C.scaled(3.0)) - r0) < 1e-8


class TestCriticality:
    @pytest.mark.parametrize("n,k", [(5, 2), (7, 3), (8, 3), (9, 4)])
    def test_cnk_is_critical(self, n, k):
        C = construct_cnk(n, k)
        assert criticality_residual(C) <= 1e-5 * santalo_product(C)

    def test_control_is_not_critical(self):
        C = c52_bumped()
        assert criticality_residual(C) > 1e-2

    def test_gradient_matches_direction_derivative(self):
        # a single gauge coordinate moved by hand gives the same slope
        C = c52_bumped()
        g = criticality_gradient(C, h=1e-5)
        chart = GaugeChart(C)
        x = chart.coords(C)
        j = 5
        h = 1e-4
        vals = []
        for s in (2, 1, -1, -2):
            y = x.copy()
            y[j] += s * h
            vals.append(santalo_product(chart.curve(y)))
        five = (-vals[0] + 8 * vals[1] - 8 * vals[2] + vals[3]) / (12 * h)
        assert g[j] == pytest.approx(five, rel=1e-5)

    def test_invalid_probe(self):
        # moving an angle by 2 rad overtakes the next vertex of the square
        with pytest.raises(InvalidProbeError):
            criticality_residual(construct_cnk(4, 1), h=2.0)

    def test_bad_step(self, c52):
        with pytest.raises(BadParameters):
            criticality_residual(c52, h=0)


class TestLocalSearch:
    def test_history_non_increasing_and_valid(self, c52):
        cfg = SearchConfig(seed=4, max_iter=400)
        start = perturb(c52, cfg, np.random.default_rng(4))
        tr = local_search(start, cfg)
        assert all(b <= a for a, b in zip(tr.history, tr.history[1:]))
        assert tr.best_value <= tr.start_value
        assert tr.accepted > 0
        validate(np.column_stack((tr.best_curve.phi, tr.best_curve.rho)), 2)

    def test_never_below_cnk_near_pentagram(self, c52):
        traces = restart_search(c52, SearchConfig(seed=11, restarts=4))
        for tr in traces:
            assert tr.best_value >= cnk_product(5, 2) - 1e-6
        assert best_trace(traces).best_value == pytest.approx(cnk_product(5, 2), rel=1e-6)

    def test_symmetric_mode_keeps_symmetry(self):
        C = construct_cnk(8, 3)
        cfg = SearchConfig(mode=Mode.HALF_PERIOD_SYMMETRIC, seed=2, restarts=2, max_iter=600)
        for tr in restart_search(C, cfg):
            B = tr.best_curve
            assert np.array_equal(B.rho[4:], B.rho[:4])
            assert np.array_equal(B.phi[4:], B.phi[:4] + 3 * PI)
            th = B.theta
            assert np.allclose(th[4:], th[:4], rtol=0, atol=1e-14)
            assert tr.best_value >= cnk_product(8, 3) - 1e-6

    def test_deterministic(self, c52):
        cfg = SearchConfig(seed=9, restarts=2, max_iter=200)
        a = [t.best_value for t in restart_search(c52, cfg)]
        b = [t.best_value for t in restart_search(c52, cfg)]
        assert a == b

    def test_perturbation_stays_in_ball(self, c52):
        cfg = SearchConfig(perturbation=0.05)
        chart = GaugeChart(c52)
        rng = np.random.default_rng(0)
        for _ in range(50):
            P = perturb(c52, cfg, rng)
            assert np.linalg.norm(chart.coords(P) - chart.coords(c52)) <= 0.05 + 1e-12

    def test_bad_config(self):
        with pytest.raises(BadParameters):
            SearchConfig(initial_step=0)
        with pytest.raises(ValueError):
            SearchConfig(mode="Sideways")

    def test_config_dict(self):
        d = SearchConfig(mode="HalfPeriodSymmetric").to_dict()
        assert d["mode"] == "HalfPeriodSymmetric" and d["perturbation"] == 0.05


class TestUnbounded:
    def test_k2_floors(self):
        rows = unboundedness_sweep(2, [0.5, 0.2, 0.1], m=256)
        assert [r.eps for r in rows] == [0.5, 0.2, 0.1]
        assert all(r.ok for r in rows)
        assert sweep_increasing(rows)
        np.testing.assert_allclose([r.floor for r in rows], [35.53, 222.07, 888.26], atol=0.01)

    def test_k3_floors(self):
        rows = unboundedness_sweep(3, [0.1, 0.5, 0.2], m=256)
        assert all(r.ok for r in rows) and sweep_increasing(rows)

    def test_finer_polygons_increase(self):
        v = [unboundedness_sweep(2, [0.2], m=m)[0].value for m in (64, 256, 1024)]
        assert v[0] < v[1] < v[2]

    def test_bad(self):
        with pytest.raises(BadParameters):
            unboundedness_sweep(2, [])
        with pytest.raises(BadParameters):
            unboundedness_sweep(1, [0.5])
