#!/usr/bin/env python3
"""
Proximal Map Testing Script
Tests the |t|^q proximal maps against the brute-force grid oracle
"""

import numpy as np
import pytest

# Add project root to path
import sys
from pathlib import Path

sys.path.append(str(Path(__file__).parent.parent.parent))

from errors import InvalidArgumentError, ShapeError
from prox import (
    HalfPenalty,
    L1Penalty,
    PowerPenalty,
    get_penalty,
    grid_minimum,
    grid_prox,
    prox_edgewise,
    prox_objective,
    prox_scalar,
    soft_threshold,
)


class TestPenaltyRegistry:
    """Test penalty selection by exponent"""

    def test_closed_forms_and_generic(self):
        assert isinstance(get_penalty(1.0, 0.1), L1Penalty)
        assert isinstance(get_penalty(0.5, 0.1), HalfPenalty)
        power = get_penalty(0.8, 0.1)
        assert isinstance(power, PowerPenalty)
        assert power.q == 0.8
        assert power.sigma == 0.1

    def test_power_penalty_excludes_l1(self):
        """q = 1 is only served by the soft-threshold class"""
        with pytest.raises(InvalidArgumentError):
            PowerPenalty(1.0, 1.0)

    @pytest.mark.parametrize("q", [0.0, -0.5, 1.5])
    def test_rejects_q_outside_unit_interval(self, q):
        with pytest.raises(InvalidArgumentError):
            get_penalty(q, 1.0)

    def test_rejects_bad_sigma_and_tau(self):
        with pytest.raises(InvalidArgumentError):
            get_penalty(1.0, 0.0)
        with pytest.raises(InvalidArgumentError):
            get_penalty(1.0, 1.0).prox(np.ones(3), 0.0)
        with pytest.raises(ShapeError):
            get_penalty(1.0, 1.0).prox(np.ones((2, 2)), 1.0)

    def test_value_is_unweighted(self):
        """||v||_phi = sum |v_i|^q, without sigma"""
        v = np.array([4.0, -9.0, 0.0])
        assert get_penalty(0.5, 3.0).value(v) == pytest.approx(5.0)
        assert get_penalty(1.0, 3.0).value(v) == pytest.approx(13.0)


class TestProxOracle:
    """Test prox optimality against the grid minimum"""

    def test_random_cases_reach_grid_minimum(self):
        """1000 random (q, tau, x): objective at the prox <= grid minimum + 1e-8"""
        rng = np.random.default_rng(2024)
        for _ in range(1000):
            q = float(rng.choice([1.0, 0.5, 0.8]))
            tau = float(rng.uniform(1e-6, 2.0))
            x = float(rng.uniform(-10.0, 10.0))
            y = prox_scalar(q, tau, x)
            achieved = float(prox_objective(q, tau, x, np.array([y]))[0])
            assert achieved <= grid_minimum(q, tau, x, step=1e-4) + 1e-8, (q, tau, x, y)

    def test_l1_is_soft_threshold_exactly(self):
        """q = 1 equals sign(x) max(|x| - tau, 0) bit for bit"""
        x = np.random.default_rng(0).uniform(-5, 5, size=500)
        np.testing.assert_array_equal(get_penalty(1.0, 1.0).prox(x, 0.7), soft_threshold(x, 0.7))

    @pytest.mark.parametrize("q", [1.0, 0.5, 0.8, 0.3])
    def test_shrinkage_and_odd_symmetry(self, q):
        """|prox(x)| <= |x| and prox(-x) = -prox(x)"""
        penalty = get_penalty(q, 1.0)
        x = np.random.default_rng(7).uniform(-10, 10, size=400)
        out = penalty.prox(x, 0.9)
        assert np.all(np.abs(out) <= np.abs(x))
        np.testing.assert_array_equal(penalty.prox(-x, 0.9), -out)

    @pytest.mark.parametrize("q", [0.5, 0.8, 0.3])
    def test_dead_zone(self, q):
        """Below the threshold t* > 0 every input maps to 0; just above it does not"""
        penalty = get_penalty(q, 1.0)
        tau = 0.6
        t_star = penalty.threshold(tau)
        assert t_star > 0.0
        inside = np.linspace(-t_star, t_star, 101)
        assert np.all(penalty.prox(inside, tau) == 0.0)
        assert penalty.prox(np.array([t_star * 1.01]), tau)[0] > 0.0

    def test_half_threshold_value(self):
        """TV(1/2) dead zone ends at 1.5 tau^(2/3)"""
        assert HalfPenalty(sigma=1.0).threshold(8.0) == pytest.approx(6.0)

    def test_half_matches_grid_prox(self):
        """Closed-form half thresholding agrees with the grid argmin"""
        penalty = get_penalty(0.5, 1.0)
        for x in [2.0, 3.5, -4.0, 7.25]:
            assert penalty.prox(np.array([x]), 1.0)[0] == pytest.approx(grid_prox(0.5, 1.0, x), abs=2e-5)

    def test_power_newton_matches_grid_prox(self):
        """Generic q via Newton agrees with the grid argmin"""
        for x in [1.5, -3.0, 6.0]:
            assert prox_scalar(0.8, 0.5, x) == pytest.approx(grid_prox(0.8, 0.5, x), abs=2e-5)


class TestEdgewiseProx:
    """Test the v-update map"""

    def test_uses_sigma_over_delta(self):
        """tau = sigma / delta"""
        z = np.random.default_rng(1).standard_normal(40)
        out = prox_edgewise(get_penalty(1.0, 0.2), 2.0, z, expected_size=40)
        np.testing.assert_array_equal(out, soft_threshold(z, 0.1))

    def test_size_check(self):
        with pytest.raises(ShapeError):
            prox_edgewise(get_penalty(1.0, 0.2), 2.0, np.zeros(5), expected_size=6)

    def test_scalar_helper(self):
        assert prox_scalar(1.0, 1.0, 3.0) == 2.0
        assert prox_scalar(1.0, 1.0, -0.5) == 0.0


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
