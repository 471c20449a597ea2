#!/usr/bin/env python3
"""
Diagnostics Testing Script
Tests the objective, augmented Lagrangian, F and the per-step bound checks
"""

import math

import numpy as np
import pytest

# Add project root to path
import sys
from pathlib import Path

sys.path.append(str(Path(__file__).parent.parent.parent))

from errors import ShapeError
from imagecore import DegradationSpec, degrade, make_phantom
from operators import BlurOperator
from solvers.config import SolverConfig
from solvers.diagnostics import (
    boundedness_norm,
    check_descent,
    check_dual_bound,
    critical_point_residuals,
    descent_check_applies,
    eval_F,
    eval_lagrangian,
    eval_objective,
)
from solvers.problem import build_problem
from solvers.state import SolverState, initial_state
from solvers.theory import TheoryConstants


def make_problem(n: int = 8, q: float = 1.0, **overrides):
    cfg = SolverConfig(kernel_size=3, kernel_sigma=1.0, q=q, **overrides)
    blurred = degrade(make_phantom("disks", n, seed=1), DegradationSpec(kernel_size=3, kernel_sigma=1.0))
    return cfg, build_problem(cfg, blurred)


def make_constants(**overrides) -> TheoryConstants:
    values = dict(
        n=8,
        variant="banded",
        alpha=0.5,
        beta=1.0,
        delta=2.0,
        theta=2.0,
        norm_K=1.5,
        norm_K_converged=True,
        norm_T=1.9,
        nu_hat=0.1,
        nu_confidence=1.0,
        nu_source="dense",
        delta_bound=20.25,
        delta_min=1000.0,
        h_hat=0.5,
        gamma_u=1.0,
        gamma_v=1.0,
        gamma_p=1.0,
        gamma=3.0,
    )
    values.update(overrides)
    return TheoryConstants(**values)


def random_point(problem, seed: int = 0):
    rng = np.random.default_rng(seed)
    return (
        rng.standard_normal(problem.K.shape[1]),
        rng.standard_normal(problem.edge_size),
        rng.standard_normal(problem.edge_size),
    )


class TestObjectiveAndLagrangian:
    """Test L and the model objective"""

    def test_lagrangian_at_zero(self):
        """L(0, 0, 0) = 1/2 ||f||^2"""
        cfg, problem = make_problem()
        zeros_u = np.zeros(problem.K.shape[1])
        zeros_e = np.zeros(problem.edge_size)
        expected = 0.5 * float(np.dot(problem.f_tilde, problem.f_tilde))
        assert eval_lagrangian(zeros_u, zeros_e, zeros_e, cfg, problem) == pytest.approx(expected, rel=1e-12)

    @pytest.mark.parametrize("q", [1.0, 0.5])
    def test_lagrangian_against_dense_evaluation(self, q):
        """Termwise re-evaluation with dense matrices agrees to 1e-9 relative"""
        cfg, problem = make_problem(q=q, delta=0.7, sigma=0.05)
        u, v, p = random_point(problem)
        K = problem.K.to_dense()
        T = problem.T.to_dense()
        gap = T @ u - v
        terms = [
            0.5 * np.sum((K @ u - problem.f) ** 2),
            0.05 * np.sum(np.abs(v) ** q),
            -np.sum(p * gap),
            0.35 * np.sum(gap**2),
        ]
        assert eval_lagrangian(u, v, p, cfg, problem) == pytest.approx(math.fsum(terms), rel=1e-9)

    def test_objective(self):
        """1/2 ||K u - f||^2 + sigma ||T u||_phi equals L at v = T u, p = 0"""
        cfg, problem = make_problem(sigma=0.2)
        u, _, _ = random_point(problem, seed=3)
        v = problem.T.apply(u)
        expected = eval_lagrangian(u, v, np.zeros(problem.edge_size), cfg, problem)
        assert eval_objective(u, cfg, problem) == pytest.approx(expected, rel=1e-12)

    def test_shape_errors(self):
        cfg, problem = make_problem()
        u, v, p = random_point(problem)
        with pytest.raises(ShapeError):
            eval_lagrangian(u, v[:-1], p, cfg, problem)
        with pytest.raises(ShapeError):
            eval_lagrangian(u[:-1], v, p, cfg, problem)


class TestAuxiliaryFunction:
    """Test F = L + 7 alpha^2 c / (2 delta) ||u - x||^2"""

    def test_equals_lagrangian_when_x_is_u(self):
        cfg, problem = make_problem()
        u, v, p = random_point(problem)
        L = eval_lagrangian(u, v, p, cfg, problem)
        assert eval_F(u, v, p, u, cfg, problem, make_constants()) == L

    def test_equals_lagrangian_without_inertia(self):
        cfg, problem = make_problem()
        u, v, p = random_point(problem)
        x = u + 1.0
        L = eval_lagrangian(u, v, p, cfg, problem)
        assert eval_F(u, v, p, x, cfg, problem, make_constants(alpha=0.0)) == L

    def test_memory_term(self):
        cfg, problem = make_problem()
        u, v, p = random_point(problem)
        x = u - 0.1
        constants = make_constants()
        L = eval_lagrangian(u, v, p, cfg, problem)
        extra = constants.memory_coefficient * 0.01 * u.size
        assert eval_F(u, v, p, x, cfg, problem, constants) == pytest.approx(L + extra, rel=1e-9)


class TestBoundChecks:
    """Test the descent, dual-increment and critical-point checks"""

    def test_descent_margin(self):
        constants = make_constants(h_hat=0.5)
        check = check_descent(10.0, 9.0, 1.0, constants)
        assert check.holds
        assert check.value == pytest.approx(0.5)
        assert not check_descent(10.0, 10.5, 0.0, constants).holds

    def test_descent_tolerance_scales_with_F(self):
        """A violation below 1e-9 (1 + |F|) still passes"""
        constants = make_constants(h_hat=0.0)
        assert check_descent(1e6, 1e6 + 1e-4, 0.0, constants).holds
        assert not check_descent(1e6, 1e6 + 1e-2, 0.0, constants).holds

    def test_dual_ratio(self):
        """ratio = ||dp|| / (theta ||K||^2 ||du||)"""
        constants = make_constants(theta=2.0, norm_K=1.0)
        u = np.zeros(4)
        p = np.zeros(3)
        before = SolverState(u, u, p, p, p, p, k=2)
        after = before.advance(np.array([1.0, 0.0, 0.0, 0.0]), p, np.array([1.0, 0.0, 0.0]))
        check = check_dual_bound(before, after, constants)
        assert check.value == pytest.approx(0.5)
        assert check.holds

        violating = before.advance(np.array([0.1, 0.0, 0.0, 0.0]), p, np.array([1.0, 0.0, 0.0]))
        assert not check_dual_bound(before, violating, constants).holds

    def test_dual_ratio_without_movement(self):
        """No movement at all gives ratio 0; p moving with u fixed gives inf"""
        constants = make_constants()
        u = np.zeros(4)
        p = np.zeros(3)
        state = SolverState(u, u, p, p, p, p)
        assert check_dual_bound(state, state.advance(u, p, p), constants).value == 0.0
        assert math.isinf(check_dual_bound(state, state.advance(u, p, p + 1.0), constants).value)

    def test_critical_point_residuals_at_start(self):
        """v = T u at initialization, so feasibility is exactly zero"""
        _, problem = make_problem()
        state = initial_state(problem)
        report = critical_point_residuals(state, problem)
        assert report.feasibility == 0.0
        assert report.stationarity > 0.0

    def test_boundedness_norm(self):
        u = np.array([3.0, 0.0])
        v = np.array([4.0])
        p = np.array([12.0])
        assert boundedness_norm(SolverState(u, u, v, v, p, p)) == pytest.approx(13.0)

    def test_descent_applies_only_when_admissible(self):
        assert not descent_check_applies(None)
        assert not descent_check_applies(make_constants(delta=2.0, delta_min=1000.0))
        assert descent_check_applies(make_constants(delta=2000.0, delta_min=1000.0))


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
