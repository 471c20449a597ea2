#!/usr/bin/env python3
"""
Linear Solve Testing Script
Tests CG, the FFT fast path, the dense solver and the nu estimator
"""

import numpy as np
import pytest

# Add project root to path
import sys
from pathlib import Path

sys.path.append(str(Path(__file__).parent.parent.parent))

from errors import EstimationError, InvalidArgumentError, UnsupportedVariantError
from linsolve import (
    CGSolver,
    CirculantSolver,
    DirectSolver,
    NormalOperator,
    build_nu_operator,
    estimate_nu,
    make_linear_solver,
    mode_determinants,
    nu_confidence,
    nu_dense,
    resolve_solver_name,
    solve_circulant_fast,
    solve_normal,
    stacked_sigma_min,
)
from operators import BlurOperator, DiffOperator, StackedOperator


def normal_operator(n: int, variant: str = "banded", delta: float = 0.5, beta: float = 1.0, blur=None):
    blur = blur or BlurOperator.from_gaussian(n, 3, 1.0)
    return NormalOperator(StackedOperator(blur, beta), DiffOperator(n, variant), delta)


class TestNormalOperator:
    """Test A = K^* K + delta T^* T"""

    @pytest.mark.parametrize("variant", ["banded", "circulant"])
    def test_matches_dense_oracle(self, variant):
        op = normal_operator(4, variant, delta=0.7, beta=1.3)
        K = op.K.to_dense()
        T = op.T.to_dense()
        np.testing.assert_allclose(op.to_dense(), K.T @ K + 0.7 * T.T @ T, atol=1e-10)

    def test_diagonal(self):
        op = normal_operator(5, delta=2.0)
        np.testing.assert_allclose(op.diagonal(), np.diag(op.to_dense()), atol=1e-12)

    def test_rejects_non_positive_delta(self):
        with pytest.raises(InvalidArgumentError):
            normal_operator(4, delta=0.0)


class TestConjugateGradient:
    """Test the matrix-free CG u-solve"""

    @pytest.mark.parametrize("n", [4, 8])
    @pytest.mark.parametrize("precondition", [False, True])
    def test_recovers_known_solution(self, n, precondition):
        """rhs = A u_true gives back u_true within 1e-7"""
        op = normal_operator(n)
        u_true = np.random.default_rng(n).standard_normal(2 * n * n)
        u, report = solve_normal(op, op.apply(u_true), tol=1e-12, precondition=precondition)
        assert report.converged
        np.testing.assert_allclose(u, u_true, atol=1e-7)

    @pytest.mark.parametrize("n", [4, 8])
    def test_agrees_with_dense_solve(self, n):
        op = normal_operator(n, delta=3.0)
        rhs = np.random.default_rng(0).standard_normal(2 * n * n)
        u_cg, _ = CGSolver(op, tol=1e-12).solve(rhs)
        u_direct, _ = DirectSolver(op).solve(rhs)
        np.testing.assert_allclose(u_cg, u_direct, atol=1e-7)
        np.testing.assert_allclose(u_direct, np.linalg.solve(op.to_dense(), rhs), atol=1e-8)

    def test_zero_rhs(self):
        op = normal_operator(4)
        u, report = solve_normal(op, np.zeros(32))
        assert np.all(u == 0.0)
        assert report.converged
        assert report.iterations == 0

    def test_non_convergence_is_reported(self):
        """An exhausted iteration cap returns converged=False instead of raising"""
        op = normal_operator(8)
        rhs = np.random.default_rng(1).standard_normal(128)
        _, report = CGSolver(op, tol=1e-12, max_iters=1).solve(rhs)
        assert not report.converged
        assert report.iterations == 1
        assert report.relative_residual > 1e-12

    def test_warm_start_helps(self):
        """Warm-started CG needs no more iterations than a cold start (slack 1)"""
        op = normal_operator(8)
        rng = np.random.default_rng(2)
        rhs = rng.standard_normal(128)
        solver = CGSolver(op, tol=1e-10)
        u_prev, _ = solver.solve(rhs)
        rhs_next = rhs + 1e-3 * rng.standard_normal(128)
        _, cold = solver.solve(rhs_next)
        _, warm = solver.solve(rhs_next, x0=u_prev)
        assert warm.iterations <= cold.iterations + 1


class TestCirculantSolve:
    """Test the per-mode 2x2 FFT solve"""

    def test_matches_dense_solve(self):
        """Identity blur, delta = beta = 1, n = 4: matches the dense solve to 1e-8"""
        op = normal_operator(4, "circulant", delta=1.0, blur=BlurOperator.identity(4))
        rhs = np.random.default_rng(3).standard_normal(32)
        np.testing.assert_allclose(solve_circulant_fast(op, rhs), np.linalg.solve(op.to_dense(), rhs), atol=1e-8)

    def test_agrees_with_cg(self):
        """FFT fast path vs CG on the circulant operator at n = 16 to 1e-7"""
        op = normal_operator(16, "circulant", delta=1.0, blur=BlurOperator.from_gaussian(16, 5, 1.5))
        rhs = np.random.default_rng(4).standard_normal(512)
        u_fft, report = CirculantSolver(op).solve(rhs)
        u_cg, _ = CGSolver(op, tol=1e-12).solve(rhs)
        assert report.converged
        assert report.method == "fft"
        np.testing.assert_allclose(u_fft, u_cg, atol=1e-7)

    def test_every_mode_is_invertible(self):
        """The zero-frequency mode included, every 2x2 block has a positive determinant"""
        op = normal_operator(8, "circulant", delta=0.01, blur=BlurOperator.from_gaussian(8, 5, 2.0))
        assert np.all(mode_determinants(op) > 0.0)

    def test_linearity(self):
        op = normal_operator(8, "circulant", delta=1.0)
        rhs = np.random.default_rng(5).standard_normal(128)
        np.testing.assert_allclose(solve_circulant_fast(op, 3.0 * rhs), 3.0 * solve_circulant_fast(op, rhs), atol=1e-10)

    def test_banded_variant_rejected(self):
        with pytest.raises(UnsupportedVariantError):
            CirculantSolver(normal_operator(4, "banded"))


class TestSolverRegistry:
    """Test solver resolution"""

    def test_auto_resolution(self):
        assert resolve_solver_name("auto", "banded") == "cg"
        assert resolve_solver_name("auto", "circulant") == "fft"
        assert resolve_solver_name("direct", "banded") == "direct"
        with pytest.raises(InvalidArgumentError):
            resolve_solver_name("lu", "banded")

    def test_make_linear_solver(self):
        assert isinstance(make_linear_solver("auto", normal_operator(4)), CGSolver)
        assert isinstance(make_linear_solver("auto", normal_operator(4, "circulant")), CirculantSolver)
        assert isinstance(make_linear_solver("direct", normal_operator(4)), DirectSolver)

    def test_direct_size_limit(self):
        with pytest.raises(InvalidArgumentError):
            DirectSolver(normal_operator(8), max_size=64)


class TestNuEstimator:
    """Test the probabilistic lower bound on nu"""

    def test_confidence_formula(self):
        """1 - 2^-10"""
        assert nu_confidence(2.0, 10) == 0.9990234375

    def test_dense_nu_is_sigma_min_squared(self):
        blur = BlurOperator.from_gaussian(4, 3, 1.0)
        nu = nu_dense(build_nu_operator(blur))
        assert nu.source == "dense"
        assert nu.nu_hat == pytest.approx(stacked_sigma_min(blur) ** 2, abs=1e-8)

    @pytest.mark.parametrize("n", [4, 8])
    def test_lower_bound_holds_in_seeded_trials(self, n):
        """nu_hat <= nu_true in at least 99 of 100 trials with b = 2, M = 20"""
        blur = BlurOperator.from_gaussian(n, 3, 1.0)
        op = build_nu_operator(blur)
        nu_true = nu_dense(op).nu_hat
        solver = DirectSolver(op)
        hits = sum(estimate_nu(op, probes=20, base=2.0, seed=seed, solver=solver).nu_hat <= nu_true for seed in range(100))
        assert hits >= 99

    def test_more_probes_never_increase_the_bound(self):
        """The first M probes are shared, so nu_hat is non-increasing in M"""
        op = build_nu_operator(BlurOperator.from_gaussian(6, 3, 1.0))
        solver = DirectSolver(op)
        few = estimate_nu(op, probes=5, seed=11, solver=solver)
        many = estimate_nu(op, probes=20, seed=11, solver=solver)
        assert many.nu_hat <= few.nu_hat
        assert many.probe_norms[:5] == few.probe_norms
        assert many.confidence == nu_confidence(2.0, 20)

    def test_default_solver(self):
        """Without an explicit solver the registry default (CG for banded) is used"""
        op = build_nu_operator(BlurOperator.from_gaussian(4, 3, 1.0))
        estimate = estimate_nu(op, probes=3)
        assert estimate.source == "probabilistic"
        assert 0.0 < estimate.nu_hat

    def test_failed_probe_solve(self):
        op = build_nu_operator(BlurOperator.from_gaussian(8, 3, 1.0))
        with pytest.raises(EstimationError):
            estimate_nu(op, probes=2, solver=CGSolver(op, tol=1e-12, max_iters=1))

    def test_argument_validation(self):
        op = build_nu_operator(BlurOperator.identity(4))
        with pytest.raises(InvalidArgumentError):
            estimate_nu(op, probes=0)
        with pytest.raises(InvalidArgumentError):
            estimate_nu(op, base=1.0)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
