"""
Objective, augmented Lagrangian, auxiliary function F and the per-step bound checks
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from errors import ShapeError
from solvers.config import SolverConfig
from solvers.problem import Problem
from solvers.state import SolverState, StepOutcome
from solvers.theory import TheoryConstants

logger = logging.getLogger(__name__)

DESCENT_TOL = 1e-9
DUAL_TOL = 1e-8
SUBGRADIENT_TOL = 1e-6


@dataclass(frozen=True)
class BoundCheck:
    """holds is the verdict; value is the margin (descent) or the ratio (bounds)"""

    holds: bool
    value: float


@dataclass(frozen=True)
class CriticalPointReport:
    stationarity: float  # ||T^* p - K^*(K u - f)||
    feasibility: float  # ||T u - v||


def _check_shapes(problem: Problem, u: np.ndarray, v: np.ndarray, p: np.ndarray) -> None:
    size = problem.K.shape[1]
    if u.size != size:
        raise ShapeError(f"u must have length {size}, got {u.size}")
    if v.size != problem.edge_size or p.size != problem.edge_size:
        raise ShapeError(f"v and p must have length {problem.edge_size}, got {v.size} and {p.size}")


def eval_objective(u: np.ndarray, cfg: SolverConfig, problem: Problem) -> float:
    """1/2 ||K u - f||^2 + sigma ||T u||_phi"""
    data = problem.K.apply(u) - problem.f
    return 0.5 * float(np.dot(data, data)) + cfg.sigma * problem.penalty.value(problem.T.apply(u))


def eval_lagrangian(u: np.ndarray, v: np.ndarray, p: np.ndarray, cfg: SolverConfig, problem: Problem) -> float:
    """1/2 ||K u - f||^2 + sigma ||v||_phi - <p, T u - v> + delta/2 ||T u - v||^2"""
    u, v, p = (np.asarray(x, dtype=np.float64) for x in (u, v, p))
    _check_shapes(problem, u, v, p)
    data = problem.K.apply(u) - problem.f
    gap = problem.T.apply(u) - v
    return (
        0.5 * float(np.dot(data, data))
        + cfg.sigma * problem.penalty.value(v)
        - float(np.dot(p, gap))
        + 0.5 * cfg.delta * float(np.dot(gap, gap))
    )


def eval_F(
    u: np.ndarray,
    v: np.ndarray,
    p: np.ndarray,
    x: np.ndarray,
    cfg: SolverConfig,
    problem: Problem,
    constants: TheoryConstants,
) -> float:
    """L(u, v, p) + 7 alpha^2 c / (2 delta) ||u - x||^2"""
    value = eval_lagrangian(u, v, p, cfg, problem)
    if constants.alpha == 0.0:
        return value
    diff = np.asarray(u, dtype=np.float64) - np.asarray(x, dtype=np.float64)
    return value + constants.memory_coefficient * float(np.dot(diff, diff))


def check_descent(F_prev: float, F_next: float, du_norm: float, constants: TheoryConstants) -> BoundCheck:
    """F(w^k) - F(w^{k+1}) >= h ||u^{k+1} - u^k||^2, up to 1e-9 (1 + |F(w^k)|)"""
    margin = (F_prev - F_next) - constants.h_hat * du_norm**2
    return BoundCheck(margin >= -DESCENT_TOL * (1.0 + abs(F_prev)), margin)


def _ratio(numerator: float, denominator: float) -> float:
    if denominator > 0.0:
        return numerator / denominator
    return 0.0 if numerator == 0.0 else math.inf


def check_dual_bound(before: SolverState, after: SolverState, constants: TheoryConstants) -> BoundCheck:
    """||p^{k+1} - p^k|| <= theta ||K||^2 ||u^{k+1} - u^k||; value is the ratio of the two sides"""
    dp = float(np.linalg.norm(after.p - before.p))
    du = float(np.linalg.norm(after.u - before.u))
    ratio = _ratio(dp, constants.dual_factor * du)
    return BoundCheck(ratio <= 1.0 + DUAL_TOL, ratio)


def subgradient_norm(before: SolverState, outcome: StepOutcome, constants: TheoryConstants, problem: Problem) -> float:
    """Norm of s^{k+1} = (s_u, s_v, s_p, s_x) assembled from the step quantities"""
    after = outcome.state
    T = problem.T
    du = after.u - before.u
    coef = constants.memory_coefficient
    s_v = (1.0 + constants.delta) * (after.p - outcome.p_hat)
    s_u = T.adjoint(outcome.p_hat - after.p) + coef * du
    s_p = after.v - T.apply(after.u)
    s_x = -2.0 * coef * du
    return math.sqrt(sum(float(np.dot(s, s)) for s in (s_u, s_v, s_p, s_x)))


def check_subgradient_bound(
    before: SolverState, outcome: StepOutcome, constants: TheoryConstants, problem: Problem
) -> BoundCheck:
    """||s^{k+1}|| <= gamma (||u^{k+1} - u^k|| + ||u^k - u^{k-1}||) (1 + 1e-6)"""
    s_norm = subgradient_norm(before, outcome, constants, problem)
    path = float(np.linalg.norm(outcome.state.u - before.u)) + float(np.linalg.norm(before.u - before.u_prev))
    ratio = _ratio(s_norm, constants.gamma * path)
    return BoundCheck(ratio <= 1.0 + SUBGRADIENT_TOL, ratio)


def critical_point_residuals(state: SolverState, problem: Problem) -> CriticalPointReport:
    """Residuals of T^* p = K^*(K u - f) and T u = v"""
    data = problem.K.adjoint(problem.K.apply(state.u) - problem.f)
    stationarity = float(np.linalg.norm(problem.T.adjoint(state.p) - data))
    feasibility = float(np.linalg.norm(problem.T.apply(state.u) - state.v))
    return CriticalPointReport(stationarity, feasibility)


def boundedness_norm(state: SolverState) -> float:
    """||(u, v, p)||, tracked to check the iterates stay bounded"""
    return math.sqrt(sum(float(np.dot(x, x)) for x in (state.u, state.v, state.p)))


def descent_check_applies(constants: Optional[TheoryConstants]) -> bool:
    """Descent is only guaranteed (and asserted) for admissible delta"""
    return constants is not None and constants.admissible()
