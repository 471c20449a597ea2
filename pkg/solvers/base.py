"""
Base splitting solver interface
"""

import logging
from abc import ABC, abstractmethod

import numpy as np

from errors import SolveError
from prox import prox_edgewise
from solvers.problem import Problem
from solvers.state import SolverState, StepOutcome

logger = logging.getLogger(__name__)


class BaseSolver(ABC):
    """Base class for the ADMM-type methods; subclasses only choose the extrapolation"""

    name: str = "base"

    @property
    @abstractmethod
    def alpha(self) -> float:
        """Inertia weight applied before the splitting updates"""
        pass

    def extrapolate(self, state: SolverState) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(u^, v^, p^) = w^k + alpha (w^k - w^{k-1})"""
        a = self.alpha
        if a == 0.0:
            return state.u, state.v, state.p
        return (
            state.u + a * (state.u - state.u_prev),
            state.v + a * (state.v - state.v_prev),
            state.p + a * (state.p - state.p_prev),
        )

    def step(self, state: SolverState, problem: Problem) -> StepOutcome:
        """
        One iteration with common workflow

        Args:
            state: Current iterate w^k and its predecessor
            problem: Operators and data

        Returns:
            StepOutcome holding w^{k+1} and the extrapolated point
        """
        u_hat, v_hat, p_hat = self.extrapolate(state)
        return splitting_update(state, problem, u_hat, v_hat, p_hat)


def splitting_update(
    state: SolverState,
    problem: Problem,
    u_hat: np.ndarray,
    v_hat: np.ndarray,
    p_hat: np.ndarray,
) -> StepOutcome:
    """v, u, p updates from the extrapolated point; the v-update linearizes at u^k, not u^"""
    delta = problem.cfg.delta
    T = problem.T

    # 1. v-update: prox of sigma/delta * phi at T u^k - p^/delta
    v_next = prox_edgewise(problem.penalty, delta, T.apply(state.u) - p_hat / delta, problem.edge_size)

    # 2. u-update: (K^*K + delta T^*T) u = K^* f + delta T^* v + T^* p^, warm-started at u^k
    rhs = problem.K_adj_f + T.adjoint(delta * v_next + p_hat)
    u_next, report = problem.linear_solver.solve(rhs, x0=state.u)
    if not report.converged:
        raise SolveError(
            state.k,
            report,
            f"u-update {report.method} stopped at relative residual {report.relative_residual:.3e} "
            f"after {report.iterations} iterations",
        )

    # 3. p-update
    p_next = p_hat - delta * (T.apply(u_next) - v_next)

    logger.debug(f"step {state.k}: u-solve {report.method} iterations={report.iterations}")
    return StepOutcome(state.advance(u_next, v_next, p_next), u_hat, v_hat, p_hat, report)
