"""
Nonconvex inertial ADMM
"""

from typing import Any, Optional

from errors import InvalidArgumentError
from solvers.base import BaseSolver
from solvers.config import SolverConfig
from solvers.problem import Problem
from solvers.state import SolverState, StepOutcome


class IADMMSolver(BaseSolver):
    """Extrapolates (u, v, p) by alpha before every splitting step; alpha = 0 is plain ADMM"""

    name = "iadmm"

    def __init__(self, alpha: float):
        if alpha < 0:
            raise InvalidArgumentError(f"alpha must be non-negative, got {alpha}")
        self._alpha = float(alpha)

    @property
    def alpha(self) -> float:
        return self._alpha


def step_iadmm(
    state: SolverState, cfg: SolverConfig, problem: Problem, constants: Optional[Any] = None
) -> StepOutcome:
    """One inertial step with cfg.alpha; constants are not needed by the update itself"""
    return IADMMSolver(cfg.alpha).step(state, problem)
