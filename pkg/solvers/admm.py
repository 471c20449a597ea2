"""
Classical ADMM on the reformulated model
"""

from solvers.base import BaseSolver
from solvers.config import SolverConfig
from solvers.problem import Problem
from solvers.state import SolverState, StepOutcome


class ADMMSolver(BaseSolver):
    """No extrapolation: the hat variables are the current iterate"""

    name = "admm"

    @property
    def alpha(self) -> float:
        return 0.0


def step_admm(state: SolverState, cfg: SolverConfig, problem: Problem) -> StepOutcome:
    return ADMMSolver().step(state, problem)
