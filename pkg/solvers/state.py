"""
Iterate containers
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from linsolve import SolveReport
from solvers.problem import Problem


@dataclass(frozen=True, eq=False)
class SolverState:
    """(u, v, p) at step k together with (u, v, p) at step k - 1"""

    u_prev: np.ndarray
    u: np.ndarray
    v_prev: np.ndarray
    v: np.ndarray
    p_prev: np.ndarray
    p: np.ndarray
    k: int = 1

    def advance(self, u: np.ndarray, v: np.ndarray, p: np.ndarray) -> "SolverState":
        return SolverState(self.u, u, self.v, v, self.p, p, self.k + 1)

    def first_non_finite(self) -> Optional[str]:
        """Name of the first component holding a NaN or inf, if any"""
        for name in ("u", "v", "p"):
            if not np.all(np.isfinite(getattr(self, name))):
                return name
        return None


@dataclass(frozen=True, eq=False)
class StepOutcome:
    """New state plus the extrapolated point and solve report of the step that produced it"""

    state: SolverState
    u_hat: np.ndarray
    v_hat: np.ndarray
    p_hat: np.ndarray
    report: SolveReport


def initial_state(problem: Problem) -> SolverState:
    """u = (f~, f~), v = T u, p = 0, with the previous iterate equal to the current one"""
    u = np.concatenate([problem.f_tilde, problem.f_tilde])
    v = problem.T.apply(u)
    p = np.zeros(problem.edge_size)
    return SolverState(u_prev=u.copy(), u=u, v_prev=v.copy(), v=v, p_prev=p.copy(), p=p, k=1)
