"""
Base interface for u-update solvers
"""

from abc import ABC, abstractmethod
from typing import Optional

import numpy as np

from errors import ShapeError
from linsolve.normal import NormalOperator, SolveReport


class LinearSolver(ABC):
    """Solves (K^* K + delta T^* T) u = rhs for a fixed operator"""

    name: str = "base"

    def __init__(self, op: NormalOperator):
        self.op = op

    @abstractmethod
    def solve(self, rhs: np.ndarray, x0: Optional[np.ndarray] = None) -> tuple[np.ndarray, SolveReport]:
        """
        Solve for one right-hand side

        Args:
            rhs: Stacked vector of length 2N^2
            x0: Warm start (ignored by exact solvers)

        Returns:
            Tuple of (solution, report)
        """
        pass

    def _check_rhs(self, rhs: np.ndarray) -> np.ndarray:
        rhs = np.asarray(rhs, dtype=np.float64)
        if rhs.ndim != 1 or rhs.size != self.op.shape[0]:
            raise ShapeError(f"rhs must have length {self.op.shape[0]}, got shape {rhs.shape}")
        return rhs

    def _exact_report(self, u: np.ndarray, rhs: np.ndarray) -> SolveReport:
        return SolveReport(
            iterations=0,
            final_residual_norm=self.op.residual_norm(u, rhs),
            converged=True,
            rhs_norm=float(np.linalg.norm(rhs)),
            method=self.name,
        )
