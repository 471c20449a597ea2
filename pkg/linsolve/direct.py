"""
Dense eigendecomposition solve for small grids
"""

import logging
from typing import Optional

import numpy as np

from config import Config
from errors import InvalidArgumentError, SolveError
from linsolve.base import LinearSolver
from linsolve.normal import NormalOperator, SolveReport

logger = logging.getLogger(__name__)


class DirectSolver(LinearSolver):
    """
    Factor A = V diag(w) V^T once, then every solve is V (V^T rhs / w).

    Works for both variants and for any conditioning CG cannot reach in practice,
    at O((2N^2)^2) memory.
    """

    name = "direct"

    def __init__(self, op: NormalOperator, max_size: Optional[int] = None):
        super().__init__(op)
        size = op.shape[0]
        limit = Config.DIRECT_MAX_SIZE if max_size is None else max_size
        if size > limit:
            raise InvalidArgumentError(f"Direct solve limited to 2N^2 <= {limit}, got {size} (n={op.n})")

        dense = op.to_dense()
        dense = 0.5 * (dense + dense.T)
        self.eigenvalues, self.eigenvectors = np.linalg.eigh(dense)
        if self.eigenvalues[0] <= 0:
            raise SolveError(0, message=f"normal operator is not positive definite (lambda_min={self.eigenvalues[0]:.3e})")
        logger.debug(
            f"Factored {size}x{size} normal operator, eigenvalues in [{self.eigenvalues[0]:.3e}, {self.eigenvalues[-1]:.3e}]"
        )

    @property
    def lambda_min(self) -> float:
        return float(self.eigenvalues[0])

    def solve(self, rhs: np.ndarray, x0: Optional[np.ndarray] = None) -> tuple[np.ndarray, SolveReport]:
        rhs = self._check_rhs(rhs)
        u = self.eigenvectors @ ((self.eigenvectors.T @ rhs) / self.eigenvalues)
        return u, self._exact_report(u, rhs)
