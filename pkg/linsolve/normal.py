"""
Normal operator A = K^* K + delta T^* T of the u-update
"""

from dataclasses import dataclass

import numpy as np

from errors import InvalidArgumentError, ShapeError
from operators.base import LinearOperator
from operators.difference import DiffOperator
from operators.stacked import StackedOperator


@dataclass(frozen=True)
class SolveReport:
    """Outcome of one linear solve; final_residual_norm is ||A u - rhs||"""

    iterations: int
    final_residual_norm: float
    converged: bool
    rhs_norm: float = 0.0
    method: str = "cg"

    @property
    def relative_residual(self) -> float:
        if self.rhs_norm == 0.0:
            return self.final_residual_norm
        return self.final_residual_norm / self.rhs_norm


class NormalOperator(LinearOperator):
    """Symmetric positive definite under Null(K) ∩ Null(T) = {0}"""

    def __init__(self, K: StackedOperator, T: DiffOperator, delta: float):
        if delta <= 0:
            raise InvalidArgumentError(f"delta must be positive, got {delta}")
        if K.n != T.n:
            raise ShapeError(f"K is built for n={K.n} but T for n={T.n}")
        self.K = K
        self.T = T
        self.delta = float(delta)
        self.n = K.n

    @property
    def shape(self) -> tuple[int, int]:
        size = 2 * self.n * self.n
        return (size, size)

    def _apply(self, u: np.ndarray) -> np.ndarray:
        return self.K.adjoint(self.K.apply(u)) + self.delta * self.T.adjoint(self.T.apply(u))

    def _adjoint(self, u: np.ndarray) -> np.ndarray:
        return self._apply(u)

    def diagonal(self) -> np.ndarray:
        """Exact diagonal, used by the Jacobi preconditioner"""
        return self.K.gram_diagonal() + self.delta * self.T.gram_diagonal()

    def residual_norm(self, u: np.ndarray, rhs: np.ndarray) -> float:
        return float(np.linalg.norm(rhs - self.apply(u)))
