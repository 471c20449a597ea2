"""
Stacked operator K = [[K~, 0], [beta I, -beta I]] of the penalized reformulation
"""

import logging
from dataclasses import dataclass

import numpy as np

from errors import InvalidArgumentError, ShapeError
from operators.base import LinearOperator
from operators.blur import BlurOperator

logger = logging.getLogger(__name__)


class StackedOperator(LinearOperator):
    """K u = (K~ u1, beta (u1 - u2)); K^*(a, b) = (K~^* a + beta b, -beta b)"""

    def __init__(self, blur: BlurOperator, beta: float = 1.0):
        if beta < 0:
            raise InvalidArgumentError(f"beta must be non-negative, got {beta}")
        self.blur = blur
        self.beta = float(beta)
        self.n = blur.n

    @property
    def shape(self) -> tuple[int, int]:
        size = 2 * self.n * self.n
        return (size, size)

    def _apply(self, u: np.ndarray) -> np.ndarray:
        m = self.n * self.n
        u1, u2 = u[:m], u[m:]
        return np.concatenate([self.blur.apply(u1), self.beta * (u1 - u2)])

    def _adjoint(self, y: np.ndarray) -> np.ndarray:
        m = self.n * self.n
        a, b = y[:m], y[m:]
        return np.concatenate([self.blur.adjoint(a) + self.beta * b, -self.beta * b])

    def lift_data(self, f_tilde: np.ndarray) -> np.ndarray:
        """f = (f~, 0)"""
        f_tilde = np.asarray(f_tilde, dtype=np.float64)
        if f_tilde.size != self.n * self.n:
            raise ShapeError(f"Data length {f_tilde.size} does not match n={self.n}")
        return np.concatenate([f_tilde, np.zeros(self.n * self.n)])

    def gram_diagonal(self) -> np.ndarray:
        """Diagonal of K^* K, length 2N^2"""
        m = self.n * self.n
        beta2 = self.beta**2
        return np.concatenate([np.full(m, self.blur.gram_diagonal() + beta2), np.full(m, beta2)])


@dataclass(frozen=True)
class NormEstimate:
    """Power-iteration result for ||K||_2"""

    value: float
    iterations: int
    converged: bool


def spectral_norm_K(op: LinearOperator, iters: int = 1000, tol: float = 1e-12, seed: int = 0) -> NormEstimate:
    """
    Power iteration on K^* K

    Args:
        op: Any linear operator (normally a StackedOperator)
        iters: Maximum iterations, at least 1
        tol: Relative change of the eigenvalue estimate that counts as converged
        seed: Seed of the Gaussian start vector

    Returns:
        NormEstimate with sqrt of the dominant eigenvalue; converged is False when
        iters ran out, in which case value is the last (best) estimate
    """
    if iters < 1:
        raise InvalidArgumentError(f"iters must be at least 1, got {iters}")
    rng = np.random.default_rng(seed)
    x = rng.standard_normal(op.shape[1])
    x /= np.linalg.norm(x)

    eigenvalue = 0.0
    for i in range(1, iters + 1):
        y = op.adjoint(op.apply(x))
        estimate = float(np.dot(x, y))  # Rayleigh quotient of the unit vector x
        norm_y = np.linalg.norm(y)
        if norm_y == 0.0:
            return NormEstimate(0.0, i, True)
        x = y / norm_y
        if i > 1 and abs(estimate - eigenvalue) <= tol * abs(estimate):
            return NormEstimate(float(np.sqrt(max(estimate, 0.0))), i, True)
        eigenvalue = estimate

    logger.warning(f"Power iteration did not converge in {iters} iterations (estimate {eigenvalue:.6g})")
    return NormEstimate(float(np.sqrt(max(eigenvalue, 0.0))), iters, False)
