"""
Difference operator T = diag(I_N (x) D, D (x) I_N) on the duplicated variable u = (u1, u2)

With column-major vectorization, (I (x) D) vec(U) = vec(D U) differences along rows
and (D (x) I) vec(U) = vec(U D^T) differences along columns. The banded variant uses
the (N-1) x N forward difference (Dx)_i = x_i - x_{i+1}; the circulant variant wraps
around and keeps N differences per line.
"""

import logging
import math

import numpy as np

from errors import InvalidArgumentError, UnsupportedVariantError
from operators.base import LinearOperator

logger = logging.getLogger(__name__)

VARIANTS = ("banded", "circulant")


class DiffOperator(LinearOperator):
    """Matrix-free T acting on stacked vectors of length 2N^2"""

    def __init__(self, n: int, variant: str = "banded"):
        if n < 2:
            raise InvalidArgumentError(f"Difference operator needs n >= 2, got {n}")
        if variant not in VARIANTS:
            raise UnsupportedVariantError(f"Unknown variant: {variant} (available: {', '.join(VARIANTS)})")
        self.n = n
        self.variant = variant
        self.lines = n - 1 if variant == "banded" else n

    @property
    def shape(self) -> tuple[int, int]:
        return (2 * self.n * self.lines, 2 * self.n * self.n)

    @property
    def block_size(self) -> int:
        """Length of each of the two edge blocks"""
        return self.n * self.lines

    def _apply(self, u: np.ndarray) -> np.ndarray:
        n = self.n
        u1 = u[: n * n].reshape((n, n), order="F")
        u2 = u[n * n :].reshape((n, n), order="F")
        if self.variant == "banded":
            g1 = u1[:-1, :] - u1[1:, :]
            g2 = u2[:, :-1] - u2[:, 1:]
        else:
            g1 = u1 - np.roll(u1, -1, axis=0)
            g2 = u2 - np.roll(u2, -1, axis=1)
        return np.concatenate([g1.ravel(order="F"), g2.ravel(order="F")])

    def _adjoint(self, w: np.ndarray) -> np.ndarray:
        n, m = self.n, self.lines
        w1 = w[: n * m].reshape((m, n), order="F")
        w2 = w[n * m :].reshape((n, m), order="F")
        if self.variant == "banded":
            a1 = np.zeros((n, n))
            a1[:-1, :] += w1
            a1[1:, :] -= w1
            a2 = np.zeros((n, n))
            a2[:, :-1] += w2
            a2[:, 1:] -= w2
        else:
            a1 = w1 - np.roll(w1, 1, axis=0)
            a2 = w2 - np.roll(w2, 1, axis=1)
        return np.concatenate([a1.ravel(order="F"), a2.ravel(order="F")])

    def gram_diagonal(self) -> np.ndarray:
        """Diagonal of T^* T, length 2N^2"""
        n = self.n
        if self.variant == "circulant":
            return np.full(2 * n * n, 2.0)
        line = np.full(n, 2.0)
        line[0] = line[-1] = 1.0
        d1 = np.repeat(line[:, None], n, axis=1)  # depends on the row index
        d2 = np.repeat(line[None, :], n, axis=0)  # depends on the column index
        return np.concatenate([d1.ravel(order="F"), d2.ravel(order="F")])

    def line_symbol(self) -> np.ndarray:
        """Eigenvalues |1 - e^{i w_k}|^2 of the circulant D^* D along one axis, in FFT order"""
        if self.variant != "circulant":
            raise UnsupportedVariantError("Fourier symbol exists only for the circulant variant")
        k = np.arange(self.n)
        return 2.0 - 2.0 * np.cos(2.0 * np.pi * k / self.n)


def theta_bound(n: int) -> float:
    """1 / (2 sin(pi / (2n))), the reciprocal of the smallest singular value of banded T^*"""
    if n < 2:
        raise InvalidArgumentError(f"theta_bound needs n >= 2, got {n}")
    return 1.0 / (2.0 * math.sin(math.pi / (2.0 * n)))


def norm_T(n: int, variant: str = "banded") -> float:
    """Spectral norm of T"""
    if n < 2:
        raise InvalidArgumentError(f"norm_T needs n >= 2, got {n}")
    if variant == "banded":
        return 2.0 * math.cos(math.pi / (2.0 * n))
    if variant == "circulant":
        return 2.0 if n % 2 == 0 else 2.0 * math.cos(math.pi / (2.0 * n))
    raise UnsupportedVariantError(f"Unknown variant: {variant}")


def apply_T(op: DiffOperator, u: np.ndarray) -> np.ndarray:
    return op.apply(u)


def apply_T_adjoint(op: DiffOperator, w: np.ndarray) -> np.ndarray:
    return op.adjoint(w)
