"""
Circular 2-D convolution K~ evaluated with the FFT
"""

import logging
from typing import Optional

import numpy as np

from errors import InvalidArgumentError, ShapeError
from operators.base import LinearOperator

logger = logging.getLogger(__name__)


def build_gaussian_kernel(size: int, sigma: float) -> np.ndarray:
    """
    Normalized Gaussian kernel over centered integer offsets

    Args:
        size: Odd side length
        sigma: Standard deviation in pixels

    Returns:
        size x size array summing to 1
    """
    if size < 1 or size % 2 == 0:
        raise InvalidArgumentError(f"Kernel size must be a positive odd integer, got {size}")
    if sigma <= 0:
        raise InvalidArgumentError(f"Kernel sigma must be positive, got {sigma}")
    half = size // 2
    offsets = np.arange(-half, half + 1, dtype=np.float64)
    kernel = np.exp(-(offsets[:, None] ** 2 + offsets[None, :] ** 2) / (2.0 * sigma**2))
    return kernel / kernel.sum()


def circular_psf(kernel: np.ndarray, n: int) -> np.ndarray:
    """Zero-pad the kernel to n x n with its center at index (0, 0); entries beyond n wrap and add"""
    size = kernel.shape[0]
    half = size // 2
    psf = np.zeros((n, n))
    idx = (np.arange(size) - half) % n
    np.add.at(psf, (idx[:, None], idx[None, :]), kernel)
    return psf


class BlurOperator(LinearOperator):
    """K~ : R^{N^2} -> R^{N^2}, y = kernel (*) x with periodic boundary"""

    def __init__(self, n: int, kernel: np.ndarray):
        kernel = np.asarray(kernel, dtype=np.float64)
        if kernel.ndim != 2 or kernel.shape[0] != kernel.shape[1] or kernel.shape[0] % 2 == 0:
            raise InvalidArgumentError(f"Kernel must be square with odd side, got shape {kernel.shape}")
        if n < 1:
            raise InvalidArgumentError(f"Image side must be positive, got {n}")
        self.n = n
        self.kernel = kernel.copy()
        self.kernel.setflags(write=False)
        self.psf = circular_psf(kernel, n)
        self.kernel_hat = np.fft.fft2(self.psf)
        self.kernel_hat.setflags(write=False)

    @classmethod
    def from_gaussian(cls, n: int, size: int, sigma: float) -> "BlurOperator":
        return cls(n, build_gaussian_kernel(size, sigma))

    @classmethod
    def identity(cls, n: int) -> "BlurOperator":
        return cls(n, np.ones((1, 1)))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n * self.n, self.n * self.n)

    def _filter(self, x: np.ndarray, transfer: np.ndarray) -> np.ndarray:
        if self.kernel.shape == (1, 1):
            # 1x1 kernel: exact scaling, no FFT round-off
            return self.kernel[0, 0] * np.asarray(x, dtype=np.float64)
        n = self.n
        image = x.reshape((n, n), order="F")
        out = np.real(np.fft.ifft2(np.fft.fft2(image) * transfer))
        return out.ravel(order="F")

    def _apply(self, x: np.ndarray) -> np.ndarray:
        return self._filter(x, self.kernel_hat)

    def _adjoint(self, y: np.ndarray) -> np.ndarray:
        return self._filter(y, np.conj(self.kernel_hat))

    def gram_diagonal(self) -> float:
        """Constant diagonal entry of K~^* K~"""
        return float(np.sum(self.psf**2))

    def spectral_norm(self) -> float:
        """Exact ||K~||_2 = max |kernel_hat|"""
        return float(np.max(np.abs(self.kernel_hat)))


def spatial_convolve(x: np.ndarray, kernel: np.ndarray, n: int, adjoint: bool = False) -> np.ndarray:
    """Direct O(N^2 size^2) circular convolution of a column-major vector (test oracle)"""
    if x.size != n * n:
        raise ShapeError(f"Expected length {n * n}, got {x.size}")
    image = np.asarray(x, dtype=np.float64).reshape((n, n), order="F")
    half = kernel.shape[0] // 2
    out = np.zeros((n, n))
    sign = -1 if adjoint else 1
    for a in range(-half, half + 1):
        for b in range(-half, half + 1):
            weight = kernel[a + half, b + half]
            if weight != 0.0:
                out += weight * np.roll(image, shift=(sign * a, sign * b), axis=(0, 1))
    return out.ravel(order="F")


def apply_blur(op: BlurOperator, x: np.ndarray, out: Optional[np.ndarray] = None) -> np.ndarray:
    result = op.apply(x)
    if out is not None:
        out[:] = result
        return out
    return result


def apply_blur_adjoint(op: BlurOperator, y: np.ndarray, out: Optional[np.ndarray] = None) -> np.ndarray:
    result = op.adjoint(y)
    if out is not None:
        out[:] = result
        return out
    return result
