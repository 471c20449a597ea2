"""
Exact FFT solve of the u-update for circulant T

Both K~^* K~ and the circulant T^* T blocks are diagonalized by the 2-D DFT, so
each Fourier mode carries an independent 2 x 2 system

    [ |K^|^2 + beta^2 + delta g_row   -beta^2                ] [U1]   [R1]
    [ -beta^2                         beta^2 + delta h_col   ] [U2] = [R2]
"""

import logging
from typing import Optional

import numpy as np

from errors import SolveError, UnsupportedVariantError
from linsolve.base import LinearSolver
from linsolve.normal import NormalOperator, SolveReport

logger = logging.getLogger(__name__)


def mode_blocks(op: NormalOperator) -> tuple[np.ndarray, np.ndarray, float]:
    """Per-mode diagonal entries (a11, a22) and the off-diagonal -beta^2"""
    if op.T.variant != "circulant":
        raise UnsupportedVariantError("The FFT solve requires the circulant difference variant")
    beta2 = op.K.beta**2
    symbol = op.T.line_symbol()
    blur_power = np.abs(op.K.blur.kernel_hat) ** 2
    a11 = blur_power + beta2 + op.delta * symbol[:, None]
    a22 = beta2 + op.delta * symbol[None, :] + np.zeros_like(blur_power)
    return a11, a22, -beta2


def mode_determinants(op: NormalOperator) -> np.ndarray:
    a11, a22, off = mode_blocks(op)
    return a11 * a22 - off * off


def solve_circulant_fast(op: NormalOperator, rhs: np.ndarray) -> np.ndarray:
    """Solve A u = rhs exactly via per-mode 2 x 2 inversion"""
    a11, a22, off = mode_blocks(op)
    det = a11 * a22 - off * off
    if np.any(det <= 0):
        raise SolveError(0, message="singular Fourier mode in circulant solve")

    n = op.n
    m = n * n
    rhs = np.asarray(rhs, dtype=np.float64)
    r1 = np.fft.fft2(rhs[:m].reshape((n, n), order="F"))
    r2 = np.fft.fft2(rhs[m:].reshape((n, n), order="F"))
    u1 = (a22 * r1 - off * r2) / det
    u2 = (a11 * r2 - off * r1) / det
    return np.concatenate(
        [np.real(np.fft.ifft2(u1)).ravel(order="F"), np.real(np.fft.ifft2(u2)).ravel(order="F")]
    )


class CirculantSolver(LinearSolver):
    """O(N^2 log N) exact solve; only valid for the circulant variant"""

    name = "fft"

    def __init__(self, op: NormalOperator):
        if op.T.variant != "circulant":
            raise UnsupportedVariantError("The FFT solve requires the circulant difference variant")
        super().__init__(op)

    def solve(self, rhs: np.ndarray, x0: Optional[np.ndarray] = None) -> tuple[np.ndarray, SolveReport]:
        rhs = self._check_rhs(rhs)
        u = solve_circulant_fast(self.op, rhs)
        return u, self._exact_report(u, rhs)
