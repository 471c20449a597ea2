"""
phi(t) = |t| (TV1)
"""

import numpy as np

from prox.base import Penalty


class L1Penalty(Penalty):
    """Convex case; the prox is soft thresholding"""

    name = "l1"

    def __init__(self, sigma: float, q: float = 1.0):
        super().__init__(1.0, sigma)

    def threshold(self, tau: float) -> float:
        return tau

    def _prox_magnitude(self, ax: np.ndarray, tau: float) -> np.ndarray:
        return np.maximum(ax - tau, 0.0)


def soft_threshold(x: np.ndarray, tau: float) -> np.ndarray:
    """sign(x) * max(|x| - tau, 0)"""
    x = np.asarray(x, dtype=np.float64)
    return np.sign(x) * np.maximum(np.abs(x) - tau, 0.0)
