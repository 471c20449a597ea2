"""
phi(t) = |t|^(1/2) (TV(1/2)), closed-form half thresholding
"""

import numpy as np

from prox.base import Penalty


class HalfPenalty(Penalty):
    """
    For |x| > 1.5 tau^(2/3) the minimizer is

        y = (2/3) x (1 + cos(2 pi / 3 - 2 phi / 3)),
        phi = arccos((tau / 4) (|x| / 3)^(-3/2)),

    and 0 otherwise.
    """

    name = "half"

    def __init__(self, sigma: float, q: float = 0.5):
        super().__init__(0.5, sigma)

    def threshold(self, tau: float) -> float:
        return 1.5 * tau ** (2.0 / 3.0)

    def _prox_magnitude(self, ax: np.ndarray, tau: float) -> np.ndarray:
        out = np.zeros_like(ax)
        active = ax > self.threshold(tau)
        if np.any(active):
            a = ax[active]
            arg = np.clip((tau / 4.0) * (a / 3.0) ** (-1.5), -1.0, 1.0)
            angle = np.arccos(arg)
            out[active] = (2.0 / 3.0) * a * (1.0 + np.cos(2.0 * np.pi / 3.0 - 2.0 * angle / 3.0))
        return out
