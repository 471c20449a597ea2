"""
phi(t) = |t|^q for general q in (0, 1): safeguarded Newton on the first-order condition
"""

import logging

import numpy as np

from errors import InvalidArgumentError
from prox.base import Penalty
from prox.oracle import grid_prox

logger = logging.getLogger(__name__)

MAX_NEWTON_STEPS = 100
NEWTON_RTOL = 1e-15


class PowerPenalty(Penalty):
    """
    With b = (2 tau (1 - q))^(1 / (2 - q)) the dead zone ends at t* = b + tau q b^(q - 1).
    Above it the minimizer is the larger root of g(y) = y + tau q y^(q - 1) - |x|,
    which lies in [b, |x|]; g is convex and increasing there, so Newton from |x|
    decreases monotonically onto it.
    """

    name = "power"

    def __init__(self, q: float, sigma: float):
        super().__init__(q, sigma)
        if self.q == 1.0:
            raise InvalidArgumentError("q = 1 is the soft-threshold penalty; PowerPenalty needs q in (0, 1)")

    def _inflection(self, tau: float) -> float:
        return (2.0 * tau * (1.0 - self.q)) ** (1.0 / (2.0 - self.q))

    def threshold(self, tau: float) -> float:
        b = self._inflection(tau)
        return b + tau * self.q * b ** (self.q - 1.0)

    def _prox_magnitude(self, ax: np.ndarray, tau: float) -> np.ndarray:
        out = np.zeros_like(ax)
        active = ax > self.threshold(tau)
        if not np.any(active):
            return out

        q = self.q
        a = ax[active]
        lo = np.full_like(a, self._inflection(tau))
        hi = a.copy()
        y = a.copy()
        done = np.zeros(a.shape, dtype=bool)

        for _ in range(MAX_NEWTON_STEPS):
            g = y + tau * q * y ** (q - 1.0) - a
            dg = 1.0 + tau * q * (q - 1.0) * y ** (q - 2.0)
            hi = np.where(g > 0, np.minimum(hi, y), hi)
            lo = np.where(g < 0, np.maximum(lo, y), lo)
            with np.errstate(divide="ignore", invalid="ignore"):
                y_new = y - g / dg
            # Fall back to bisection whenever Newton leaves the bracket
            bad = ~np.isfinite(y_new) | (y_new < lo) | (y_new > hi)
            y_new = np.where(bad, 0.5 * (lo + hi), y_new)
            done = np.abs(y_new - y) <= NEWTON_RTOL * np.maximum(1.0, a)
            y = np.where(done, y, y_new)
            if np.all(done):
                break

        if not np.all(done):
            stuck = np.flatnonzero(~done)
            logger.warning(f"Newton prox did not settle for {stuck.size} entries; using grid search")
            for i in stuck:
                y[i] = abs(grid_prox(q, tau, a[i]))

        out[active] = y
        return out
