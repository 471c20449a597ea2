"""
Base penalty interface
"""

from abc import ABC, abstractmethod

import numpy as np

from errors import InvalidArgumentError, ShapeError


def validate_q(q: float) -> float:
    q = float(q)
    if not (0.0 < q <= 1.0):
        raise InvalidArgumentError(f"q must lie in (0, 1], got {q}")
    return q


class Penalty(ABC):
    """Separable penalty sigma * sum_i phi(v_i) with phi(t) = |t|^q"""

    name: str = "base"

    def __init__(self, q: float, sigma: float):
        self.q = validate_q(q)
        if sigma <= 0:
            raise InvalidArgumentError(f"sigma must be positive, got {sigma}")
        self.sigma = float(sigma)

    def phi(self, t: np.ndarray) -> np.ndarray:
        """Elementwise |t|^q"""
        return np.abs(t) ** self.q

    def value(self, v: np.ndarray) -> float:
        """||v||_phi = sum_i |v_i|^q (without the sigma weight)"""
        return float(np.sum(self.phi(np.asarray(v, dtype=np.float64))))

    @abstractmethod
    def threshold(self, tau: float) -> float:
        """Dead-zone edge t*: |x| <= t* maps to 0"""
        pass

    @abstractmethod
    def _prox_magnitude(self, ax: np.ndarray, tau: float) -> np.ndarray:
        """Prox of non-negative inputs"""
        pass

    def prox(self, x: np.ndarray, tau: float) -> np.ndarray:
        """
        Global minimizer of tau * |y|^q + (y - x)^2 / 2, entry by entry

        Ties between 0 and a nonzero stationary point resolve to 0.
        """
        if tau <= 0:
            raise InvalidArgumentError(f"tau must be positive, got {tau}")
        x = np.asarray(x, dtype=np.float64)
        if x.ndim != 1:
            raise ShapeError(f"prox expects a 1-D vector, got shape {x.shape}")
        magnitude = self._prox_magnitude(np.abs(x), float(tau))
        return np.sign(x) * magnitude

    def __repr__(self) -> str:
        return f"{type(self).__name__}(q={self.q}, sigma={self.sigma})"
