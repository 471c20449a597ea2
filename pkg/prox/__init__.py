"""
Penalty registry and proximal maps for phi(t) = |t|^q
"""

import logging
from typing import Dict, Type

import numpy as np

from errors import ShapeError
from prox.base import Penalty, validate_q
from prox.half import HalfPenalty
from prox.l1 import L1Penalty, soft_threshold
from prox.oracle import grid_minimum, grid_prox, prox_objective
from prox.power import PowerPenalty

logger = logging.getLogger(__name__)

# Closed forms keyed by exponent; every other q goes through PowerPenalty
PENALTIES: Dict[float, Type[Penalty]] = {
    1.0: L1Penalty,
    0.5: HalfPenalty,
}


def get_penalty(q: float, sigma: float) -> Penalty:
    """Penalty for exponent q with weight sigma"""
    q = validate_q(q)
    penalty_cls = PENALTIES.get(q)
    if penalty_cls is None:
        return PowerPenalty(q, sigma)
    return penalty_cls(sigma=sigma)


def prox_scalar(q: float, tau: float, x: float) -> float:
    """Global minimizer of tau |y|^q + (y - x)^2 / 2"""
    penalty = get_penalty(q, 1.0)
    return float(penalty.prox(np.array([float(x)]), tau)[0])


def prox_edgewise(pen: Penalty, delta: float, z: np.ndarray, expected_size: int = -1) -> np.ndarray:
    """Apply the scalar prox with tau = sigma / delta to every edge entry"""
    z = np.asarray(z, dtype=np.float64)
    if expected_size >= 0 and z.size != expected_size:
        raise ShapeError(f"Edge vector must have length {expected_size}, got {z.size}")
    return pen.prox(z, pen.sigma / delta)


__all__ = [
    "Penalty",
    "L1Penalty",
    "HalfPenalty",
    "PowerPenalty",
    "PENALTIES",
    "get_penalty",
    "prox_scalar",
    "prox_edgewise",
    "soft_threshold",
    "grid_prox",
    "grid_minimum",
    "prox_objective",
]
