"""
Brute-force prox by grid search, used as a test oracle and as the Newton fallback
"""

import numpy as np


def prox_objective(q: float, tau: float, x: float, y: np.ndarray) -> np.ndarray:
    """tau |y|^q + (y - x)^2 / 2"""
    y = np.asarray(y, dtype=np.float64)
    return tau * np.abs(y) ** q + 0.5 * (y - x) ** 2


def grid_prox(q: float, tau: float, x: float, step: float = 1e-5) -> float:
    """Minimize over a uniform grid on [0, |x|] (plus both endpoints); lowest y wins ties"""
    ax = abs(float(x))
    if ax == 0.0:
        return 0.0
    grid = np.append(np.arange(0.0, ax, step), ax)
    values = prox_objective(q, tau, ax, grid)
    return float(np.sign(x) * grid[int(np.argmin(values))])


def grid_minimum(q: float, tau: float, x: float, step: float = 1e-4) -> float:
    """Smallest objective value over the grid"""
    ax = abs(float(x))
    grid = np.append(np.arange(0.0, ax, step), ax)
    return float(np.min(prox_objective(q, tau, ax, grid)))
