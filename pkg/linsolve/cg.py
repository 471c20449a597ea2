"""
Matrix-free (preconditioned) conjugate gradient for the u-update
"""

import logging
from typing import Optional

import numpy as np

from config import Config
from errors import InvalidArgumentError, ShapeError
from linsolve.base import LinearSolver
from linsolve.normal import NormalOperator, SolveReport

logger = logging.getLogger(__name__)

# Recompute the true residual this often to stop recursive drift
RESIDUAL_REFRESH = 50


def solve_normal(
    op: NormalOperator,
    rhs: np.ndarray,
    tol: float = Config.CG_TOL,
    max_iters: Optional[int] = None,
    x0: Optional[np.ndarray] = None,
    precondition: bool = False,
) -> tuple[np.ndarray, SolveReport]:
    """
    Conjugate gradient on A u = rhs

    Args:
        op: Normal operator A
        rhs: Right-hand side
        tol: Relative tolerance, stop when ||A u - rhs|| <= tol ||rhs||
        max_iters: Iteration cap (default 10 * 2N^2)
        x0: Warm start
        precondition: Use the Jacobi preconditioner diag(A)^-1

    Returns:
        Tuple of (u, SolveReport); a non-converged report is returned, not raised
    """
    if tol <= 0:
        raise InvalidArgumentError(f"tol must be positive, got {tol}")
    rhs = np.asarray(rhs, dtype=np.float64)
    size = op.shape[0]
    if rhs.ndim != 1 or rhs.size != size:
        raise ShapeError(f"rhs must have length {size}, got shape {rhs.shape}")
    if max_iters is None:
        max_iters = Config.cg_max_iters(op.n)

    rhs_norm = float(np.linalg.norm(rhs))
    if rhs_norm == 0.0:
        return np.zeros(size), SolveReport(0, 0.0, True, 0.0)
    target = tol * rhs_norm

    x = np.zeros(size) if x0 is None else np.array(x0, dtype=np.float64)
    r = rhs - op.apply(x)
    r_norm = float(np.linalg.norm(r))
    if r_norm <= target:
        return x, SolveReport(0, r_norm, True, rhs_norm)

    inv_diag = 1.0 / op.diagonal() if precondition else None
    z = r * inv_diag if inv_diag is not None else r
    p = z.copy()
    rz = float(np.dot(r, z))

    iterations_done = 0
    for iteration in range(1, max_iters + 1):
        iterations_done = iteration
        Ap = op.apply(p)
        curvature = float(np.dot(p, Ap))
        if curvature <= 0.0:
            logger.warning(f"CG lost positive curvature at iteration {iteration}")
            break
        step = rz / curvature
        x += step * p
        if iteration % RESIDUAL_REFRESH == 0:
            r = rhs - op.apply(x)
        else:
            r -= step * Ap
        r_norm = float(np.linalg.norm(r))

        if r_norm <= target:
            r = rhs - op.apply(x)
            r_norm = float(np.linalg.norm(r))
            if r_norm <= target:
                return x, SolveReport(iteration, r_norm, True, rhs_norm)

        z = r * inv_diag if inv_diag is not None else r
        rz_next = float(np.dot(r, z))
        p = z + (rz_next / rz) * p
        rz = rz_next

    r_norm = op.residual_norm(x, rhs)
    logger.debug(f"CG stopped without convergence: residual {r_norm:.3e} > target {target:.3e}")
    return x, SolveReport(iterations_done, r_norm, r_norm <= target, rhs_norm)


class CGSolver(LinearSolver):
    """Warm-startable CG; the default for the banded variant"""

    name = "cg"

    def __init__(
        self,
        op: NormalOperator,
        tol: float = Config.CG_TOL,
        max_iters: Optional[int] = None,
        precondition: bool = False,
    ):
        super().__init__(op)
        self.tol = tol
        self.max_iters = max_iters if max_iters is not None else Config.cg_max_iters(op.n)
        self.precondition = precondition

    def solve(self, rhs: np.ndarray, x0: Optional[np.ndarray] = None) -> tuple[np.ndarray, SolveReport]:
        return solve_normal(self.op, rhs, self.tol, self.max_iters, x0=x0, precondition=self.precondition)
