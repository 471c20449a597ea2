"""
u-update linear solvers and the nu estimator
"""

import logging
from typing import Dict, Optional, Type

from config import Config
from errors import InvalidArgumentError
from linsolve.base import LinearSolver
from linsolve.cg import CGSolver, solve_normal
from linsolve.circulant import CirculantSolver, mode_determinants, solve_circulant_fast
from linsolve.direct import DirectSolver
from linsolve.estimate import NuEstimate, build_nu_operator, estimate_nu, nu_confidence, nu_dense, stacked_sigma_min
from linsolve.normal import NormalOperator, SolveReport

logger = logging.getLogger(__name__)

# Solver registry
LINEAR_SOLVERS: Dict[str, Type[LinearSolver]] = {
    "cg": CGSolver,
    "fft": CirculantSolver,
    "direct": DirectSolver,
}


def resolve_solver_name(name: str, variant: str) -> str:
    """Map "auto" to cg (banded) or fft (circulant)"""
    if name == "auto":
        return "fft" if variant == "circulant" else "cg"
    if name not in LINEAR_SOLVERS:
        raise InvalidArgumentError(f"Unknown linear solver: {name} (available: auto, {', '.join(LINEAR_SOLVERS)})")
    return name


def make_linear_solver(
    name: str,
    op: NormalOperator,
    tol: float = Config.CG_TOL,
    max_iters: Optional[int] = None,
    precondition: bool = False,
) -> LinearSolver:
    """Build a registered solver bound to op"""
    resolved = resolve_solver_name(name, op.T.variant)
    logger.debug(f"Linear solver {name} -> {resolved} for n={op.n} {op.T.variant}")
    if resolved == "cg":
        return CGSolver(op, tol=tol, max_iters=max_iters, precondition=precondition)
    return LINEAR_SOLVERS[resolved](op)


__all__ = [
    "LinearSolver",
    "CGSolver",
    "CirculantSolver",
    "DirectSolver",
    "LINEAR_SOLVERS",
    "NormalOperator",
    "SolveReport",
    "NuEstimate",
    "make_linear_solver",
    "resolve_solver_name",
    "solve_normal",
    "solve_circulant_fast",
    "mode_determinants",
    "estimate_nu",
    "nu_dense",
    "nu_confidence",
    "build_nu_operator",
    "stacked_sigma_min",
]
