"""
Operators and data of one deblurring problem
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from errors import ShapeError
from imagecore.image import Image, vectorize
from linsolve import LinearSolver, NormalOperator, make_linear_solver
from operators.blur import BlurOperator
from operators.difference import DiffOperator
from operators.stacked import StackedOperator
from prox import Penalty, get_penalty
from solvers.config import SolverConfig

logger = logging.getLogger(__name__)


@dataclass
class Problem:
    """Everything a step needs besides the iterate: K, T, f, phi and the u-solver"""

    cfg: SolverConfig
    blur: BlurOperator
    K: StackedOperator
    T: DiffOperator
    normal: NormalOperator
    penalty: Penalty
    f_tilde: np.ndarray
    f: np.ndarray
    K_adj_f: np.ndarray
    linear_solver: LinearSolver

    @property
    def n(self) -> int:
        return self.blur.n

    @property
    def pixels(self) -> int:
        return self.n * self.n

    @property
    def edge_size(self) -> int:
        return self.T.shape[0]

    def split(self, u: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """(u1, u2) views of a stacked vector"""
        return u[: self.pixels], u[self.pixels :]


def build_problem(cfg: SolverConfig, blurred: Image, blur: Optional[BlurOperator] = None) -> Problem:
    """
    Assemble the reformulated model for an observed image

    Args:
        cfg: Run parameters
        blurred: Observed image f~
        blur: Blur operator K~ (default: Gaussian from cfg.kernel_size / cfg.kernel_sigma)

    Returns:
        Problem with the u-update solver already bound
    """
    n = blurred.n
    if blur is None:
        blur = BlurOperator.from_gaussian(n, cfg.kernel_size, cfg.kernel_sigma)
    elif blur.n != n:
        raise ShapeError(f"Blur operator is built for n={blur.n} but the image has n={n}")

    K = StackedOperator(blur, beta=cfg.beta)
    T = DiffOperator(n, cfg.variant)
    normal = NormalOperator(K, T, cfg.delta)
    f_tilde = vectorize(blurred)
    f = K.lift_data(f_tilde)
    solver = make_linear_solver(cfg.linear_solver, normal, cfg.cg_tol, cfg.cg_max_iters, cfg.precondition)
    logger.debug(f"Built problem n={n} variant={cfg.variant} u-solver={solver.name}")

    return Problem(
        cfg=cfg,
        blur=blur,
        K=K,
        T=T,
        normal=normal,
        penalty=get_penalty(cfg.q, cfg.sigma),
        f_tilde=f_tilde,
        f=f,
        K_adj_f=K.adjoint(f),
        linear_solver=solver,
    )
