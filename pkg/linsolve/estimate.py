"""
Lower bounds for nu = lambda_min(K0^* K0 + T^* T)

Since 1 / nu = ||(K0^* K0 + T^* T)^-1||_2, M Gaussian probes w_i give

    nu >= 1 / (b sqrt(2 / pi) max_i ||A^-1 w_i||)

with probability at least 1 - b^-M.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from errors import EstimationError, InvalidArgumentError
from linsolve.base import LinearSolver
from linsolve.normal import NormalOperator
from operators.blur import BlurOperator
from operators.difference import DiffOperator
from operators.stacked import StackedOperator

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NuEstimate:
    nu_hat: float
    confidence: float
    source: str  # "probabilistic" or "dense"
    probe_norms: tuple[float, ...] = ()
    probes: int = 0
    base: float = 0.0


def nu_confidence(base: float, probes: int) -> float:
    """1 - b^-M"""
    return 1.0 - base ** (-probes)


def build_nu_operator(blur: BlurOperator, variant: str = "banded") -> NormalOperator:
    """K0^* K0 + T^* T, i.e. the normal operator with beta = delta = 1"""
    return NormalOperator(StackedOperator(blur, beta=1.0), DiffOperator(blur.n, variant), delta=1.0)


def estimate_nu(
    op: NormalOperator,
    probes: int = 20,
    base: float = 2.0,
    seed: int = 0,
    solver: Optional[LinearSolver] = None,
) -> NuEstimate:
    """
    Probabilistic lower bound on the smallest eigenvalue of op

    Args:
        op: Normal operator, normally from build_nu_operator
        probes: Number M of Gaussian probes, at least 1
        base: Confidence base b > 1
        seed: Probe generator seed; probe i is the same for every M > i
        solver: Linear solver for the probes (default: registry "auto")

    Returns:
        NuEstimate with nu_hat and confidence 1 - b^-M
    """
    if probes < 1:
        raise InvalidArgumentError(f"probes must be at least 1, got {probes}")
    if base <= 1:
        raise InvalidArgumentError(f"probe base must exceed 1, got {base}")
    if op.delta != 1.0 or op.K.beta != 1.0:
        logger.warning(f"estimate_nu called with delta={op.delta}, beta={op.K.beta}; the bound is stated for 1, 1")

    if solver is None:
        from linsolve import make_linear_solver

        solver = make_linear_solver("auto", op)

    rng = np.random.default_rng(seed)
    norms = []
    for i in range(probes):
        w = rng.standard_normal(op.shape[1])
        x, report = solver.solve(w)
        if not report.converged:
            raise EstimationError(
                f"probe {i + 1}/{probes} solve did not converge (residual {report.final_residual_norm:.3e})"
            )
        norms.append(float(np.linalg.norm(x)))

    nu_hat = 1.0 / (base * math.sqrt(2.0 / math.pi) * max(norms))
    confidence = nu_confidence(base, probes)
    logger.info(f"nu estimate {nu_hat:.6g} with confidence {confidence:.10g} from {probes} probes")
    return NuEstimate(nu_hat, confidence, "probabilistic", tuple(norms), probes, base)


def nu_dense(op: NormalOperator) -> NuEstimate:
    """Exact nu from a dense symmetric eigensolve (small n only)"""
    dense = op.to_dense()
    eigenvalues = np.linalg.eigvalsh(0.5 * (dense + dense.T))
    return NuEstimate(float(eigenvalues[0]), 1.0, "dense")


def stacked_sigma_min(blur: BlurOperator, variant: str = "banded") -> float:
    """Smallest singular value of (T; K0) by dense SVD; its square is nu"""
    n = blur.n
    T = DiffOperator(n, variant).to_dense()
    K0 = StackedOperator(blur, beta=1.0).to_dense()
    return float(np.linalg.svd(np.vstack([T, K0]), compute_uv=False)[-1])
