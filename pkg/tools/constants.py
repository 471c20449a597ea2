"""
Constants tool - theta, ||K||_2, nu and the delta admissibility report
"""

import asyncio
import logging
from typing import Any, Literal

from pydantic import BaseModel, Field

from config import Config
from operators.blur import BlurOperator
from solvers.config import SolverConfig, TheorySettings
from solvers.theory import TheoryConstants, compute_theory_constants
from utils.traces import format_cell

logger = logging.getLogger(__name__)


class ConstantsRequest(BaseModel):
    """Request model for the constants tool"""

    n: int = Field(..., ge=2, description="Image side length")
    kernel_size: int = Field(default=Config.KERNEL_SIZE, ge=1, description="Odd Gaussian kernel side length")
    kernel_sigma: float = Field(default=Config.KERNEL_SIGMA, gt=0, description="Gaussian kernel standard deviation")
    alpha: float = Field(default=Config.DEFAULT_ALPHA, ge=0, description="Inertia weight")
    beta: float = Field(default=Config.DEFAULT_BETA, ge=1, description="u1 = u2 penalty weight")
    deltas: list[float] = Field(
        default_factory=lambda: [Config.DEFAULT_DELTA], description="delta values to report h and admissibility for"
    )
    variant: Literal["banded", "circulant"] = Field(default="banded", description="Difference operator")
    probes: int = Field(default=Config.NU_PROBES, ge=1, description="Number M of Gaussian probes")
    probe_base: float = Field(default=Config.NU_PROBE_BASE, gt=1, description="Confidence base b")
    seed: int = Field(default=Config.NU_SEED, ge=0, description="Probe seed")
    dense_limit: int = Field(default=Config.NU_DENSE_LIMIT, ge=0, description="Dense nu for n <= this")


def constants_report(constants: TheoryConstants, deltas: list[float]) -> list[tuple[str, Any]]:
    """Ordered key/value pairs for printing"""
    pairs: list[tuple[str, Any]] = [
        ("n", constants.n),
        ("variant", constants.variant),
        ("alpha", constants.alpha),
        ("beta", constants.beta),
        ("theta", constants.theta),
        ("norm_K", constants.norm_K),
        ("norm_K_converged", constants.norm_K_converged),
        ("norm_T", constants.norm_T),
        ("nu_hat", constants.nu_hat),
        ("nu_source", constants.nu_source),
        ("nu_confidence", constants.nu_confidence),
        ("delta_bound", constants.delta_bound),
        ("delta_min", constants.delta_min),
    ]
    for delta in deltas:
        at = constants.with_delta(delta)
        pairs += [
            (f"h_hat[delta={delta:g}]", at.h_hat),
            (f"admissible[delta={delta:g}]", at.admissible()),
            (f"gamma_u[delta={delta:g}]", at.gamma_u),
            (f"gamma_v[delta={delta:g}]", at.gamma_v),
            (f"gamma_p[delta={delta:g}]", at.gamma_p),
            (f"gamma[delta={delta:g}]", at.gamma),
        ]
    return pairs


def format_key_values(pairs: list[tuple[str, Any]]) -> str:
    """Aligned key = value lines"""
    width = max(len(key) for key, _ in pairs)
    return "\n".join(f"{key.ljust(width)} = {format_cell(value)}" for key, value in pairs)


class ConstantsTool:
    """Computes the theory constants for a problem size and kernel"""

    async def execute(self, arguments: dict[str, Any]) -> tuple[TheoryConstants, list[tuple[str, Any]]]:
        try:
            # 1. Validate request
            request = ConstantsRequest(**arguments)
            cfg = SolverConfig(
                alpha=request.alpha,
                beta=request.beta,
                delta=request.deltas[0] if request.deltas else Config.DEFAULT_DELTA,
                variant=request.variant,
                kernel_size=request.kernel_size,
                kernel_sigma=request.kernel_sigma,
            )
            settings = TheorySettings(
                probes=request.probes, base=request.probe_base, seed=request.seed, dense_limit=request.dense_limit
            )

            # 2. Compute
            blur = BlurOperator.from_gaussian(request.n, cfg.kernel_size, cfg.kernel_sigma)
            constants = await asyncio.to_thread(compute_theory_constants, cfg, blur, settings)

            # 3. Report
            return constants, constants_report(constants, request.deltas)

        except Exception as e:
            logger.error(f"Error in constants tool: {e}", exc_info=True)
            raise
