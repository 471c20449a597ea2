"""
Validated run parameters for the splitting solvers
"""

import logging
from typing import Literal, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from config import Config

logger = logging.getLogger(__name__)


class SolverConfig(BaseModel):
    """All free parameters of one deblurring run"""

    # Method selection
    method: Literal["iadmm", "admm"] = Field(
        default="iadmm", description="iadmm (inertial) or admm (classical; inertia forced to 0)"
    )

    # Model parameters
    sigma: float = Field(default=Config.DEFAULT_SIGMA, gt=0, description="TV weight sigma")
    delta: float = Field(default=Config.DEFAULT_DELTA, gt=0, description="Penalty parameter delta")
    alpha: float = Field(default=Config.DEFAULT_ALPHA, ge=0, description="Inertia weight alpha")
    beta: float = Field(default=Config.DEFAULT_BETA, ge=1, description="Weight beta of the u1 = u2 penalty block")
    q: float = Field(default=Config.DEFAULT_Q, gt=0, le=1, description="Penalty exponent, phi(t) = |t|^q")
    variant: Literal["banded", "circulant"] = Field(default="banded", description="Difference operator variant")

    # Degradation model of the blur operator K~
    kernel_size: int = Field(default=Config.KERNEL_SIZE, ge=1, description="Odd Gaussian kernel side length")
    kernel_sigma: float = Field(default=Config.KERNEL_SIGMA, gt=0, description="Gaussian kernel standard deviation")

    # Stop control
    epsilon: float = Field(default=Config.DEFAULT_EPSILON, gt=0, description="Residual tolerance epsilon")
    max_iters: int = Field(default=Config.DEFAULT_MAX_ITERS, ge=1, description="Iteration cap")
    warmup: int = Field(
        default=Config.DEFAULT_WARMUP, ge=0, description="Steps before the residual-increase stop can fire"
    )

    # u-update solve
    linear_solver: Literal["auto", "cg", "fft", "direct"] = Field(
        default="auto", description="auto picks cg (banded) or fft (circulant)"
    )
    cg_tol: float = Field(default=Config.CG_TOL, gt=0, description="CG relative tolerance")
    cg_max_iters: Optional[int] = Field(default=None, ge=1, description="CG iteration cap (default 10 * 2N^2)")
    precondition: bool = Field(default=False, description="Jacobi-preconditioned CG")

    # Diagnostics
    diagnostics_on: bool = Field(default=True, description="Compute theory constants and per-step bound ratios")
    enforce_admissible: bool = Field(default=False, description="Reject delta <= delta_min instead of warning")

    @field_validator("kernel_size")
    @classmethod
    def _odd_kernel(cls, value: int) -> int:
        if value % 2 == 0:
            raise ValueError(f"kernel_size must be odd, got {value}")
        return value

    @model_validator(mode="after")
    def _admm_has_no_inertia(self) -> "SolverConfig":
        if self.method == "admm" and self.alpha != 0.0:
            logger.debug(f"method=admm ignores alpha={self.alpha}")
            self.alpha = 0.0
        if self.linear_solver == "fft" and self.variant != "circulant":
            raise ValueError("linear_solver=fft requires variant=circulant")
        return self

    @property
    def is_inertial(self) -> bool:
        return self.alpha > 0.0


class TheorySettings(BaseModel):
    """Knobs of the ||K||_2 and nu estimators"""

    probes: int = Field(default=Config.NU_PROBES, ge=1, description="Number M of Gaussian probes")
    base: float = Field(default=Config.NU_PROBE_BASE, gt=1, description="Confidence base b")
    seed: int = Field(default=Config.NU_SEED, ge=0, description="Probe seed")
    power_iters: int = Field(default=Config.POWER_ITERS, ge=1, description="Power iteration cap")
    power_tol: float = Field(default=Config.POWER_TOL, gt=0, description="Power iteration relative tolerance")
    power_seed: int = Field(default=Config.POWER_SEED, ge=0, description="Power iteration start-vector seed")
    dense_limit: int = Field(
        default=Config.NU_DENSE_LIMIT, ge=0, description="Use the dense eigensolve for nu when n <= this"
    )
