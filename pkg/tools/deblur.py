"""
Deblur tool - run IADMM or ADMM on one image
"""

import asyncio
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Literal, Optional

from pydantic import BaseModel, Field

from config import Config
from imagecore import Image, read_pgm, write_pgm
from solvers.config import SolverConfig, TheorySettings
from solvers.runner import IterTrace, RunResult, run
from utils.files import sidecar_path
from utils.manifest import RunManifest, config_to_section
from utils.metrics import is_exact_restoration, snr
from utils.traces import TraceWriter

logger = logging.getLogger(__name__)


class DeblurRequest(BaseModel):
    """Request model for the deblur tool"""

    # Files
    input: str = Field(..., description="Blurred PGM")
    output: str = Field(..., description="Restored PGM; a .manifest sidecar is written next to it")
    trace: Optional[str] = Field(default=None, description="Per-iteration CSV trace")
    truth: Optional[str] = Field(default=None, description="Original PGM; fills the err and snr columns")

    # Method
    method: Literal["iadmm", "admm"] = Field(default="iadmm", description="iadmm or admm")
    q: float = Field(default=Config.DEFAULT_Q, gt=0, le=1, description="Penalty exponent (1 = TV1, 0.5 = TV(1/2))")
    alpha: float = Field(default=Config.DEFAULT_ALPHA, ge=0, description="Inertia weight (ignored by admm)")
    delta: float = Field(default=Config.DEFAULT_DELTA, gt=0, description="Penalty parameter")
    sigma: float = Field(default=Config.DEFAULT_SIGMA, gt=0, description="TV weight")
    beta: float = Field(default=Config.DEFAULT_BETA, ge=1, description="u1 = u2 penalty weight")
    epsilon: float = Field(default=Config.DEFAULT_EPSILON, gt=0, description="Stop tolerance")
    max_iters: int = Field(default=Config.DEFAULT_MAX_ITERS, ge=1, description="Iteration cap")
    warmup: int = Field(default=Config.DEFAULT_WARMUP, ge=0, description="Steps before residual_increase may fire")
    variant: Literal["banded", "circulant"] = Field(default="banded", description="Difference operator")

    # Blur model assumed for the input
    kernel_size: int = Field(default=Config.KERNEL_SIZE, ge=1, description="Odd Gaussian kernel side length")
    kernel_sigma: float = Field(default=Config.KERNEL_SIGMA, gt=0, description="Gaussian kernel standard deviation")

    # Numerics
    linear_solver: Literal["auto", "cg", "fft", "direct"] = Field(default="auto", description="u-update solver")
    precondition: bool = Field(default=False, description="Jacobi-preconditioned CG")
    diagnostics: bool = Field(default=True, description="Theory constants and bound ratios in the trace")
    enforce_admissible: bool = Field(default=False, description="Fail when delta <= delta_min")
    probes: int = Field(default=Config.NU_PROBES, ge=1, description="nu estimator probes")
    probe_seed: int = Field(default=Config.NU_SEED, ge=0, description="nu estimator seed")

    def solver_config(self) -> SolverConfig:
        return SolverConfig(
            method=self.method,
            sigma=self.sigma,
            delta=self.delta,
            alpha=self.alpha,
            beta=self.beta,
            q=self.q,
            variant=self.variant,
            kernel_size=self.kernel_size,
            kernel_sigma=self.kernel_sigma,
            epsilon=self.epsilon,
            max_iters=self.max_iters,
            warmup=self.warmup,
            linear_solver=self.linear_solver,
            precondition=self.precondition,
            diagnostics_on=self.diagnostics,
            enforce_admissible=self.enforce_admissible,
        )


@dataclass
class DeblurResult:
    output: Path
    manifest: Path
    trace: Optional[Path]
    stop_reason: str
    iterations: int
    result: RunResult


class DeblurTool:
    """Loads inputs, runs the solver with a streaming trace and writes outputs"""

    async def execute(self, arguments: dict[str, Any]) -> DeblurResult:
        try:
            # 1. Validate request
            request = DeblurRequest(**arguments)
            cfg = request.solver_config()
            settings = TheorySettings(probes=request.probes, seed=request.probe_seed)

            # 2. Load images
            blurred = read_pgm(request.input)
            truth = read_pgm(request.truth) if request.truth else None

            # 3. Run, streaming rows to the trace
            result = await asyncio.to_thread(self._run, cfg, settings, blurred, truth, request.trace)

            # 4. Write restored image and manifest
            output = write_pgm(result.restored, request.output)
            manifest = self._build_manifest(request, cfg, blurred, truth, result)
            manifest_path = manifest.write(sidecar_path(output))

            return DeblurResult(
                output=output,
                manifest=manifest_path,
                trace=Path(request.trace) if request.trace else None,
                stop_reason=result.stop_reason.value,
                iterations=result.iterations,
                result=result,
            )

        except Exception as e:
            logger.error(f"Error in deblur tool: {e}", exc_info=True)
            raise

    def _run(
        self,
        cfg: SolverConfig,
        settings: TheorySettings,
        blurred: Image,
        truth: Optional[Image],
        trace_path: Optional[str],
    ) -> RunResult:
        if trace_path is None:
            return run(cfg, blurred, truth, settings=settings)

        with TraceWriter(trace_path) as writer:

            def on_iteration(trace: IterTrace) -> None:
                writer.write(trace.csv_row())

            return run(cfg, blurred, truth, settings=settings, on_iteration=on_iteration)

    def _build_manifest(
        self,
        request: DeblurRequest,
        cfg: SolverConfig,
        blurred: Image,
        truth: Optional[Image],
        result: RunResult,
    ) -> RunManifest:
        final = result.final
        results: dict[str, Any] = {
            "stop_reason": result.stop_reason.value,
            "iterations": result.iterations,
            "res": final.res,
            "res_i": final.res_i,
            "objective": final.objective,
            "tu_minus_v": result.critical.feasibility,
            "stationarity": result.critical.stationarity,
            "solve_iterations": result.solve_iterations,
            "elapsed_s": round(result.elapsed, 3),
        }
        if truth is not None:
            results["err"] = final.err
            results["snr"] = final.snr
            results["snr_blurred"] = snr(truth, blurred)
            results["snr_exact"] = bool(final.snr is not None and is_exact_restoration(final.snr))
        if result.max_dual_ratio() is not None:
            results["max_dual_ratio"] = result.max_dual_ratio()
        if result.max_subgrad_ratio() is not None:
            results["max_subgrad_ratio"] = result.max_subgrad_ratio()

        paths: dict[str, Any] = {"input": request.input, "output": request.output}
        if request.trace:
            paths["trace"] = request.trace
        if request.truth:
            paths["truth"] = request.truth

        constants = result.constants.as_dict() if result.constants is not None else {}
        if constants:
            constants["probes"] = request.probes
            constants["probe_seed"] = request.probe_seed
        return RunManifest(
            command="deblur",
            config=config_to_section(cfg),
            paths=paths,
            constants=constants,
            results=results,
        )
