"""
Bench tool - run a parameter grid over a set of images concurrently
"""

import asyncio
import logging
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field

from config import Config
from errors import DeblurError, InvalidArgumentError
from imagecore import DegradationSpec, Image, degrade
from operators.blur import BlurOperator
from presets import GridCell, load_grid
from solvers.config import SolverConfig
from solvers.runner import run
from utils.files import ImageSource, expand_image_sources, sidecar_path
from utils.manifest import RunManifest
from utils.metrics import snr
from utils.traces import TableWriter

logger = logging.getLogger(__name__)

BENCH_COLUMNS = (
    "image",
    "method",
    "alpha",
    "delta",
    "eps",
    "q",
    "status",
    "iterations",
    "stop_reason",
    "error",
    "snr",
    "snr_blurred",
    "res",
    "ratio",
    "seconds",
    "message",
)


class BenchRequest(BaseModel):
    """Request model for the bench tool"""

    images: list[str] = Field(..., description="phantom:<kind>[:seed] tokens, PGM paths, globs or directories")
    grid: str = Field(..., description="Grid file (method alpha delta eps q per line) or preset:<name>")
    output: str = Field(..., description="Result CSV")
    sigma: float = Field(..., gt=0, description="TV weight used for every cell")

    n: int = Field(default=Config.BENCH_PHANTOM_SIZE, ge=8, description="Phantom side length")
    kernel_size: int = Field(default=Config.KERNEL_SIZE, ge=1, description="Odd Gaussian kernel side length")
    kernel_sigma: float = Field(default=Config.KERNEL_SIGMA, gt=0, description="Gaussian kernel standard deviation")
    noise_sigma: float = Field(default=Config.NOISE_SIGMA, ge=0, description="Additive noise level")
    seed: int = Field(default=0, ge=0, description="Noise seed")

    beta: float = Field(default=Config.DEFAULT_BETA, ge=1, description="u1 = u2 penalty weight")
    max_iters: int = Field(default=Config.DEFAULT_MAX_ITERS, ge=1, description="Iteration cap per cell")
    warmup: int = Field(default=Config.DEFAULT_WARMUP, ge=0, description="Residual-increase warmup")
    variant: Literal["banded", "circulant"] = Field(default="banded", description="Difference operator")
    linear_solver: Literal["auto", "cg", "fft", "direct"] = Field(default="auto", description="u-update solver")
    diagnostics: bool = Field(default=False, description="Compute theory constants per cell")
    jobs: int = Field(default=Config.BENCH_JOBS, ge=1, description="Cells run concurrently")


@dataclass
class BenchCase:
    """One degraded image shared by all cells"""

    source: ImageSource
    original: Image
    blurred: Image
    snr_blurred: float


@dataclass
class BenchResult:
    output: Path
    manifest: Path
    rows: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def succeeded(self) -> int:
        return sum(1 for row in self.rows if row["status"] == "ok")

    @property
    def failed(self) -> int:
        return len(self.rows) - self.succeeded


def reference_iterations(rows: List[Dict[str, Any]], row: Dict[str, Any]) -> Optional[int]:
    """
    Iterations of the IADMM alpha = 0.5 cell on the same image, delta and eps

    Prefers a reference with the same q; returns None when no successful reference exists.
    """
    candidates = [
        r
        for r in rows
        if r["status"] == "ok"
        and r["image"] == row["image"]
        and r["method"] == "iadmm"
        and r["alpha"] == 0.5
        and r["delta"] == row["delta"]
        and r["eps"] == row["eps"]
    ]
    same_q = [r for r in candidates if r["q"] == row["q"]]
    chosen = same_q or candidates
    return chosen[0]["iterations"] if chosen else None


def attach_ratios(rows: List[Dict[str, Any]]) -> None:
    """ratio = I_cell / I_reference"""
    for row in rows:
        if row["status"] != "ok":
            continue
        ref = reference_iterations(rows, row)
        row["ratio"] = row["iterations"] / ref if ref else None


class BenchTool:
    """Runs image x cell jobs under a semaphore and writes one result table"""

    async def execute(self, arguments: dict[str, Any]) -> BenchResult:
        try:
            # 1. Validate request
            request = BenchRequest(**arguments)
            cells = load_grid(request.grid)
            if not cells:
                raise InvalidArgumentError(f"Grid {request.grid} has no cells")
            sources = expand_image_sources(request.images)
            if not sources:
                raise InvalidArgumentError("No images matched the given sources")

            # 2. Degrade every image once
            spec = DegradationSpec(
                kernel_size=request.kernel_size,
                kernel_sigma=request.kernel_sigma,
                noise_sigma=request.noise_sigma,
                rng_seed=request.seed,
            )
            cases = [self._prepare_case(source, spec, request.n) for source in sources]
            logger.info(f"Bench: {len(cases)} images x {len(cells)} cells with {request.jobs} jobs")

            # 3. Run cells concurrently
            semaphore = asyncio.Semaphore(request.jobs)
            jobs = [self._run_cell(semaphore, request, case, cell) for case in cases for cell in cells]
            rows = list(await asyncio.gather(*jobs))

            # 4. Efficiency ratios against the reference cell
            attach_ratios(rows)

            # 5. Single writer for the table, then the manifest
            output = Path(request.output)
            with TableWriter(output, BENCH_COLUMNS) as writer:
                for row in rows:
                    writer.write(row)
            manifest = RunManifest(
                command="bench",
                degradation=spec.model_dump(),
                paths={"output": str(output), "grid": request.grid, "images": " ".join(request.images)},
                config=request.model_dump(exclude={"images", "grid", "output"}),
                results={"cells": len(rows), "succeeded": sum(r["status"] == "ok" for r in rows)},
            )
            manifest_path = manifest.write(sidecar_path(output))
            return BenchResult(output, manifest_path, rows)

        except Exception as e:
            logger.error(f"Error in bench tool: {e}", exc_info=True)
            raise

    def _prepare_case(self, source: ImageSource, spec: DegradationSpec, n: int) -> BenchCase:
        original = source.load(n)
        blur = BlurOperator.from_gaussian(original.n, spec.kernel_size, spec.kernel_sigma)
        blurred = degrade(original, spec, blur)
        return BenchCase(source, original, blurred, snr(original, blurred))

    async def _run_cell(
        self, semaphore: asyncio.Semaphore, request: BenchRequest, case: BenchCase, cell: GridCell
    ) -> Dict[str, Any]:
        row: Dict[str, Any] = {
            "image": case.source.name,
            "method": cell.method,
            "alpha": cell.alpha,
            "delta": cell.delta,
            "eps": cell.epsilon,
            "q": cell.q,
            "snr_blurred": case.snr_blurred,
        }
        async with semaphore:
            started = time.perf_counter()
            try:
                cfg = SolverConfig(
                    method=cell.method,
                    alpha=cell.alpha,
                    delta=cell.delta,
                    epsilon=cell.epsilon,
                    q=cell.q,
                    sigma=request.sigma,
                    beta=request.beta,
                    max_iters=request.max_iters,
                    warmup=request.warmup,
                    variant=request.variant,
                    kernel_size=request.kernel_size,
                    kernel_sigma=request.kernel_sigma,
                    linear_solver=request.linear_solver,
                    diagnostics_on=request.diagnostics,
                )
                result = await asyncio.to_thread(run, cfg, case.blurred, case.original)
                final = result.final
                row.update(
                    status="ok",
                    iterations=result.iterations,
                    stop_reason=result.stop_reason.value,
                    error=final.err,
                    snr=final.snr,
                    res=final.res_i if cfg.is_inertial else final.res,
                )
            except (DeblurError, ValueError) as e:
                logger.warning(f"Cell {cell.label} on {case.source.name} failed: {e}")
                row.update(status="failed", message=f"{type(e).__name__}: {e}")
            row["seconds"] = round(time.perf_counter() - started, 3)
        return row
