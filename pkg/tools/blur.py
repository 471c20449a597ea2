"""
Blur tool - degrade a PGM or a synthetic phantom
"""

import asyncio
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional

from pydantic import BaseModel, Field, model_validator

from config import Config
from imagecore import DegradationSpec, Image, degrade, make_phantom, read_pgm, write_pgm
from operators.blur import BlurOperator
from utils.files import sidecar_path
from utils.manifest import RunManifest

logger = logging.getLogger(__name__)


class BlurRequest(BaseModel):
    """Request model for the blur tool"""

    # Source: exactly one of input / phantom
    input: Optional[str] = Field(default=None, description="Path of a binary PGM (P5, maxval 255, square)")
    phantom: Optional[str] = Field(
        default=None, description="Phantom kind: checkerboard, ramp, disks, text_bars (instead of input)"
    )
    n: int = Field(default=Config.BENCH_PHANTOM_SIZE, ge=8, description="Phantom side length")
    seed: int = Field(default=0, ge=0, description="Phantom and noise seed")

    # Degradation
    kernel_size: int = Field(default=Config.KERNEL_SIZE, ge=1, description="Odd Gaussian kernel side length")
    kernel_sigma: float = Field(default=Config.KERNEL_SIGMA, gt=0, description="Gaussian kernel standard deviation")
    noise_sigma: float = Field(default=Config.NOISE_SIGMA, ge=0, description="Additive Gaussian noise level")

    output: str = Field(..., description="Path of the blurred PGM; a .manifest sidecar is written next to it")
    truth_output: Optional[str] = Field(default=None, description="Also write the (phantom) original here")

    @model_validator(mode="after")
    def _one_source(self) -> "BlurRequest":
        if (self.input is None) == (self.phantom is None):
            raise ValueError("give exactly one of input or phantom")
        return self


@dataclass
class BlurResult:
    output: Path
    manifest: Path
    n: int
    truth_output: Optional[Path] = None


class BlurTool:
    """Builds the degradation, applies it and records the manifest"""

    async def execute(self, arguments: dict[str, Any]) -> BlurResult:
        try:
            # 1. Validate request
            request = BlurRequest(**arguments)
            spec = DegradationSpec(
                kernel_size=request.kernel_size,
                kernel_sigma=request.kernel_sigma,
                noise_sigma=request.noise_sigma,
                rng_seed=request.seed,
            )

            # 2. Load or generate the original
            original = self._load_source(request)

            # 3. Degrade
            blur = BlurOperator.from_gaussian(original.n, spec.kernel_size, spec.kernel_sigma)
            blurred = await asyncio.to_thread(degrade, original, spec, blur)

            # 4. Write image, optional original and manifest
            output = write_pgm(blurred, request.output)
            truth_output = write_pgm(original, request.truth_output) if request.truth_output else None
            manifest = self._build_manifest(request, spec, original, output, truth_output)
            manifest_path = manifest.write(sidecar_path(output))

            logger.info(f"Blurred {original.n}x{original.n} image written to {output}")
            return BlurResult(output, manifest_path, original.n, truth_output)

        except Exception as e:
            logger.error(f"Error in blur tool: {e}", exc_info=True)
            raise

    def _load_source(self, request: BlurRequest) -> Image:
        if request.phantom is not None:
            return make_phantom(request.phantom, request.n, request.seed)
        assert request.input is not None
        return read_pgm(request.input)

    def _build_manifest(
        self,
        request: BlurRequest,
        spec: DegradationSpec,
        original: Image,
        output: Path,
        truth_output: Optional[Path],
    ) -> RunManifest:
        paths: dict[str, Any] = {"output": str(output)}
        if request.input is not None:
            paths["input"] = request.input
        else:
            paths["phantom"] = request.phantom
            paths["n"] = request.n
        if truth_output is not None:
            paths["truth_output"] = str(truth_output)
        return RunManifest(
            command="blur",
            degradation=spec.model_dump(),
            paths=paths,
            results={"n": original.n},
        )
