#!/usr/bin/env python3
"""
iadmm-deblur MCP Server
Exposes the blur, deblur, constants and bench tools over stdio
"""

import json
import logging
import math
from typing import Any, Awaitable

from config import Config

log_file = Config.ensure_logs_dir() / "iadmm-deblur.log"

# Configure logging
logging.basicConfig(
    level=getattr(logging, Config.LOG_LEVEL.upper(), logging.INFO),
    format=Config.LOG_FORMAT,
    handlers=[logging.FileHandler(log_file), logging.StreamHandler()],
)
logger = logging.getLogger(__name__)

from mcp.server.fastmcp import FastMCP  # noqa: E402

from presets import describe_presets  # noqa: E402
from solvers import get_method_descriptions  # noqa: E402
from tools import BenchTool, BlurTool, ConstantsTool, DeblurTool  # noqa: E402


def _jsonable(value: Any) -> Any:
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    return value


async def _as_json(call: Awaitable[dict[str, Any]]) -> str:
    """Run a tool call and serialize its summary; errors become {"error": ...}"""
    try:
        summary = await call
        return json.dumps({key: _jsonable(value) for key, value in summary.items()}, indent=2)
    except Exception as e:
        logger.error(f"Tool call failed: {e}", exc_info=True)
        return json.dumps({"error": f"{type(e).__name__}: {e}"})


class DeblurServer:
    """MCP Server for the deblurring tools using FastMCP"""

    def __init__(self):
        self.mcp = FastMCP("iadmm-deblur")
        self.blur_tool = BlurTool()
        self.deblur_tool = DeblurTool()
        self.constants_tool = ConstantsTool()
        self.bench_tool = BenchTool()
        self._setup_fastmcp_tools()

    async def blur(self, arguments: dict[str, Any]) -> dict[str, Any]:
        result = await self.blur_tool.execute(arguments)
        return {"output": str(result.output), "manifest": str(result.manifest), "n": result.n}

    async def deblur(self, arguments: dict[str, Any]) -> dict[str, Any]:
        result = await self.deblur_tool.execute(arguments)
        final = result.result.final
        return {
            "output": str(result.output),
            "manifest": str(result.manifest),
            "trace": str(result.trace) if result.trace else None,
            "stop_reason": result.stop_reason,
            "iterations": result.iterations,
            "err": final.err,
            "snr": final.snr,
            "tu_minus_v": result.result.critical.feasibility,
        }

    async def theory_constants(self, arguments: dict[str, Any]) -> dict[str, Any]:
        _, pairs = await self.constants_tool.execute(arguments)
        return dict(pairs)

    async def bench(self, arguments: dict[str, Any]) -> dict[str, Any]:
        result = await self.bench_tool.execute(arguments)
        return {
            "output": str(result.output),
            "manifest": str(result.manifest),
            "rows": len(result.rows),
            "succeeded": result.succeeded,
            "failed": result.failed,
        }

    def _setup_fastmcp_tools(self):
        """Register tools using FastMCP"""

        @self.mcp.tool(
            name="blur",
            description="Blur a binary PGM or a synthetic phantom (checkerboard, ramp, disks, text_bars) with a circular Gaussian kernel and optional noise.",
        )
        async def blur_tool(
            output: str,
            input: str = None,
            phantom: str = None,
            n: int = Config.BENCH_PHANTOM_SIZE,
            seed: int = 0,
            kernel_size: int = Config.KERNEL_SIZE,
            kernel_sigma: float = Config.KERNEL_SIGMA,
            noise_sigma: float = Config.NOISE_SIGMA,
        ) -> str:
            """Write a blurred PGM plus manifest"""
            logger.info(f"blur tool called: input={input} phantom={phantom}")
            arguments = {
                "output": output,
                "input": input,
                "phantom": phantom,
                "n": n,
                "seed": seed,
                "kernel_size": kernel_size,
                "kernel_sigma": kernel_sigma,
                "noise_sigma": noise_sigma,
            }
            return await _as_json(self.blur(arguments))

        @self.mcp.tool(
            name="deblur",
            description="Restore a blurred PGM with the nonconvex inertial ADMM (method=iadmm) or classical ADMM (method=admm). q=1 is TV1, q=0.5 is TV(1/2).",
        )
        async def deblur_tool(
            input: str,
            output: str,
            method: str = "iadmm",
            q: float = Config.DEFAULT_Q,
            alpha: float = Config.DEFAULT_ALPHA,
            delta: float = Config.DEFAULT_DELTA,
            sigma: float = Config.DEFAULT_SIGMA,
            epsilon: float = Config.DEFAULT_EPSILON,
            max_iters: int = Config.DEFAULT_MAX_ITERS,
            variant: str = "banded",
            truth: str = None,
            trace: str = None,
            kernel_size: int = Config.KERNEL_SIZE,
            kernel_sigma: float = Config.KERNEL_SIGMA,
        ) -> str:
            """Run one deblurring job"""
            logger.info(f"deblur tool called: {method} alpha={alpha} delta={delta}")
            arguments = {
                "input": input,
                "output": output,
                "method": method,
                "q": q,
                "alpha": alpha,
                "delta": delta,
                "sigma": sigma,
                "epsilon": epsilon,
                "max_iters": max_iters,
                "variant": variant,
                "truth": truth,
                "trace": trace,
                "kernel_size": kernel_size,
                "kernel_sigma": kernel_sigma,
            }
            return await _as_json(self.deblur(arguments))

        @self.mcp.tool(
            name="theory_constants",
            description="Compute theta, ||K||_2, the probabilistic nu lower bound, delta_min and the gamma constants for an n x n problem.",
        )
        async def theory_constants_tool(
            n: int,
            alpha: float = Config.DEFAULT_ALPHA,
            beta: float = Config.DEFAULT_BETA,
            deltas: list[float] = None,
            kernel_size: int = Config.KERNEL_SIZE,
            kernel_sigma: float = Config.KERNEL_SIGMA,
            probes: int = Config.NU_PROBES,
            probe_base: float = Config.NU_PROBE_BASE,
            seed: int = Config.NU_SEED,
        ) -> str:
            """Report theory constants"""
            logger.info(f"theory_constants tool called: n={n}")
            arguments = {
                "n": n,
                "alpha": alpha,
                "beta": beta,
                "deltas": deltas or [Config.DEFAULT_DELTA],
                "kernel_size": kernel_size,
                "kernel_sigma": kernel_sigma,
                "probes": probes,
                "probe_base": probe_base,
                "seed": seed,
            }
            return await _as_json(self.theory_constants(arguments))

        @self.mcp.tool(
            name="bench",
            description="Run a grid (file or preset:<name>) of method/alpha/delta/eps/q cells over images and write a result CSV with efficiency ratios against IADMM alpha=0.5.",
        )
        async def bench_tool(
            images: list[str],
            grid: str,
            output: str,
            sigma: float,
            n: int = Config.BENCH_PHANTOM_SIZE,
            max_iters: int = Config.DEFAULT_MAX_ITERS,
            jobs: int = Config.BENCH_JOBS,
        ) -> str:
            """Run a benchmark grid"""
            logger.info(f"bench tool called: grid={grid} images={len(images)}")
            arguments = {
                "images": images,
                "grid": grid,
                "output": output,
                "sigma": sigma,
                "n": n,
                "max_iters": max_iters,
                "jobs": jobs,
            }
            return await _as_json(self.bench(arguments))

        @self.mcp.tool(
            name="list_presets",
            description="List the solver methods and the named benchmark grids usable as preset:<name>.",
        )
        async def list_presets_tool() -> str:
            """List methods and preset grids"""
            logger.info("list_presets tool called")
            presets = describe_presets()
            presets["solvers"] = get_method_descriptions()
            return json.dumps(presets, indent=2)

    def run(self):
        """Run the MCP server"""
        logger.info(f"Starting iadmm-deblur MCP Server {Config.VERSION}...")
        self.mcp.run(transport="stdio")


def main():
    """Main entry point"""
    try:
        server = DeblurServer()
        server.run()
    except KeyboardInterrupt:
        logger.info("Server stopped by user")
    except Exception as e:
        logger.error(f"Server error: {e}", exc_info=True)
        import sys

        sys.exit(1)


if __name__ == "__main__":
    main()
