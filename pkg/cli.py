#!/usr/bin/env python3
"""
iadmm-deblur CLI - blur, deblur, theory constants and benchmark grids
"""

import argparse
import asyncio
import logging
import sys
from typing import NoReturn, Optional

from pydantic import ValidationError

from config import Config
from errors import (
    DivergenceError,
    EstimationError,
    FormatError,
    InvalidArgumentError,
    ShapeError,
    SolveError,
    UnsupportedVariantError,
)
from imagecore import list_phantoms
from tools import BenchTool, BlurTool, ConstantsTool, DeblurTool, format_key_values

logger = logging.getLogger("cli")

ARGUMENT_ERRORS = (InvalidArgumentError, ShapeError, UnsupportedVariantError, ValidationError)
SOLVER_ERRORS = (DivergenceError, SolveError, EstimationError)
IO_ERRORS = (OSError, FormatError)


class ArgumentParser(argparse.ArgumentParser):
    """argparse with the argument-error exit code"""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(Config.EXIT_CODES["arguments"], f"{self.prog}: error: {message}\n")


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(
        prog="iadmm-deblur",
        description="iadmm-deblur - nonconvex inertial ADMM for TV image deblurring",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  iadmm-deblur blur --phantom checkerboard --n 64 --kernel-size 17 --kernel-sigma 7 -o blurred.pgm
  iadmm-deblur deblur blurred.pgm --method iadmm --alpha 0.5 --delta 0.001 --eps 0.001 -o restored.pgm --trace trace.csv
  iadmm-deblur deblur blurred.pgm --method admm --truth original.pgm -o restored.pgm
  iadmm-deblur constants --n 64 --alpha 0.5 --delta 0.001 10 1000
  iadmm-deblur bench --images phantom:checkerboard phantom:disks:7 --grid preset:smoke --sigma 0.001 -o results.csv

Exit codes:
  0  success (including a residual_increase stop)
  2  I/O error
  3  invalid arguments
  4  solver divergence or failed linear solve
        """,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {Config.VERSION}")
    parser.add_argument("--log-level", default=Config.LOG_LEVEL, help="Logging level (default: %(default)s)")
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=ArgumentParser)

    # blur
    blur = subparsers.add_parser("blur", help="Blur a PGM or a phantom")
    blur.add_argument("input", nargs="?", help="Input PGM (omit when using --phantom)")
    blur.add_argument("--phantom", choices=list_phantoms(), help="Generate a phantom instead of reading input")
    blur.add_argument("--n", type=int, default=Config.BENCH_PHANTOM_SIZE, help="Phantom side length")
    blur.add_argument("--seed", type=int, default=0, help="Phantom and noise seed")
    _add_kernel_arguments(blur)
    blur.add_argument("--noise-sigma", type=float, default=Config.NOISE_SIGMA, help="Additive Gaussian noise level")
    blur.add_argument("--truth-output", help="Also write the original image here")
    blur.add_argument("-o", "--output", required=True, help="Output PGM")

    # deblur
    deblur = subparsers.add_parser("deblur", help="Restore a blurred PGM")
    deblur.add_argument("input", help="Blurred PGM")
    deblur.add_argument("--method", choices=["iadmm", "admm"], default="iadmm", help="Splitting method")
    deblur.add_argument("--q", type=float, default=Config.DEFAULT_Q, help="Penalty exponent: 1 (TV1) or 0.5 (TV(1/2))")
    deblur.add_argument("--alpha", type=float, default=Config.DEFAULT_ALPHA, help="Inertia weight")
    deblur.add_argument("--delta", type=float, default=Config.DEFAULT_DELTA, help="Penalty parameter")
    deblur.add_argument("--sigma", type=float, default=Config.DEFAULT_SIGMA, help="TV weight")
    deblur.add_argument("--beta", type=float, default=Config.DEFAULT_BETA, help="u1 = u2 penalty weight (>= 1)")
    deblur.add_argument("--eps", type=float, default=Config.DEFAULT_EPSILON, help="Stop tolerance")
    deblur.add_argument("--max-iters", type=int, default=Config.DEFAULT_MAX_ITERS, help="Iteration cap")
    deblur.add_argument("--warmup", type=int, default=Config.DEFAULT_WARMUP, help="Residual-increase warmup steps")
    deblur.add_argument("--variant", choices=["banded", "circulant"], default="banded", help="Difference operator")
    deblur.add_argument(
        "--linear-solver", choices=["auto", "cg", "fft", "direct"], default="auto", help="u-update solver"
    )
    deblur.add_argument("--precondition", action="store_true", help="Jacobi-preconditioned CG")
    deblur.add_argument("--no-diagnostics", action="store_true", help="Skip theory constants and bound ratios")
    deblur.add_argument("--enforce-admissible", action="store_true", help="Fail when delta <= delta_min")
    _add_kernel_arguments(deblur)
    deblur.add_argument("--truth", help="Original PGM for the err and snr columns")
    deblur.add_argument("--trace", help="CSV trace output")
    deblur.add_argument("-o", "--output", required=True, help="Restored PGM")

    # constants
    constants = subparsers.add_parser("constants", help="Print theta, ||K||, nu and delta admissibility")
    constants.add_argument("--n", type=int, required=True, help="Image side length")
    _add_kernel_arguments(constants)
    constants.add_argument("--alpha", type=float, default=Config.DEFAULT_ALPHA, help="Inertia weight")
    constants.add_argument("--beta", type=float, default=Config.DEFAULT_BETA, help="u1 = u2 penalty weight")
    constants.add_argument("--delta", type=float, nargs="+", default=[Config.DEFAULT_DELTA], help="delta values")
    constants.add_argument("--variant", choices=["banded", "circulant"], default="banded", help="Difference operator")
    constants.add_argument("--probes", type=int, default=Config.NU_PROBES, help="Number M of nu probes")
    constants.add_argument("--probe-base", type=float, default=Config.NU_PROBE_BASE, help="Confidence base b")
    constants.add_argument("--seed", type=int, default=Config.NU_SEED, help="Probe seed")

    # bench
    bench = subparsers.add_parser("bench", help="Run a parameter grid over images")
    bench.add_argument("--images", nargs="+", required=True, help="phantom:<kind>[:seed], PGM paths, globs, dirs")
    bench.add_argument("--grid", required=True, help="Grid file or preset:<name>")
    bench.add_argument("--sigma", type=float, required=True, help="TV weight for every cell")
    bench.add_argument("--n", type=int, default=Config.BENCH_PHANTOM_SIZE, help="Phantom side length")
    _add_kernel_arguments(bench)
    bench.add_argument("--noise-sigma", type=float, default=Config.NOISE_SIGMA, help="Additive noise level")
    bench.add_argument("--seed", type=int, default=0, help="Noise seed")
    bench.add_argument("--beta", type=float, default=Config.DEFAULT_BETA, help="u1 = u2 penalty weight")
    bench.add_argument("--max-iters", type=int, default=Config.DEFAULT_MAX_ITERS, help="Iteration cap per cell")
    bench.add_argument("--warmup", type=int, default=Config.DEFAULT_WARMUP, help="Residual-increase warmup")
    bench.add_argument("--variant", choices=["banded", "circulant"], default="banded", help="Difference operator")
    bench.add_argument("--linear-solver", choices=["auto", "cg", "fft", "direct"], default="auto")
    bench.add_argument("--diagnostics", action="store_true", help="Compute theory constants per cell")
    bench.add_argument("--jobs", type=int, default=Config.BENCH_JOBS, help="Concurrent cells")
    bench.add_argument("-o", "--output", required=True, help="Result CSV")

    return parser


def _add_kernel_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--kernel-size", type=int, default=Config.KERNEL_SIZE, help="Odd Gaussian kernel side")
    parser.add_argument("--kernel-sigma", type=float, default=Config.KERNEL_SIGMA, help="Gaussian kernel sigma")


async def cmd_blur(args: argparse.Namespace) -> int:
    tool_args = {
        "input": args.input,
        "phantom": args.phantom,
        "n": args.n,
        "seed": args.seed,
        "kernel_size": args.kernel_size,
        "kernel_sigma": args.kernel_sigma,
        "noise_sigma": args.noise_sigma,
        "output": args.output,
        "truth_output": args.truth_output,
    }
    result = await BlurTool().execute(tool_args)
    print(f"output = {result.output}")
    print(f"manifest = {result.manifest}")
    return Config.EXIT_CODES["ok"]


async def cmd_deblur(args: argparse.Namespace) -> int:
    tool_args = {
        "input": args.input,
        "output": args.output,
        "trace": args.trace,
        "truth": args.truth,
        "method": args.method,
        "q": args.q,
        "alpha": args.alpha,
        "delta": args.delta,
        "sigma": args.sigma,
        "beta": args.beta,
        "epsilon": args.eps,
        "max_iters": args.max_iters,
        "warmup": args.warmup,
        "variant": args.variant,
        "kernel_size": args.kernel_size,
        "kernel_sigma": args.kernel_sigma,
        "linear_solver": args.linear_solver,
        "precondition": args.precondition,
        "diagnostics": not args.no_diagnostics,
        "enforce_admissible": args.enforce_admissible,
    }
    result = await DeblurTool().execute(tool_args)
    pairs = [("stop_reason", result.stop_reason), ("iterations", result.iterations), ("output", result.output)]
    if result.trace is not None:
        pairs.append(("trace", result.trace))
    pairs.append(("manifest", result.manifest))
    print(format_key_values(pairs))
    return Config.EXIT_CODES["ok"]


async def cmd_constants(args: argparse.Namespace) -> int:
    tool_args = {
        "n": args.n,
        "kernel_size": args.kernel_size,
        "kernel_sigma": args.kernel_sigma,
        "alpha": args.alpha,
        "beta": args.beta,
        "deltas": args.delta,
        "variant": args.variant,
        "probes": args.probes,
        "probe_base": args.probe_base,
        "seed": args.seed,
    }
    _, pairs = await ConstantsTool().execute(tool_args)
    print(format_key_values(pairs))
    return Config.EXIT_CODES["ok"]


async def cmd_bench(args: argparse.Namespace) -> int:
    tool_args = {
        "images": args.images,
        "grid": args.grid,
        "output": args.output,
        "sigma": args.sigma,
        "n": args.n,
        "kernel_size": args.kernel_size,
        "kernel_sigma": args.kernel_sigma,
        "noise_sigma": args.noise_sigma,
        "seed": args.seed,
        "beta": args.beta,
        "max_iters": args.max_iters,
        "warmup": args.warmup,
        "variant": args.variant,
        "linear_solver": args.linear_solver,
        "diagnostics": args.diagnostics,
        "jobs": args.jobs,
    }
    result = await BenchTool().execute(tool_args)
    print(format_key_values([("rows", len(result.rows)), ("succeeded", result.succeeded), ("output", result.output)]))
    if result.succeeded == 0:
        print("Error: every bench cell failed", file=sys.stderr)
        return Config.EXIT_CODES["divergence"]
    return Config.EXIT_CODES["ok"]


COMMANDS = {
    "blur": cmd_blur,
    "deblur": cmd_deblur,
    "constants": cmd_constants,
    "bench": cmd_bench,
}


def exit_code_for(error: BaseException) -> int:
    """Map an exception to the documented exit code"""
    if isinstance(error, ARGUMENT_ERRORS):
        return Config.EXIT_CODES["arguments"]
    if isinstance(error, SOLVER_ERRORS):
        return Config.EXIT_CODES["divergence"]
    if isinstance(error, IO_ERRORS):
        return Config.EXIT_CODES["io"]
    return 1


async def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(
        level=getattr(logging, str(args.log_level).upper(), logging.WARNING),
        format=Config.LOG_FORMAT,
        stream=sys.stderr,
    )

    if args.command == "blur" and (args.input is None) == (args.phantom is None):
        parser.error("blur needs exactly one of an input PGM or --phantom")

    try:
        return await COMMANDS[args.command](args)
    except Exception as e:
        code = exit_code_for(e)
        if code == 1:
            raise
        print(f"Error: {type(e).__name__}: {e}", file=sys.stderr)
        return code


if __name__ == "__main__":
    sys.exit(asyncio.run(main()))
