"""
Central configuration for iadmm-deblur
All defaults in one place, each overridable through an IADMM_* environment variable
"""

import os
from pathlib import Path

from dotenv import load_dotenv

load_dotenv()


def _env_float(name: str, default: str) -> float:
    return float(os.getenv(name, default))


def _env_int(name: str, default: str) -> int:
    return int(os.getenv(name, default))


class Config:
    """Central configuration manager"""

    VERSION = "0.4.0"

    # Project paths
    PROJECT_ROOT = Path(__file__).parent
    LOGS_DIR = Path(os.getenv("IADMM_LOGS_DIR", str(PROJECT_ROOT / "logs")))
    PRESETS_FILE = Path(os.getenv("IADMM_PRESETS_FILE", str(PROJECT_ROOT / "presets" / "methods.yaml")))

    LOG_LEVEL = os.getenv("IADMM_LOG_LEVEL", "WARNING")
    LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

    # Model parameters
    DEFAULT_SIGMA = _env_float("IADMM_SIGMA", "1e-3")
    DEFAULT_BETA = _env_float("IADMM_BETA", "1.0")
    DEFAULT_DELTA = _env_float("IADMM_DELTA", "0.001")
    DEFAULT_ALPHA = _env_float("IADMM_ALPHA", "0.5")
    DEFAULT_Q = _env_float("IADMM_Q", "1.0")

    # Stop control
    DEFAULT_EPSILON = _env_float("IADMM_EPSILON", "0.001")
    DEFAULT_MAX_ITERS = _env_int("IADMM_MAX_ITERS", "500")
    DEFAULT_WARMUP = _env_int("IADMM_WARMUP", "3")

    # u-update linear solve
    CG_TOL = _env_float("IADMM_CG_TOL", "1e-10")
    CG_MAX_ITERS_FACTOR = _env_int("IADMM_CG_MAX_ITERS_FACTOR", "10")  # times 2N^2
    DIRECT_MAX_SIZE = _env_int("IADMM_DIRECT_MAX_SIZE", "4608")  # 2N^2 limit, i.e. N <= 48

    # Spectral estimates
    POWER_ITERS = _env_int("IADMM_POWER_ITERS", "1000")
    POWER_TOL = _env_float("IADMM_POWER_TOL", "1e-12")
    POWER_SEED = _env_int("IADMM_POWER_SEED", "0")
    NU_PROBES = _env_int("IADMM_NU_PROBES", "20")
    NU_PROBE_BASE = _env_float("IADMM_NU_PROBE_BASE", "2.0")
    NU_SEED = _env_int("IADMM_NU_SEED", "0")
    NU_DENSE_LIMIT = _env_int("IADMM_NU_DENSE_LIMIT", "8")  # dense eigensolve for n <= this

    # Degradation
    KERNEL_SIZE = _env_int("IADMM_KERNEL_SIZE", "17")
    KERNEL_SIGMA = _env_float("IADMM_KERNEL_SIGMA", "7.0")
    NOISE_SIGMA = _env_float("IADMM_NOISE_SIGMA", "0.0")

    # Benchmark
    BENCH_JOBS = _env_int("IADMM_BENCH_JOBS", str(os.cpu_count() or 1))
    BENCH_PHANTOM_SIZE = _env_int("IADMM_BENCH_PHANTOM_SIZE", "64")

    # Exit codes shared by the CLI
    EXIT_CODES = {
        "ok": 0,
        "io": 2,
        "arguments": 3,
        "divergence": 4,
    }

    # Method descriptions for help
    METHOD_DESCRIPTIONS = {
        "iadmm": "Nonconvex inertial ADMM: extrapolate (u, v, p) by alpha, then v, u, p updates",
        "admm": "Classical ADMM on the same reformulated model (inertia fixed at zero)",
    }

    PHANTOM_DESCRIPTIONS = {
        "checkerboard": "Alternating 0/1 blocks of side max(2, n // 8)",
        "ramp": "Linear ramp (i + j) / (2 (n - 1))",
        "disks": "Seeded random disks on a dark background",
        "text_bars": "Resolution-chart style bar groups of shrinking width",
    }

    @classmethod
    def cg_max_iters(cls, n: int) -> int:
        """Default CG iteration cap for an n x n image (stacked dimension 2n^2)"""
        return cls.CG_MAX_ITERS_FACTOR * 2 * n * n

    @classmethod
    def ensure_logs_dir(cls) -> Path:
        """Create the log directory on demand"""
        cls.LOGS_DIR.mkdir(parents=True, exist_ok=True)
        return cls.LOGS_DIR
