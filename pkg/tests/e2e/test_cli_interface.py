#!/usr/bin/env python3
"""
End-to-End CLI Testing Script
Tests the iadmm-deblur command line: outputs, determinism and exit codes
"""

import os
import shutil
import subprocess
import tempfile
from pathlib import Path

import pytest

# Add project root to path
import sys

sys.path.append(str(Path(__file__).parent.parent.parent))

from config import Config
from utils.traces import read_table, read_trace

KERNEL_ARGS = ["--kernel-size", "5", "--kernel-sigma", "1.5"]


class TestCLIInterface:
    """Test CLI interface functionality"""

    @classmethod
    def setup_class(cls):
        """Setup test environment"""
        cls.project_root = Path(__file__).parent.parent.parent
        cls.cli_script = cls.project_root / "cli.py"
        cls.temp_dir = Path(tempfile.mkdtemp())
        cls.truth = cls.temp_dir / "truth.pgm"
        cls.blurred = cls.temp_dir / "blurred.pgm"
        result = cls.run_cli(
            "blur",
            "--phantom",
            "disks",
            "--n",
            "16",
            "--seed",
            "2",
            *KERNEL_ARGS,
            "--truth-output",
            str(cls.truth),
            "-o",
            str(cls.blurred),
        )
        assert result.returncode == 0, result.stderr

    @classmethod
    def teardown_class(cls):
        """Cleanup test environment"""
        shutil.rmtree(cls.temp_dir, ignore_errors=True)

    @classmethod
    def run_cli(cls, *args: str) -> subprocess.CompletedProcess:
        return subprocess.run(
            [sys.executable, str(cls.cli_script), *args],
            capture_output=True,
            text=True,
            timeout=300,
            cwd=cls.project_root,
            env={**os.environ, "IADMM_LOG_LEVEL": "WARNING"},
        )

    def test_cli_help(self):
        result = self.run_cli("--help")
        assert result.returncode == 0, result.stderr
        assert "usage:" in result.stdout.lower()
        for command in ["blur", "deblur", "constants", "bench"]:
            assert command in result.stdout

    def test_cli_version(self):
        result = self.run_cli("--version")
        assert result.returncode == 0
        assert Config.VERSION in result.stdout

    def test_blur_writes_manifest(self):
        assert self.blurred.exists()
        manifest = Path(str(self.blurred) + ".manifest")
        assert manifest.exists()
        assert "command" in manifest.read_text()

    def test_unit_kernel_keeps_bytes(self):
        """A 1x1 kernel without noise reproduces the input file byte for byte"""
        output = self.temp_dir / "same.pgm"
        result = self.run_cli("blur", str(self.truth), "--kernel-size", "1", "-o", str(output))
        assert result.returncode == 0, result.stderr
        assert output.read_bytes() == self.truth.read_bytes()

    def test_unit_kernel_phantom_matches_truth(self):
        """A 1x1 kernel on a generated phantom writes the same bytes as the truth image"""
        output = self.temp_dir / "disks-k1.pgm"
        truth = self.temp_dir / "disks-k1-truth.pgm"
        result = self.run_cli(
            "blur",
            "--phantom",
            "disks",
            "--n",
            "16",
            "--kernel-size",
            "1",
            "--truth-output",
            str(truth),
            "-o",
            str(output),
        )
        assert result.returncode == 0, result.stderr
        assert output.read_bytes() == truth.read_bytes()

    def test_deblur_prints_summary(self):
        output = self.temp_dir / "restored.pgm"
        trace = self.temp_dir / "trace.csv"
        result = self.run_cli(
            "deblur",
            str(self.blurred),
            "--delta",
            "0.01",
            "--max-iters",
            "20",
            *KERNEL_ARGS,
            "--truth",
            str(self.truth),
            "--trace",
            str(trace),
            "-o",
            str(output),
        )
        assert result.returncode == 0, result.stderr
        assert "stop_reason" in result.stdout
        assert output.exists()
        rows = read_trace(trace)
        assert rows[-1]["snr"] is not None

    def test_zero_inertia_matches_admm(self):
        """--alpha 0 and --method admm write identical trace files"""
        traces = []
        for label, method_args in [("iadmm", ["--method", "iadmm", "--alpha", "0"]), ("admm", ["--method", "admm"])]:
            trace = self.temp_dir / f"trace-{label}.csv"
            result = self.run_cli(
                "deblur",
                str(self.blurred),
                *method_args,
                "--delta",
                "0.01",
                "--eps",
                "1e-12",
                "--max-iters",
                "15",
                "--warmup",
                "20",
                "--no-diagnostics",
                *KERNEL_ARGS,
                "--truth",
                str(self.truth),
                "--trace",
                str(trace),
                "-o",
                str(self.temp_dir / f"restored-{label}.pgm"),
            )
            assert result.returncode == 0, result.stderr
            traces.append(trace.read_bytes())
        assert traces[0] == traces[1]
        assert (self.temp_dir / "restored-iadmm.pgm").read_bytes() == (self.temp_dir / "restored-admm.pgm").read_bytes()

    def test_constants(self):
        result = self.run_cli(
            "constants", "--n", "6", "--kernel-size", "3", "--kernel-sigma", "1", "--delta", "0.001", "1e12"
        )
        assert result.returncode == 0, result.stderr
        lines = dict(line.rsplit(" = ", 1) for line in result.stdout.splitlines())
        lines = {key.strip(): value.strip() for key, value in lines.items()}
        assert lines["nu_source"] == "dense"
        assert lines["admissible[delta=0.001]"] == "false"
        assert lines["admissible[delta=1e+12]"] == "true"
        assert float(lines["delta_min"]) >= 1.0

    def test_bench(self):
        output = self.temp_dir / "bench.csv"
        result = self.run_cli(
            "bench",
            "--images",
            "phantom:checkerboard",
            "--grid",
            "preset:smoke",
            "--sigma",
            "0.001",
            "--n",
            "16",
            "--max-iters",
            "30",
            *KERNEL_ARGS,
            "-o",
            str(output),
        )
        assert result.returncode == 0, result.stderr
        rows = read_table(output)
        assert len(rows) == 2
        assert all(row["status"] == "ok" for row in rows)

    def test_bench_all_cells_failed(self):
        result = self.run_cli(
            "bench",
            "--images",
            "phantom:ramp",
            "--grid",
            "preset:smoke",
            "--sigma",
            "0.001",
            "--n",
            "16",
            "--linear-solver",
            "fft",
            *KERNEL_ARGS,
            "-o",
            str(self.temp_dir / "failed.csv"),
        )
        assert result.returncode == Config.EXIT_CODES["divergence"]
        assert "every bench cell failed" in result.stderr

    @pytest.mark.parametrize(
        "args,code",
        [
            (["deblur", "missing.pgm", "-o", "out.pgm"], Config.EXIT_CODES["io"]),
            (["deblur", "BLURRED", "--kernel-size", "4", "-o", "OUT"], Config.EXIT_CODES["arguments"]),
            (["deblur", "BLURRED", "--delta", "-1", "-o", "OUT"], Config.EXIT_CODES["arguments"]),
            (["deblur", "BLURRED", "--method", "fista", "-o", "OUT"], Config.EXIT_CODES["arguments"]),
            (["blur", "-o", "OUT"], Config.EXIT_CODES["arguments"]),
            (["constants"], Config.EXIT_CODES["arguments"]),
            (["frobnicate"], Config.EXIT_CODES["arguments"]),
        ],
    )
    def test_exit_codes(self, args, code):
        out = str(self.temp_dir / "exit-code.pgm")
        args = [str(self.blurred) if a == "BLURRED" else out if a == "OUT" else a for a in args]
        result = self.run_cli(*args)
        assert result.returncode == code, result.stderr

    def test_corrupt_pgm(self):
        broken = self.temp_dir / "broken.pgm"
        broken.write_bytes(b"P2\n4 4\n255\n")
        result = self.run_cli("deblur", str(broken), "-o", str(self.temp_dir / "x.pgm"))
        assert result.returncode == Config.EXIT_CODES["io"]
        assert "FormatError" in result.stderr


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
