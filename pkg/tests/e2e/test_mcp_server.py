#!/usr/bin/env python3
"""
MCP Server Testing Script
Tests tool registration, the JSON summaries and server startup
"""

import json
import math
import shutil
import subprocess
import tempfile
import time
from pathlib import Path

import pytest

# Add project root to path
import sys

sys.path.append(str(Path(__file__).parent.parent.parent))

from server import DeblurServer, _as_json, _jsonable


class TestDeblurServer:
    """Test the FastMCP wrapper around the tools"""

    @classmethod
    def setup_class(cls):
        cls.project_root = Path(__file__).parent.parent.parent
        cls.temp_dir = Path(tempfile.mkdtemp())
        cls.server = DeblurServer()

    @classmethod
    def teardown_class(cls):
        shutil.rmtree(cls.temp_dir, ignore_errors=True)

    @pytest.mark.asyncio
    async def test_tools_registered(self):
        tools = await self.server.mcp.list_tools()
        names = {tool.name for tool in tools}
        assert names == {"blur", "deblur", "theory_constants", "bench", "list_presets"}

    @pytest.mark.asyncio
    async def test_blur_then_deblur(self):
        blurred = await self.server.blur(
            {"phantom": "ramp", "n": 16, "kernel_size": 3, "kernel_sigma": 1.0, "output": str(self.temp_dir / "b.pgm")}
        )
        assert blurred["n"] == 16

        summary = await self.server.deblur(
            {
                "input": blurred["output"],
                "output": str(self.temp_dir / "r.pgm"),
                "kernel_size": 3,
                "kernel_sigma": 1.0,
                "max_iters": 10,
                "diagnostics": False,
            }
        )
        assert summary["iterations"] >= 1
        assert summary["trace"] is None
        assert summary["snr"] is None
        assert Path(summary["manifest"]).exists()

    @pytest.mark.asyncio
    async def test_theory_constants(self):
        report = await self.server.theory_constants({"n": 4, "kernel_size": 3, "kernel_sigma": 1.0, "deltas": [5.0]})
        assert report["nu_source"] == "dense"
        assert "h_hat[delta=5]" in report

    @pytest.mark.asyncio
    async def test_errors_become_json(self):
        text = await _as_json(self.server.theory_constants({"n": 0}))
        payload = json.loads(text)
        assert payload["error"].startswith("ValidationError")

    def test_non_finite_values(self):
        assert _jsonable(math.inf) == "inf"
        assert _jsonable(-math.inf) == "-inf"
        assert _jsonable(1.5) == 1.5
        assert _jsonable("x") == "x"

    def test_server_startup(self):
        """The stdio server stays up until its input closes"""
        proc = subprocess.Popen(
            [sys.executable, str(self.project_root / "server.py")],
            stdin=subprocess.PIPE,
            stdout=subprocess.PIPE,
            stderr=subprocess.PIPE,
            text=True,
            cwd=self.project_root,
        )
        try:
            time.sleep(2)
            if proc.poll() is not None:
                _, stderr = proc.communicate()
                pytest.fail(f"Server exited early: {stderr}")
        finally:
            proc.terminate()
            proc.wait(timeout=10)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
