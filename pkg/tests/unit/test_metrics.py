#!/usr/bin/env python3
"""
Metrics Testing Script
Tests SNR, the real error, residuals and the stop rule
"""

import math

import numpy as np
import pytest

# Add project root to path
import sys
from pathlib import Path

sys.path.append(str(Path(__file__).parent.parent.parent))

from errors import ShapeError
from imagecore import Image, make_phantom
from utils.metrics import StopReason, is_exact_restoration, real_error, residual, should_stop, snr


class TestSNR:
    """Test 10 log10(||u - mean u||^2 / ||u - u*||^2)"""

    def test_mean_image_is_zero_db(self):
        """Restoring to the mean leaves error equal to the spread"""
        original = make_phantom("ramp", 16)
        flat = Image(16, np.full(256, original.pixels.mean()))
        assert snr(original, flat) == pytest.approx(0.0, abs=1e-12)

    def test_twenty_db(self):
        """Error a tenth of the deviation in norm gives 20 dB"""
        original = make_phantom("disks", 16, seed=2)
        deviation = original.pixels - original.pixels.mean()
        restored = Image(16, original.pixels + 0.1 * deviation)
        assert snr(original, restored) == pytest.approx(20.0, abs=1e-9)

    def test_identical_images(self):
        original = make_phantom("checkerboard", 16)
        value = snr(original, original)
        assert value == math.inf
        assert is_exact_restoration(value)
        assert not is_exact_restoration(35.0)

    def test_flat_original(self):
        flat = Image(8, np.full(64, 0.5))
        assert snr(flat, Image(8, np.full(64, 0.4))) == -math.inf

    def test_accepts_arrays(self):
        original = make_phantom("ramp", 8)
        assert snr(original.as_array(), original.as_array() * 0.9) == pytest.approx(snr(original, Image.from_array(original.as_array() * 0.9)))

    def test_size_mismatch(self):
        with pytest.raises(ShapeError):
            snr(make_phantom("ramp", 8), make_phantom("ramp", 16))


class TestErrorAndResidual:
    """Test ||u - u*|| and the normalized residuals"""

    def test_real_error(self):
        a = Image(2, np.array([0.0, 0.0, 0.0, 0.0]))
        b = Image(2, np.array([3.0, 4.0, 0.0, 0.0]))
        assert real_error(a, b) == pytest.approx(5.0)

    def test_residual_values(self):
        """||curr - ref|| / (1 + ||ref||)"""
        zero = np.zeros(2)
        assert residual((np.array([3.0, 4.0]),), (zero,)) == pytest.approx(5.0)
        assert residual((np.array([3.0, 4.0]),), (np.array([3.0, 0.0]),)) == pytest.approx(1.0)
        assert residual((np.array([6.0, 8.0]),), (np.array([6.0, 0.0]),)) == pytest.approx(8.0 / 7.0)

    def test_residual_over_pairs(self):
        """u and p parts are pooled into one norm"""
        curr = (np.array([1.0, 0.0]), np.array([0.0, 1.0]))
        ref = (np.zeros(2), np.zeros(2))
        assert residual(curr, ref) == pytest.approx(math.sqrt(2.0))
        assert residual(curr, curr) == 0.0

    def test_residual_shape_errors(self):
        with pytest.raises(ShapeError):
            residual((np.zeros(2),), (np.zeros(2), np.zeros(2)))
        with pytest.raises(ShapeError):
            residual((np.zeros(2),), (np.zeros(3),))


class TestStopRule:
    """Test tolerance, residual increase and warmup"""

    def test_tolerance(self):
        decision = should_stop(None, 1e-4, 1e-3, 1, 3)
        assert decision.stop
        assert decision.reason == StopReason.TOLERANCE_MET

    def test_tolerance_wins_over_increase(self):
        decision = should_stop(1e-5, 5e-4, 1e-3, 10, 3)
        assert decision.reason == StopReason.TOLERANCE_MET

    def test_increase_after_warmup(self):
        decision = should_stop(0.01, 0.02, 1e-3, 4, 3)
        assert decision.stop
        assert decision.reason == StopReason.RESIDUAL_INCREASE

    def test_increase_during_warmup_continues(self):
        decision = should_stop(0.01, 0.02, 1e-3, 3, 3)
        assert not decision.stop
        assert decision.reason == StopReason.CONTINUE

    def test_literal_rule_with_zero_warmup(self):
        assert should_stop(0.01, 0.02, 1e-3, 2, 0).reason == StopReason.RESIDUAL_INCREASE
        assert not should_stop(None, 0.02, 1e-3, 1, 0).stop

    def test_decrease_continues(self):
        assert not should_stop(0.02, 0.01, 1e-3, 50, 3).stop

    def test_reason_values(self):
        assert {r.value for r in StopReason} == {"tolerance_met", "residual_increase", "max_iters", "continue"}


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
