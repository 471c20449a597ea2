"""
Quality and convergence metrics
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence, Union

import numpy as np

from errors import ShapeError
from imagecore.image import Image

logger = logging.getLogger(__name__)

ImageLike = Union[Image, np.ndarray]


class StopReason(str, Enum):
    TOLERANCE_MET = "tolerance_met"
    RESIDUAL_INCREASE = "residual_increase"
    MAX_ITERS = "max_iters"
    CONTINUE = "continue"


@dataclass(frozen=True)
class StopDecision:
    stop: bool
    reason: StopReason


def _pixels(img: ImageLike) -> np.ndarray:
    if isinstance(img, Image):
        return img.pixels
    return np.asarray(img, dtype=np.float64).ravel(order="F")


def _pair(original: ImageLike, restored: ImageLike) -> tuple[np.ndarray, np.ndarray]:
    a, b = _pixels(original), _pixels(restored)
    if a.size != b.size:
        raise ShapeError(f"Images differ in size: {a.size} vs {b.size} pixels")
    return a, b


def snr(original: ImageLike, restored: ImageLike) -> float:
    """
    10 log10(||u - mean(u)||^2 / ||u - u*||^2) in dB

    Returns math.inf when restored equals original exactly (see is_exact_restoration).
    """
    u, u_star = _pair(original, restored)
    error = float(np.sum((u - u_star) ** 2))
    if error == 0.0:
        logger.debug("SNR of identical images requested; returning inf")
        return math.inf
    spread = float(np.sum((u - u.mean()) ** 2))
    if spread == 0.0:
        return -math.inf
    return 10.0 * math.log10(spread / error)


def is_exact_restoration(value: float) -> bool:
    """Flag for the snr sentinel"""
    return math.isinf(value) and value > 0


def real_error(original: ImageLike, restored: ImageLike) -> float:
    """||u - u*||_2 over all pixels"""
    u, u_star = _pair(original, restored)
    return float(np.linalg.norm(u - u_star))


def residual(curr: Sequence[np.ndarray], ref: Sequence[np.ndarray]) -> float:
    """
    ||(u, p) - (u_ref, p_ref)|| / (1 + ||(u_ref, p_ref)||)

    With ref = previous iterate this is the standard residual; with ref = the
    extrapolated point it is the inertial one.
    """
    if len(curr) != len(ref):
        raise ShapeError(f"Residual needs matching tuples, got {len(curr)} and {len(ref)} parts")
    num = 0.0
    den = 0.0
    for a, b in zip(curr, ref):
        a = np.asarray(a, dtype=np.float64)
        b = np.asarray(b, dtype=np.float64)
        if a.shape != b.shape:
            raise ShapeError(f"Residual parts differ in shape: {a.shape} vs {b.shape}")
        num += float(np.sum((a - b) ** 2))
        den += float(np.sum(b**2))
    return math.sqrt(num) / (1.0 + math.sqrt(den))


def should_stop(res_prev: Optional[float], res_curr: float, eps: float, k: int, warmup: int) -> StopDecision:
    """
    Stop when res_curr < eps, or when the residual grew after the warmup steps

    Args:
        res_prev: Residual of the previous step (None at the first step)
        res_curr: Residual of this step
        eps: Tolerance
        k: Step index, from 1
        warmup: Steps during which an increase does not stop the run (0 = literal rule)
    """
    if res_curr < eps:
        return StopDecision(True, StopReason.TOLERANCE_MET)
    if res_prev is not None and res_prev < res_curr and k > warmup:
        return StopDecision(True, StopReason.RESIDUAL_INCREASE)
    return StopDecision(False, StopReason.CONTINUE)
