"""
Synthetic test images

Each generator returns a [row, column] array with values in [0, 1]; make_phantom
wraps it into an Image. Generators are deterministic for a fixed (n, seed).
"""

import logging
from typing import Callable, Dict

import numpy as np

from errors import InvalidArgumentError
from imagecore.image import Image

logger = logging.getLogger(__name__)

MIN_PHANTOM_SIZE = 8


def _checkerboard(n: int, seed: int) -> np.ndarray:
    block = max(2, n // 8)
    idx = np.arange(n) // block
    return ((idx[:, None] + idx[None, :]) % 2).astype(np.float64)


def _ramp(n: int, seed: int) -> np.ndarray:
    idx = np.arange(n, dtype=np.float64)
    return (idx[:, None] + idx[None, :]) / (2.0 * (n - 1))


def _disks(n: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    rows, cols = np.mgrid[0:n, 0:n].astype(np.float64)
    img = np.full((n, n), 0.1)
    count = 4 + int(rng.integers(0, 5))
    for _ in range(count):
        cy, cx = rng.uniform(0.15 * n, 0.85 * n, size=2)
        radius = rng.uniform(0.05 * n, 0.2 * n)
        value = rng.uniform(0.3, 1.0)
        mask = (rows - cy) ** 2 + (cols - cx) ** 2 <= radius**2
        img[mask] = value
    return img


def _text_bars(n: int, seed: int) -> np.ndarray:
    # Three groups of three bars each, bar width shrinking per group
    rng = np.random.default_rng(seed)
    img = np.zeros((n, n))
    margin = max(1, n // 16)
    group_height = (n - 2 * margin) // 3
    x = margin
    for group in range(3):
        width = max(1, n // (8 * (group + 1)))
        level = 0.6 + 0.4 * rng.uniform()
        top = margin + group * group_height
        bottom = top + max(1, group_height - margin)
        for _ in range(3):
            if x + width > n - margin:
                break
            img[top:bottom, x : x + width] = level
            x += 2 * width
        x += width
    # Horizontal stroke across the lower third
    stroke = max(1, n // 32)
    row = n - margin - 2 * stroke
    img[row : row + stroke, margin : n - margin] = 1.0
    return img


PHANTOMS: Dict[str, Callable[[int, int], np.ndarray]] = {
    "checkerboard": _checkerboard,
    "ramp": _ramp,
    "disks": _disks,
    "text_bars": _text_bars,
}


def list_phantoms() -> list[str]:
    """Available phantom kinds"""
    return list(PHANTOMS.keys())


def make_phantom(kind: str, n: int, seed: int = 0) -> Image:
    """
    Generate a deterministic synthetic image

    Args:
        kind: One of checkerboard, ramp, disks, text_bars
        n: Side length, at least 8
        seed: Seed for randomized kinds

    Returns:
        Image with pixel values in [0, 1]
    """
    if n < MIN_PHANTOM_SIZE:
        raise InvalidArgumentError(f"Phantom size must be at least {MIN_PHANTOM_SIZE}, got {n}")
    if seed < 0:
        raise InvalidArgumentError(f"Seed must be non-negative, got {seed}")
    generator = PHANTOMS.get(kind)
    if generator is None:
        raise InvalidArgumentError(f"Unknown phantom kind: {kind} (available: {', '.join(PHANTOMS)})")

    array = np.clip(generator(n, seed), 0.0, 1.0)
    logger.debug(f"Generated {kind} phantom n={n} seed={seed}")
    return Image.from_array(array)
