"""
Forward model f = K~ u + e
"""

import logging
from typing import Optional

import numpy as np

from errors import ShapeError
from imagecore.image import DegradationSpec, Image
from operators.blur import BlurOperator

logger = logging.getLogger(__name__)


def degrade(img: Image, spec: DegradationSpec, blur: Optional[BlurOperator] = None) -> Image:
    """
    Blur an image and optionally add Gaussian noise

    Args:
        img: Clean image
        spec: Kernel and noise parameters
        blur: Prebuilt blur for the same n; built from spec when omitted

    Returns:
        Degraded image (values may leave [0, 1] when noise is added)
    """
    if blur is None:
        blur = BlurOperator.from_gaussian(img.n, spec.kernel_size, spec.kernel_sigma)
    if blur.n != img.n:
        raise ShapeError(f"Blur built for n={blur.n} cannot act on a {img.n}x{img.n} image")

    blurred = blur.apply(img.pixels)
    if spec.noise_sigma > 0:
        rng = np.random.default_rng(spec.rng_seed)
        blurred = blurred + spec.noise_sigma * rng.standard_normal(img.n * img.n)
        logger.debug(f"Added Gaussian noise sigma={spec.noise_sigma} seed={spec.rng_seed}")
    return Image(img.n, blurred)
