"""
Grayscale image value object and the column-major vectorization convention
"""

from dataclasses import dataclass

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from errors import ShapeError


@dataclass(frozen=True, eq=False)
class Image:
    """N x N grayscale image stored as its column-major vectorization.

    Pixel values follow the [0, 1] convention but are not clamped; blurred or
    restored images may leave the range slightly.
    """

    n: int
    pixels: np.ndarray

    def __post_init__(self):
        if self.n < 1:
            raise ShapeError(f"Image side must be positive, got {self.n}")
        pixels = np.array(self.pixels, dtype=np.float64).reshape(-1)
        if pixels.size != self.n * self.n:
            raise ShapeError(f"Expected {self.n * self.n} pixels for n={self.n}, got {pixels.size}")
        if not np.all(np.isfinite(pixels)):
            raise ShapeError("Image pixels must be finite")
        pixels.setflags(write=False)
        object.__setattr__(self, "pixels", pixels)

    @classmethod
    def from_array(cls, array: np.ndarray) -> "Image":
        """Build from a square 2-D array indexed [row, column]"""
        array = np.asarray(array, dtype=np.float64)
        if array.ndim != 2 or array.shape[0] != array.shape[1]:
            raise ShapeError(f"Expected a square 2-D array, got shape {array.shape}")
        return cls(array.shape[0], array.ravel(order="F"))

    def as_array(self) -> np.ndarray:
        """Return a writable [row, column] copy"""
        return self.pixels.reshape((self.n, self.n), order="F").copy()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Image):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.pixels, other.pixels)

    def __hash__(self) -> int:
        return hash((self.n, self.pixels.tobytes()))


def vectorize(img: Image) -> np.ndarray:
    """Column-major vector of length N^2 (columns of the image stacked)"""
    return img.pixels.copy()


def devectorize(vec: np.ndarray, n: int) -> Image:
    """Inverse of vectorize"""
    vec = np.asarray(vec, dtype=np.float64)
    if vec.ndim != 1 or vec.size != n * n:
        raise ShapeError(f"Vector of shape {vec.shape} cannot form a {n}x{n} image")
    return Image(n, vec)


class DegradationSpec(BaseModel):
    """Blur and noise parameters of the forward model f = K u + e"""

    model_config = ConfigDict(frozen=True)

    kernel_size: int = Field(default=17, ge=1, description="Odd side length of the Gaussian kernel")
    kernel_sigma: float = Field(default=7.0, gt=0, description="Standard deviation of the Gaussian kernel")
    noise_sigma: float = Field(default=0.0, ge=0, description="Standard deviation of additive Gaussian noise")
    rng_seed: int = Field(default=0, ge=0, description="Seed for the noise generator")

    @field_validator("kernel_size")
    @classmethod
    def _odd_kernel(cls, value: int) -> int:
        if value % 2 == 0:
            raise ValueError(f"kernel_size must be odd, got {value}")
        return value
