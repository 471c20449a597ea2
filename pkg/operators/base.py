"""
Base linear operator interface
"""

from abc import ABC, abstractmethod

import numpy as np

from errors import ShapeError


class LinearOperator(ABC):
    """Matrix-free linear map R^cols -> R^rows with an explicit adjoint"""

    @property
    @abstractmethod
    def shape(self) -> tuple[int, int]:
        """(rows, cols) of the equivalent matrix"""
        pass

    @abstractmethod
    def _apply(self, x: np.ndarray) -> np.ndarray:
        pass

    @abstractmethod
    def _adjoint(self, y: np.ndarray) -> np.ndarray:
        pass

    def apply(self, x: np.ndarray) -> np.ndarray:
        """Forward application; input length must equal shape[1]"""
        return self._apply(self._check(x, self.shape[1], "input"))

    def adjoint(self, y: np.ndarray) -> np.ndarray:
        """Adjoint application; input length must equal shape[0]"""
        return self._adjoint(self._check(y, self.shape[0], "adjoint input"))

    def __call__(self, x: np.ndarray) -> np.ndarray:
        return self.apply(x)

    def to_dense(self) -> np.ndarray:
        """Materialize the matrix column by column (small sizes only, used as a test oracle)"""
        rows, cols = self.shape
        dense = np.empty((rows, cols))
        basis = np.zeros(cols)
        for j in range(cols):
            basis[j] = 1.0
            dense[:, j] = self.apply(basis)
            basis[j] = 0.0
        return dense

    def _check(self, x: np.ndarray, expected: int, label: str) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        if x.ndim != 1 or x.size != expected:
            raise ShapeError(f"{type(self).__name__} {label} must have length {expected}, got shape {x.shape}")
        return x
