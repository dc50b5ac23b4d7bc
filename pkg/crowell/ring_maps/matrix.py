"""Ring maps into k×k matrices over Z/n (numpy int64, reduced after every product)."""

from typing import Any, Dict, Sequence

import numpy as np
from sympy import Matrix

from ..errors import SpecError
from .base import RingMap


class MatrixRingMap(RingMap):
    """Map Λ_mu → M_k(Z/n) sending each t_i to an invertible matrix."""

    def __init__(self, modulus: int, images: Sequence[Any]):
        if modulus < 2:
            raise SpecError(f"Modulus must be at least 2, got {modulus}")
        self.modulus = modulus
        arrays = [np.asarray(image, dtype=np.int64) % modulus for image in images]
        if not arrays:
            raise SpecError("Matrix ring map needs at least one image to fix the rank")
        self.rank = arrays[0].shape[0]
        for array in arrays:
            if array.shape != (self.rank, self.rank):
                raise SpecError(f"Action matrix has shape {array.shape}, expected {self.rank}x{self.rank}")
        super().__init__(arrays)

    @property
    def kind(self) -> str:
        return "matrix"

    def zero(self) -> np.ndarray:
        return np.zeros((self.rank, self.rank), dtype=np.int64)

    def one(self) -> np.ndarray:
        return np.eye(self.rank, dtype=np.int64) % self.modulus

    def add(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return (a + b) % self.modulus

    def multiply(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return (a @ b) % self.modulus

    def scale(self, a: np.ndarray, coeff: int) -> np.ndarray:
        return (a * (coeff % self.modulus)) % self.modulus

    def invert(self, a: np.ndarray) -> np.ndarray:
        matrix = Matrix(a.tolist())
        try:
            inverse = matrix.inv_mod(self.modulus)
        except ValueError as e:
            raise SpecError(
                f"Matrix {a.tolist()} has determinant {matrix.det() % self.modulus}, not a unit modulo {self.modulus}"
            ) from e
        return np.array(inverse.tolist(), dtype=np.int64) % self.modulus

    def to_json(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "modulus": self.modulus,
            "images": [image.tolist() for image in self.images],
        }
