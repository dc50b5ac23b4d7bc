"""Ring maps into Z/n."""

import math
from typing import Any, Dict, Sequence

from ..errors import SpecError
from .base import RingMap


class ResidueRingMap(RingMap):
    """Map Λ_mu → Z/n sending each t_i to a unit residue."""

    def __init__(self, modulus: int, images: Sequence[int]):
        if modulus < 2:
            raise SpecError(f"Modulus must be at least 2, got {modulus}")
        self.modulus = modulus
        super().__init__([int(image) % modulus for image in images])

    @property
    def kind(self) -> str:
        return "residue"

    @classmethod
    def chi(cls) -> "ResidueRingMap":
        """t1 ↦ −1, t2 ↦ 1 over Z/3."""
        return cls(3, [-1, 1])

    def zero(self) -> int:
        return 0

    def one(self) -> int:
        return 1 % self.modulus

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.modulus

    def multiply(self, a: int, b: int) -> int:
        return (a * b) % self.modulus

    def scale(self, a: int, coeff: int) -> int:
        return (a * coeff) % self.modulus

    def invert(self, a: int) -> int:
        if math.gcd(a, self.modulus) != 1:
            raise SpecError(f"{a} is not a unit modulo {self.modulus}")
        return pow(a, -1, self.modulus)

    def to_json(self) -> Dict[str, Any]:
        return {"kind": self.kind, "modulus": self.modulus, "images": list(self.images)}
