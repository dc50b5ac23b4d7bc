"""Ring maps into another Laurent ring: projections, one-variable reduction, augmentation."""

from typing import Any, Dict, Sequence

from ..errors import DimensionError, SpecError
from ..laurent import LaurentPoly, format_poly
from .base import RingMap


class LaurentRingMap(RingMap):
    """Map Λ_mu → Λ_nu given by a Laurent polynomial image per variable."""

    def __init__(self, images: Sequence[LaurentPoly], target_mu: int):
        self.target_mu = target_mu
        for image in images:
            if image.mu != target_mu:
                raise DimensionError(
                    f"Image {image} has {image.mu} variables, expected {target_mu}"
                )
        super().__init__(images)

    @property
    def kind(self) -> str:
        return "laurent"

    @classmethod
    def projection(cls, mu: int, j: int) -> "LaurentRingMap":
        """
        The map sending t_j ↦ 1 and renumbering the remaining variables.

        Args:
            mu: Source variable count (at least 1)
            j: Index of the variable sent to 1
        """
        if not 1 <= j <= mu:
            raise DimensionError(f"Cannot drop variable t{j} when mu = {mu}")
        images = []
        for i in range(1, mu + 1):
            if i < j:
                images.append(LaurentPoly.variable(i, mu - 1))
            elif i == j:
                images.append(LaurentPoly.one(mu - 1))
            else:
                images.append(LaurentPoly.variable(i - 1, mu - 1))
        return cls(images, mu - 1)

    @classmethod
    def one_variable(cls, mu: int) -> "LaurentRingMap":
        """Every t_i ↦ t."""
        return cls([LaurentPoly.variable(1, 1)] * mu, 1)

    @classmethod
    def augmentation(cls, mu: int) -> "LaurentRingMap":
        """ε: every t_i ↦ 1, landing in Λ_0 = Z."""
        return cls([LaurentPoly.one(0)] * mu, 0)

    def zero(self) -> LaurentPoly:
        return LaurentPoly.zero(self.target_mu)

    def one(self) -> LaurentPoly:
        return LaurentPoly.one(self.target_mu)

    def add(self, a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
        return a + b

    def multiply(self, a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
        return a * b

    def scale(self, a: LaurentPoly, coeff: int) -> LaurentPoly:
        return a * coeff

    def invert(self, a: LaurentPoly) -> LaurentPoly:
        if not a.is_unit():
            raise SpecError(f"Image {a} is not a unit of the Laurent ring")
        return a.inverse()

    def to_json(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "target_mu": self.target_mu,
            "images": [format_poly(image) for image in self.images],
        }
