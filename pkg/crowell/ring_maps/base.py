"""
Base interface for ring maps out of the Laurent ring.

A ring map is fixed by the image of each variable t_i. Every image must be
invertible in the target, so negative exponents can be evaluated. Subclasses
supply the target's arithmetic; substitution itself is shared.
"""

from abc import ABC, abstractmethod
from typing import Any, Dict, Sequence, Tuple

from ..errors import DimensionError
from ..laurent import LaurentPoly


class RingMap(ABC):
    """
    Abstract base class for homomorphisms Λ_mu → target.

    Each subclass handles:
    1. Target arithmetic (zero, one, add, multiply, scale)
    2. Inverting the images of the variables
    3. JSON serialization of its parameters
    """

    def __init__(self, images: Sequence[Any]):
        """
        Initialize the map with one image per variable.

        Args:
            images: Image of t_1, ..., t_mu in the target

        Raises:
            SpecError: If some image is not invertible in the target
        """
        self._images: Tuple[Any, ...] = tuple(images)
        self._inverses: Tuple[Any, ...] = tuple(self.invert(image) for image in self._images)
        self._powers: Dict[Tuple[int, int], Any] = {}

    @property
    @abstractmethod
    def kind(self) -> str:
        """Registry identifier ('laurent', 'residue', 'matrix')."""
        pass

    @property
    def source_mu(self) -> int:
        """Number of variables of the source ring."""
        return len(self._images)

    @property
    def images(self) -> Tuple[Any, ...]:
        return self._images

    @abstractmethod
    def zero(self) -> Any:
        pass

    @abstractmethod
    def one(self) -> Any:
        pass

    @abstractmethod
    def add(self, a: Any, b: Any) -> Any:
        pass

    @abstractmethod
    def multiply(self, a: Any, b: Any) -> Any:
        pass

    @abstractmethod
    def scale(self, a: Any, coeff: int) -> Any:
        pass

    @abstractmethod
    def invert(self, a: Any) -> Any:
        """
        Inverse of a target element.

        Raises:
            SpecError: If the element is not invertible
        """
        pass

    @abstractmethod
    def to_json(self) -> Dict[str, Any]:
        pass

    def power(self, index: int, exponent: int) -> Any:
        """Image of t_{index+1}^exponent, cached."""
        key = (index, exponent)
        if key not in self._powers:
            base = self._images[index] if exponent > 0 else self._inverses[index]
            value = self.one()
            for _ in range(abs(exponent)):
                value = self.multiply(value, base)
            self._powers[key] = value
        return self._powers[key]

    def substitute(self, poly: LaurentPoly) -> Any:
        """
        Evaluate a polynomial under this map.

        Args:
            poly: Polynomial in source_mu variables

        Returns:
            Ring-homomorphic image in the target

        Raises:
            DimensionError: If the variable counts differ
        """
        if poly.mu != self.source_mu:
            raise DimensionError(
                f"Ring map expects {self.source_mu} variables, polynomial has {poly.mu}"
            )
        result = self.zero()
        for monomial, coeff in poly.terms:
            value = self.one()
            for index, exponent in enumerate(monomial):
                if exponent:
                    value = self.multiply(value, self.power(index, exponent))
            result = self.add(result, self.scale(value, coeff))
        return result
