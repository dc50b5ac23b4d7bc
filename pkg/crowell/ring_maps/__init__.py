"""
Ring maps out of the Laurent ring Λ_mu.

Supported targets:
- laurent: another Laurent ring (projection π, one-variable map, augmentation ε)
- residue: Z/n with unit images (the GF(3) map χ)
- matrix: k×k matrices over Z/n (finite module actions)
"""

from typing import Any, Mapping

from ..errors import SpecError
from ..laurent import parse_poly
from .base import RingMap
from .laurent import LaurentRingMap
from .matrix import MatrixRingMap
from .residue import ResidueRingMap

# Registry of available ring map kinds
RING_MAPS = {
    'laurent': LaurentRingMap,
    'residue': ResidueRingMap,
    'matrix': MatrixRingMap,
}


def ring_map_from_json(data: Mapping[str, Any]) -> RingMap:
    """
    Rebuild a ring map from its JSON form.

    Args:
        data: Object with ``kind`` plus ``images`` and either ``modulus``
            or ``target_mu``

    Returns:
        RingMap instance

    Raises:
        SpecError: If the kind is unknown or fields are missing
    """
    kind = data.get("kind")
    if kind not in RING_MAPS:
        raise SpecError(f"Unknown ring map kind: {kind!r}")
    try:
        if kind == "laurent":
            target_mu = int(data["target_mu"])
            images = [parse_poly(text, target_mu) for text in data["images"]]
            return LaurentRingMap(images, target_mu)
        return RING_MAPS[kind](int(data["modulus"]), data["images"])
    except KeyError as e:
        raise SpecError(f"Ring map of kind {kind!r} is missing field {e}") from e


__all__ = [
    'RingMap',
    'LaurentRingMap',
    'ResidueRingMap',
    'MatrixRingMap',
    'RING_MAPS',
    'ring_map_from_json',
]
