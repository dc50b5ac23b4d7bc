"""
Finite target modules for colorings.

A FiniteModuleSpec is (Z/n)^k with each t_i acting by an invertible k×k
matrix. The matrices must commute, otherwise the action does not come from
Λ_mu. Specs load from JSON ``{modulus, rank, action}``; a battery file is a
JSON list of such objects.
"""

import itertools
import json
import math
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, List, Mapping, Sequence, Tuple, Union

import numpy as np

from .errors import ParseError, SpecError
from .ring_maps import MatrixRingMap

Matrix = Tuple[Tuple[int, ...], ...]
Vector = Tuple[int, ...]

DEFAULT_BATTERY_MODULI = (2, 3, 4, 5, 7)


def apply_matrix(matrix: Matrix, vector: Sequence[int], n: int) -> Vector:
    product = np.asarray(matrix, dtype=np.int64) @ np.asarray(vector, dtype=np.int64)
    return tuple(int(v) for v in product % n)


@dataclass(frozen=True)
class FiniteModuleSpec:
    """(Z/n)^rank with t_i acting by ``action[i-1]``."""

    modulus: int
    rank: int
    action: Tuple[Matrix, ...]
    inverse: Tuple[Matrix, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        n, k = self.modulus, self.rank
        if n < 2:
            raise SpecError(f"Modulus must be at least 2, got {n}")
        if k < 1:
            raise SpecError(f"Rank must be at least 1, got {k}")
        normalized = []
        for index, matrix in enumerate(self.action, start=1):
            rows = tuple(tuple(int(v) % n for v in row) for row in matrix)
            if len(rows) != k or any(len(row) != k for row in rows):
                raise SpecError(f"Action of t{index} is not a {k}x{k} matrix")
            normalized.append(rows)
        object.__setattr__(self, "action", tuple(normalized))
        inverses = []
        if normalized:
            ring_map = _ring_map(self)
            images = ring_map.images
            for index in range(len(images)):
                inv = ring_map.power(index, -1)
                inverses.append(tuple(tuple(int(v) for v in row) for row in inv.tolist()))
            for a, b in itertools.combinations(images, 2):
                if not np.array_equal(ring_map.multiply(a, b), ring_map.multiply(b, a)):
                    raise SpecError("Action matrices must commute modulo n")
        object.__setattr__(self, "inverse", tuple(inverses))

    @property
    def mu(self) -> int:
        return len(self.action)

    @property
    def spec_id(self) -> str:
        parts = [f"n={self.modulus}", f"k={self.rank}"]
        for index, matrix in enumerate(self.action, start=1):
            if self.rank == 1:
                parts.append(f"t{index}={matrix[0][0]}")
            else:
                rows = ",".join("[" + ",".join(map(str, row)) + "]" for row in matrix)
                parts.append(f"t{index}=[{rows}]")
        return " ".join(parts)

    @property
    def sort_key(self) -> Tuple:
        return (self.modulus, self.rank, self.action)

    def ring_map(self) -> MatrixRingMap:
        return _ring_map(self)

    def act(self, i: int, vector: Sequence[int]) -> Vector:
        return apply_matrix(self.action[i - 1], vector, self.modulus)

    def act_inverse(self, i: int, vector: Sequence[int]) -> Vector:
        return apply_matrix(self.inverse[i - 1], vector, self.modulus)

    def zero(self) -> Vector:
        return (0,) * self.rank

    def swapped(self, sigma: Union[Sequence[int], Mapping[int, int]]) -> "FiniteModuleSpec":
        """Spec matching a diagram whose component i was relabeled sigma(i)."""
        if isinstance(sigma, Mapping):
            table = {int(a): int(b) for a, b in sigma.items()}
        else:
            table = {i: int(v) for i, v in enumerate(sigma, start=1)}
        action: List[Matrix] = [()] * self.mu
        for source, target in table.items():
            action[target - 1] = self.action[source - 1]
        return FiniteModuleSpec(self.modulus, self.rank, tuple(action))


@lru_cache(maxsize=256)
def _ring_map(spec: FiniteModuleSpec) -> MatrixRingMap:
    return MatrixRingMap(spec.modulus, [list(map(list, m)) for m in spec.action])


def spec_from_data(data: Mapping[str, Any]) -> FiniteModuleSpec:
    try:
        return FiniteModuleSpec(int(data["modulus"]), int(data["rank"]), tuple(data["action"]))
    except (KeyError, TypeError) as e:
        raise SpecError(f"Malformed spec document: {e}") from e


def spec_to_data(spec: FiniteModuleSpec) -> Dict[str, Any]:
    return {
        "modulus": spec.modulus,
        "rank": spec.rank,
        "action": [[list(row) for row in m] for m in spec.action],
    }


def _read_json(path: Union[str, Path]) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise OSError(f"Cannot read {path}: {e}") from e
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path} is not valid JSON: {e}") from e


def load_spec(path: Union[str, Path]) -> FiniteModuleSpec:
    return spec_from_data(_read_json(path))


def load_battery(path: Union[str, Path]) -> List[FiniteModuleSpec]:
    data = _read_json(path)
    if not isinstance(data, list):
        raise SpecError(f"Battery file {path} must hold a JSON list of specs")
    return sorted((spec_from_data(entry) for entry in data), key=lambda s: s.sort_key)


def default_battery(mu: int) -> List[FiniteModuleSpec]:
    """
    Deterministic battery of targets for mu-variable presentations.

    Every rank-1 spec over n in (2, 3, 4, 5, 7) with each t_i sent to a unit,
    plus the rank-2 specs over Z/3 with t1 acting by [[0,1],[-1,1]] and every
    other t_i acting by I or -I.
    """
    if mu < 1:
        return []
    battery = []
    for n in DEFAULT_BATTERY_MODULI:
        units = [u for u in range(1, n) if math.gcd(u, n) == 1]
        for images in itertools.product(units, repeat=mu):
            battery.append(FiniteModuleSpec(n, 1, tuple(((u,),) for u in images)))
    rotation = ((0, 1), (2, 1))
    identity = ((1, 0), (0, 1))
    negated = ((2, 0), (0, 2))
    for signs in itertools.product((identity, negated), repeat=mu - 1):
        battery.append(FiniteModuleSpec(3, 2, (rotation,) + signs))
    return sorted(battery, key=lambda s: s.sort_key)
