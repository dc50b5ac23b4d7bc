"""
Quandle operations on φ-graded elements of a finite module.

An element graded by component i has Crowell map value t_i - 1, so in a
finite target

    x ▷ y   = A_{y}·x - (A_{x} - I)·y
    x ▷⁻¹ y = A_{y}⁻¹·(x + (A_{x} - I)·y)

where A_{i} is the action of t_i. The grading of the result is that of x.
"""

import sys
from dataclasses import dataclass
from typing import Dict, Iterable, List, Set

from .targets import FiniteModuleSpec, Vector


@dataclass(frozen=True)
class GradedElement:
    """A module element tagged with the component that fixes its φ-value."""

    component: int
    value: Vector


def op_right(x: GradedElement, y: GradedElement, spec: FiniteModuleSpec) -> GradedElement:
    n = spec.modulus
    moved = spec.act(y.component, x.value)
    pulled = spec.act(x.component, y.value)
    value = tuple((m - p + v) % n for m, p, v in zip(moved, pulled, y.value))
    return GradedElement(x.component, value)


def op_right_inv(x: GradedElement, y: GradedElement, spec: FiniteModuleSpec) -> GradedElement:
    n = spec.modulus
    pulled = spec.act(x.component, y.value)
    inner = tuple((a + p - v) % n for a, p, v in zip(x.value, pulled, y.value))
    return GradedElement(x.component, spec.act_inverse(y.component, inner))


OPERATIONS = (op_right, op_right_inv)


def element_lengths(
    seeds: Iterable[GradedElement], spec: FiniteModuleSpec, maxlen: int
) -> Dict[GradedElement, int]:
    """
    Minimum word length of every element reachable from the seeds.

    Words are x ▷^±1 s1 ▷^±1 s2 ... with x and every s_i a seed; a word with
    m operations has length m + 1. Right operands drawn from the seeds reach
    the whole subquandle the seeds generate.

    Args:
        seeds: Length-1 elements
        spec: Target module
        maxlen: Largest length to explore (at least 1)

    Returns:
        Map from reached element to its length
    """
    if maxlen < 1:
        raise ValueError(f"maxlen must be at least 1, got {maxlen}")
    operands = list(dict.fromkeys(seeds))
    lengths = {s: 1 for s in operands}
    frontier = list(operands)
    length = 1
    while frontier and length < maxlen:
        length += 1
        fresh = []
        for x in frontier:
            for s in operands:
                for op in OPERATIONS:
                    z = op(x, s, spec)
                    if z not in lengths:
                        lengths[z] = length
                        fresh.append(z)
        frontier = fresh
    return lengths


def closure(seeds: Iterable[GradedElement], spec: FiniteModuleSpec) -> Set[GradedElement]:
    """Smallest ▷/▷⁻¹-closed set containing the seeds."""
    return set(element_lengths(seeds, spec, sys.maxsize))


def orbit_summary(
    seeds: Iterable[GradedElement], spec: FiniteModuleSpec, components: Iterable[int]
) -> Dict[int, tuple]:
    """
    For each component: (orbit image is a single value, orbit image is {0}).

    The closure stops early once every component has shown two values.
    """
    values: Dict[int, Set[Vector]] = {c: set() for c in components}
    operands = list(dict.fromkeys(seeds))
    reached = set(operands)
    for s in operands:
        values.setdefault(s.component, set()).add(s.value)

    def settled() -> bool:
        return all(len(v) >= 2 for v in values.values())

    frontier: List[GradedElement] = list(operands)
    while frontier and not settled():
        fresh = []
        for x in frontier:
            for s in operands:
                for op in OPERATIONS:
                    z = op(x, s, spec)
                    if z not in reached:
                        reached.add(z)
                        values[z.component].add(z.value)
                        fresh.append(z)
        frontier = fresh
    zero = spec.zero()
    return {c: (len(v) == 1, v == {zero}) for c, v in values.items()}
