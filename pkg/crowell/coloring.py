"""
Colorings of presentations by finite modules, and coloring fingerprints.

A coloring is a Λ_mu-linear map from the presented module to a finite
target, i.e. a vector per generator killing every relation once each t_i is
replaced by its action matrix. Orbit constraints are judged on the orbit
image (the ▷/▷⁻¹ closure of the arc values), not on arc values alone.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Set, Tuple

from .diagram import Diagram, delete_component
from .errors import DimensionError
from .laurent import LaurentPoly
from .linalg import SolutionSpace
from .presentation import Presentation, build_presentation
from .quandle import GradedElement, closure, orbit_summary
from .targets import FiniteModuleSpec, Matrix, Vector, apply_matrix, default_battery

logger = logging.getLogger(__name__)

CONSTRAINTS = ("free", "constant", "zero")


@dataclass(frozen=True)
class Coloring:
    """Values of the current generators in the target module."""

    assignment: Dict[str, Vector]


class ColoringSpace:
    """All colorings of one presentation by one target."""

    def __init__(self, p: Presentation, spec: FiniteModuleSpec):
        if p.mu != spec.mu:
            raise DimensionError(
                f"Presentation has {p.mu} variables but the target acts with {spec.mu} matrices"
            )
        self.presentation = p
        self.spec = spec
        self._cache: Dict[LaurentPoly, Matrix] = {}
        k = spec.rank
        matrix = []
        for row in p.rows:
            blocks = [self.evaluate(entry) for entry in row]
            for a in range(k):
                matrix.append([blocks[g][a][b] for g in range(len(p.generators)) for b in range(k)])
        self.space = SolutionSpace(matrix, spec.modulus, len(p.generators) * k)
        position = {g: i for i, g in enumerate(p.generators)}
        self._seed_maps: List[Tuple[int, List[Tuple[int, Matrix]]]] = [
            (img.component, [(position[g], self.evaluate(c)) for g, c in img.image.items()])
            for img in p.arcs.values()
        ]
        self._arc_names = list(p.arcs)
        self._components = sorted({img.component for img in p.arcs.values()} | set(range(1, p.mu + 1)))

    def evaluate(self, poly: LaurentPoly) -> Matrix:
        if poly not in self._cache:
            image = self.spec.ring_map().substitute(poly)
            self._cache[poly] = tuple(tuple(int(v) for v in row) for row in image.tolist())
        return self._cache[poly]

    def count(self) -> int:
        return self.space.count()

    def _split(self, flat: Sequence[int]) -> List[Vector]:
        k = self.spec.rank
        return [tuple(flat[i * k:(i + 1) * k]) for i in range(len(self.presentation.generators))]

    def __iter__(self) -> Iterator[Coloring]:
        gens = self.presentation.generators
        for flat in self.space:
            yield Coloring(dict(zip(gens, self._split(flat))))

    def contains(self, coloring: Coloring) -> bool:
        flat = [v for g in self.presentation.generators for v in coloring.assignment[g]]
        return self.space.contains(flat)

    def seeds(self, coloring: Coloring) -> List[GradedElement]:
        """Graded values of the original arcs under a coloring."""
        n, k = self.spec.modulus, self.spec.rank
        values = [coloring.assignment[g] for g in self.presentation.generators]
        result = []
        for component, terms in self._seed_maps:
            total = [0] * k
            for index, block in terms:
                for a, v in enumerate(apply_matrix(block, values[index], n)):
                    total[a] += v
            result.append(GradedElement(component, tuple(v % n for v in total)))
        return result

    def arc_values(self, coloring: Coloring) -> Dict[str, Vector]:
        return {a: s.value for a, s in zip(self._arc_names, self.seeds(coloring))}

    def summary(self, coloring: Coloring) -> Dict[int, tuple]:
        return orbit_summary(self.seeds(coloring), self.spec, self._components)


def solve_colorings(p: Presentation, spec: FiniteModuleSpec) -> ColoringSpace:
    """
    Solve the coloring system of p over spec.

    Raises:
        DimensionError: If p.mu differs from the number of action matrices
    """
    return ColoringSpace(p, spec)


def orbit_image(p: Presentation, c: Coloring, spec: FiniteModuleSpec, i: int) -> Set[Vector]:
    """Values of the closure of all arc values that carry grading i."""
    space = ColoringSpace(p, spec)
    return {e.value for e in closure(space.seeds(c), spec) if e.component == i}


def satisfies(summary: Mapping[int, tuple], constraint: Mapping[int, str]) -> bool:
    for component, kind in constraint.items():
        constant, zero = summary.get(component, (False, False))
        if kind == "constant" and not constant:
            return False
        if kind == "zero" and not zero:
            return False
    return True


def _check_constraint(constraint: Mapping[int, str], mu: int) -> Dict[int, str]:
    checked = {}
    for component, kind in constraint.items():
        if kind not in CONSTRAINTS:
            raise ValueError(f"Unknown constraint {kind!r}; expected one of {', '.join(CONSTRAINTS)}")
        if not 1 <= int(component) <= mu:
            raise DimensionError(f"Constraint on component {component} outside 1..{mu}")
        if kind != "free":
            checked[int(component)] = kind
    return checked


def count_constrained(p: Presentation, spec: FiniteModuleSpec, constraint: Mapping[int, str]) -> int:
    """
    Number of colorings whose orbit images meet the constraint.

    Args:
        p: Presentation
        spec: Target module
        constraint: Component → 'free', 'constant' or 'zero'; unnamed
            components are free

    Returns:
        Exact count
    """
    active = _check_constraint(constraint, p.mu)
    space = ColoringSpace(p, spec)
    if not active:
        return space.count()
    return sum(1 for c in space if satisfies(space.summary(c), active))


def count_nonconstant(
    p: Presentation,
    spec: FiniteModuleSpec,
    component: int,
    others: Optional[Mapping[int, str]] = None,
) -> int:
    """Colorings meeting ``others`` whose orbit ``component`` is not constant."""
    others = dict(others or {})
    others.pop(component, None)
    free = count_constrained(p, spec, {**others, component: "free"})
    constant = count_constrained(p, spec, {**others, component: "constant"})
    return free - constant


@dataclass(frozen=True)
class FingerprintEntry:
    spec_id: str
    unconstrained: int
    constant: Tuple[int, ...]
    zero: Tuple[int, ...]

    def to_data(self) -> Dict:
        return {
            "spec": self.spec_id,
            "unconstrained": self.unconstrained,
            "constant": list(self.constant),
            "zero": list(self.zero),
        }


@dataclass(frozen=True)
class Fingerprint:
    entries: Tuple[FingerprintEntry, ...]

    def entry(self, spec_id: str) -> FingerprintEntry:
        for item in self.entries:
            if item.spec_id == spec_id:
                return item
        raise KeyError(spec_id)

    def unconstrained(self) -> Tuple[int, ...]:
        return tuple(item.unconstrained for item in self.entries)

    def to_data(self) -> List[Dict]:
        return [item.to_data() for item in self.entries]


def profile(p: Presentation, spec: FiniteModuleSpec) -> FingerprintEntry:
    """Unconstrained and per-component constant / zero counts for one target."""
    space = ColoringSpace(p, spec)
    constant = [0] * p.mu
    zero = [0] * p.mu
    total = 0
    for coloring in space:
        total += 1
        for component, (is_constant, is_zero) in space.summary(coloring).items():
            if 1 <= component <= p.mu:
                constant[component - 1] += is_constant
                zero[component - 1] += is_zero
    logger.debug("%s: %d colorings, constant %s, zero %s", spec.spec_id, total, constant, zero)
    return FingerprintEntry(spec.spec_id, total, tuple(constant), tuple(zero))


def _profile_job(job: Tuple[Presentation, FiniteModuleSpec]) -> FingerprintEntry:
    return profile(*job)


def fingerprint(
    p: Presentation,
    battery: Optional[Sequence[FiniteModuleSpec]] = None,
    jobs: int = 1,
) -> Fingerprint:
    """
    Constrained coloring counts over a battery of targets, sorted by spec.

    Args:
        p: Presentation
        battery: Targets (default_battery(p.mu) when omitted)
        jobs: Worker processes; the result does not depend on it

    Returns:
        Fingerprint
    """
    specs = sorted(battery if battery is not None else default_battery(p.mu), key=lambda s: s.sort_key)
    work = [(p, spec) for spec in specs]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            entries = list(pool.map(_profile_job, work))
    else:
        entries = [_profile_job(job) for job in work]
    return Fingerprint(tuple(entries))


def swap_profile(
    p: Presentation, p_swapped: Presentation, spec: FiniteModuleSpec
) -> Tuple[FingerprintEntry, FingerprintEntry]:
    """Counts of a link and of its component-relabeled copy under the same target."""
    return profile(p, spec), profile(p_swapped, spec)


def sublink_fingerprints(d: Diagram, jobs: int = 1) -> Dict[int, Fingerprint]:
    """Fingerprint of every sublink L - K_j."""
    return {j: fingerprint(build_presentation(delete_component(d, j)), jobs=jobs) for j in range(1, d.mu + 1)}
