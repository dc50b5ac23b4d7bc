"""
Combinatorial link diagrams.

A diagram lists its arcs with component labels and, for every crossing, the
over-arc and the two under-arcs. The under-arcs are named left and right as
seen when looking along the over-arc. Trivial crossings are what remains of
crossings whose over-strand was removed by ``delete_component``; they only
identify their two under-arcs.
"""

import json
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import DiagramError, ParseError

FIXTURES_DIR = Path(__file__).parent / "fixtures"


@dataclass(frozen=True)
class Arc:
    """One arc of the diagram and the component it belongs to."""

    id: str
    component: int


@dataclass(frozen=True)
class Crossing:
    """
    A crossing with its over-arc and the under-arcs on either side.

    ``over`` is None exactly when the crossing is trivial.
    """

    id: str
    over: Optional[str]
    left: str
    right: str
    under_in: Optional[str] = None   # 'left' or 'right'
    trivial: bool = False


@dataclass(frozen=True)
class Diagram:
    """Oriented link diagram with mu components."""

    mu: int
    arcs: Tuple[Arc, ...]
    crossings: Tuple[Crossing, ...]

    def __post_init__(self) -> None:
        _validate(self)

    def component_of(self, arc_id: str) -> int:
        return self._components()[arc_id]

    def component_arcs(self, i: int) -> List[str]:
        return [arc.id for arc in self.arcs if arc.component == i]

    def _components(self) -> Dict[str, int]:
        return {arc.id: arc.component for arc in self.arcs}


def _validate(d: Diagram) -> None:
    if d.mu < 1:
        raise DiagramError(f"A diagram needs at least one component, got mu = {d.mu}")
    components: Dict[str, int] = {}
    for arc in d.arcs:
        if arc.id in components:
            raise DiagramError(f"Duplicate arc id {arc.id!r}")
        if not 1 <= arc.component <= d.mu:
            raise DiagramError(
                f"Arc {arc.id!r} has component {arc.component}, outside 1..{d.mu}"
            )
        components[arc.id] = arc.component
    for i in range(1, d.mu + 1):
        if i not in components.values():
            raise DiagramError(f"Component {i} has no arcs")
    seen = set()
    for crossing in d.crossings:
        if crossing.id in seen:
            raise DiagramError(f"Duplicate crossing id {crossing.id!r}")
        seen.add(crossing.id)
        names = [crossing.left, crossing.right]
        if crossing.trivial:
            if crossing.over is not None:
                raise DiagramError(f"Trivial crossing {crossing.id!r} must not name an over-arc")
        else:
            if crossing.over is None:
                raise DiagramError(f"Crossing {crossing.id!r} has no over-arc")
            names.append(crossing.over)
        for name in names:
            if name not in components:
                raise DiagramError(f"Crossing {crossing.id!r} references unknown arc {name!r}")
        if crossing.left == crossing.right:
            raise DiagramError(f"Crossing {crossing.id!r} has left = right = {crossing.left!r}")
        if components[crossing.left] != components[crossing.right]:
            raise DiagramError(
                f"Crossing {crossing.id!r}: under-arcs {crossing.left!r} and {crossing.right!r} "
                f"lie on different components"
            )
        if crossing.under_in not in (None, "left", "right"):
            raise DiagramError(
                f"Crossing {crossing.id!r}: under_in must be 'left' or 'right', got {crossing.under_in!r}"
            )


def diagram_from_data(data: Mapping) -> Diagram:
    """
    Build a validated Diagram from decoded JSON.

    Raises:
        DiagramError: On missing fields or invariant violations
    """
    try:
        mu = int(data["mu"])
        arcs = tuple(Arc(str(a["id"]), int(a["component"])) for a in data["arcs"])
        crossings = []
        for c in data.get("crossings", []):
            trivial = bool(c.get("trivial", False))
            over = c.get("over")
            crossings.append(
                Crossing(
                    id=str(c["id"]),
                    over=None if over is None else str(over),
                    left=str(c["left"]),
                    right=str(c["right"]),
                    under_in=c.get("under_in"),
                    trivial=trivial,
                )
            )
    except (KeyError, TypeError, ValueError) as e:
        raise DiagramError(f"Malformed diagram document: {e}") from e
    return Diagram(mu, arcs, tuple(crossings))


def parse_diagram(text: str) -> Diagram:
    """
    Parse and validate a diagram file.

    Args:
        text: UTF-8 JSON document with ``mu``, ``arcs`` and ``crossings``

    Returns:
        Validated Diagram

    Raises:
        ParseError: If the text is not JSON
        DiagramError: If the diagram violates an invariant
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"Diagram file is not valid JSON: {e}") from e
    if not isinstance(data, dict):
        raise ParseError("Diagram file must hold a JSON object")
    return diagram_from_data(data)


def diagram_to_data(d: Diagram) -> Dict:
    crossings = []
    for c in d.crossings:
        if c.trivial:
            entry = {"id": c.id, "left": c.left, "right": c.right, "trivial": True}
        else:
            entry = {"id": c.id, "over": c.over, "left": c.left, "right": c.right}
        if c.under_in is not None:
            entry["under_in"] = c.under_in
        crossings.append(entry)
    return {
        "mu": d.mu,
        "arcs": [{"id": a.id, "component": a.component} for a in d.arcs],
        "crossings": crossings,
    }


def diagram_to_json(d: Diagram) -> str:
    return json.dumps(diagram_to_data(d), indent=2)


def delete_component(d: Diagram, j: int) -> Diagram:
    """
    Sublink diagram with component j removed.

    Crossings passing under component j disappear; crossings passing over it
    become trivial. Components above j shift down by one.

    Args:
        d: Diagram with at least two components
        j: Component to delete

    Returns:
        Diagram with mu - 1 components

    Raises:
        DiagramError: If mu = 1 or j is out of range
    """
    if d.mu < 2:
        raise DiagramError("Cannot delete a component of a one-component diagram")
    if not 1 <= j <= d.mu:
        raise DiagramError(f"Component {j} outside 1..{d.mu}")

    def renumber(i: int) -> int:
        return i - 1 if i > j else i

    components = d._components()
    arcs = tuple(Arc(a.id, renumber(a.component)) for a in d.arcs if a.component != j)
    crossings = []
    for c in d.crossings:
        if components[c.left] == j:
            continue
        if not c.trivial and components[c.over] == j:
            crossings.append(replace(c, over=None, trivial=True))
        else:
            crossings.append(c)
    return Diagram(d.mu - 1, arcs, tuple(crossings))


def permute_components(d: Diagram, sigma: Union[Sequence[int], Mapping[int, int]]) -> Diagram:
    """
    Relabel components: component i becomes sigma(i).

    Args:
        d: Diagram
        sigma: Either a sequence whose (i-1)-th entry is sigma(i), or a map

    Raises:
        DiagramError: If sigma is not a permutation of 1..mu
    """
    if isinstance(sigma, Mapping):
        table = {int(k): int(v) for k, v in sigma.items()}
    else:
        table = {i: int(v) for i, v in enumerate(sigma, start=1)}
    expected = set(range(1, d.mu + 1))
    if set(table) != expected or set(table.values()) != expected:
        raise DiagramError(f"{sigma} is not a permutation of 1..{d.mu}")
    arcs = tuple(Arc(a.id, table[a.component]) for a in d.arcs)
    return Diagram(d.mu, arcs, d.crossings)


def load_diagram(path: Path) -> Diagram:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise OSError(f"Cannot read diagram file {path}: {e}") from e
    return parse_diagram(text)


def fixtures() -> Dict[str, Diagram]:
    """Bundled diagrams keyed by file stem ('W', 'L7_2_8', 'unknot', 'trefoil', 'unlink2')."""
    return {path.stem: load_diagram(path) for path in sorted(FIXTURES_DIR.glob("*.json"))}
