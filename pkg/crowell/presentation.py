"""
Alexander module presentations and the Crowell map.

A Presentation is a relation matrix over Λ_mu together with the Crowell map
value phi(g) of every generator. It also remembers where the diagram's arcs
went: ``arcs`` expresses every original arc in the current generators (these
are the quandle seeds), and ``basis`` expresses every current generator in
the original arcs. Both are kept up to date through simplification, so a
simplified presentation still knows its recorded change of generators.
"""

import itertools
import json
import logging
from dataclasses import dataclass, field
from functools import reduce
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .diagram import Diagram, delete_component
from .errors import CrowellError, DimensionError, DiagramError, ParseError
from .laurent import (
    LaurentPoly,
    determinant,
    format_combination,
    format_poly,
    gcd,
    parse_combination,
    parse_poly,
)
from .linalg import solve_integer
from .ring_maps import LaurentRingMap

logger = logging.getLogger(__name__)

Combination = Dict[str, LaurentPoly]

SIMPLIFY_WINDOW = 1
MAX_SEARCH_UNKNOWNS = 4000


@dataclass(frozen=True)
class ArcImage:
    """An original arc: its component and its image in the current generators."""

    component: int
    image: Combination = field(default_factory=dict)


@dataclass(frozen=True)
class Presentation:
    """Relation matrix over Λ_mu with Crowell map values."""

    mu: int
    generators: Tuple[str, ...]
    rows: Tuple[Tuple[LaurentPoly, ...], ...]
    phi: Dict[str, LaurentPoly]
    arcs: Dict[str, ArcImage] = field(default_factory=dict)
    basis: Dict[str, Combination] = field(default_factory=dict)

    def __post_init__(self) -> None:
        width = len(self.generators)
        for index, row in enumerate(self.rows):
            if len(row) != width:
                raise DimensionError(f"Row {index} has {len(row)} entries, expected {width}")
            for entry in row:
                if entry.mu != self.mu:
                    raise DimensionError(f"Row {index} has an entry in {entry.mu} variables")
        for gen in self.generators:
            if gen not in self.phi:
                raise DimensionError(f"Generator {gen!r} has no phi value")
            if self.phi[gen].mu != self.mu:
                raise DimensionError(f"phi({gen}) has {self.phi[gen].mu} variables")

    def row_combination(self, index: int) -> Combination:
        return {g: e for g, e in zip(self.generators, self.rows[index]) if not e.is_zero()}

    def combinations(self) -> List[Combination]:
        return [self.row_combination(i) for i in range(len(self.rows))]

    def evaluate_phi(self, combo: Mapping[str, LaurentPoly]) -> LaurentPoly:
        """phi of a combination of current generators."""
        total = LaurentPoly.zero(self.mu)
        for gen, coeff in combo.items():
            total = total + coeff * self.phi[gen]
        return total


# ----------------------------------------------------------------------
# construction


def build_presentation(d: Diagram) -> Presentation:
    """
    Presentation of the Alexander module read off a diagram.

    One generator per arc with phi(a) = t_k(a) - 1, and per crossing the row
    (1 - t_k(left))·over + t_k(over)·right - left. Trivial crossings give
    right - left.

    Args:
        d: Validated diagram

    Returns:
        Presentation with generators in arc order and rows in crossing order
    """
    mu = d.mu
    gens = tuple(arc.id for arc in d.arcs)
    position = {g: i for i, g in enumerate(gens)}
    kappa = {arc.id: arc.component for arc in d.arcs}
    t = [LaurentPoly.variable(i, mu) for i in range(1, mu + 1)]
    one = LaurentPoly.one(mu)
    rows = []
    for crossing in d.crossings:
        row = [LaurentPoly.zero(mu)] * len(gens)
        right, left = position[crossing.right], position[crossing.left]
        if crossing.trivial:
            row[right] = row[right] + one
        else:
            over = position[crossing.over]
            row[over] = row[over] + (one - t[kappa[crossing.left] - 1])
            row[right] = row[right] + t[kappa[crossing.over] - 1]
        row[left] = row[left] - one
        rows.append(tuple(row))
    phi = {a: t[kappa[a] - 1] - one for a in gens}
    arcs = {a: ArcImage(kappa[a], {a: one}) for a in gens}
    basis = {a: {a: one} for a in gens}
    return Presentation(mu, gens, tuple(rows), phi, arcs, basis)


def phi_compatible(p: Presentation) -> bool:
    """Every row is killed by phi and every phi value lies in the augmentation ideal."""
    if any(value.augmentation() for value in p.phi.values()):
        return False
    return all(p.evaluate_phi(combo).is_zero() for combo in p.combinations())


# ----------------------------------------------------------------------
# relation membership


def _window(mu: int, bound: int) -> List[Tuple[int, ...]]:
    monomials = list(itertools.product(range(-bound, bound + 1), repeat=mu))
    return sorted(monomials, key=lambda m: (sum(abs(e) for e in m), m))


def _multipliers(mu: int, bound: int) -> List[LaurentPoly]:
    result = []
    for monomial in _window(mu, bound):
        result.append(LaurentPoly.monomial(monomial, 1))
        result.append(LaurentPoly.monomial(monomial, -1))
    return result


def _scaled(combo: Mapping[str, LaurentPoly], factor: LaurentPoly) -> Combination:
    result = {}
    for gen, coeff in combo.items():
        value = coeff * factor
        if not value.is_zero():
            result[gen] = value
    return result


def _added(left: Mapping[str, LaurentPoly], right: Mapping[str, LaurentPoly]) -> Combination:
    result = dict(left)
    for gen, coeff in right.items():
        value = result[gen] + coeff if gen in result else coeff
        if value.is_zero():
            result.pop(gen, None)
        else:
            result[gen] = value
    return result


def relation_coefficients(
    vector: Mapping[str, LaurentPoly],
    relations: Sequence[Mapping[str, LaurentPoly]],
    mu: int,
    degree_bound: int,
) -> Optional[List[LaurentPoly]]:
    """
    Coefficients lambda_j with vector = sum lambda_j · relations[j], or None.

    Exact quotients by a single relation are tried first. Otherwise the
    coefficients are searched among polynomials whose exponents all lie in
    [-degree_bound, degree_bound], by solving the integer linear system on
    their coefficients. None means no combination was found inside the
    window, not that none exists.
    """
    zero = LaurentPoly.zero(mu)
    if not any(not c.is_zero() for c in vector.values()):
        return [zero] * len(relations)
    for index, relation in enumerate(relations):
        if not relation:
            continue
        gen = next(iter(relation))
        quotient = vector.get(gen, zero).exact_divide(relation[gen])
        if quotient is None or quotient.is_zero():
            continue
        if _added(_scaled(relation, quotient), _scaled(vector, LaurentPoly.constant(-1, mu))) == {}:
            coefficients = [zero] * len(relations)
            coefficients[index] = quotient
            return coefficients
    return _bounded_search(vector, relations, mu, degree_bound)


def _bounded_search(
    vector: Mapping[str, LaurentPoly],
    relations: Sequence[Mapping[str, LaurentPoly]],
    mu: int,
    degree_bound: int,
) -> Optional[List[LaurentPoly]]:
    window = _window(mu, degree_bound)
    unknowns = [(j, w) for j in range(len(relations)) for w in window]
    if not unknowns or len(unknowns) > MAX_SEARCH_UNKNOWNS:
        return None
    equations: Dict[Tuple[str, Tuple[int, ...]], Dict[int, int]] = {}
    for index, (j, w) in enumerate(unknowns):
        for gen, coeff in relations[j].items():
            for monomial, value in coeff.as_dict().items():
                key = (gen, tuple(a + b for a, b in zip(monomial, w)))
                slot = equations.setdefault(key, {})
                slot[index] = slot.get(index, 0) + value
    targets = {}
    for gen, coeff in vector.items():
        for monomial, value in coeff.as_dict().items():
            key = (gen, monomial)
            if key not in equations:
                return None
            targets[key] = value
    keys = list(equations)
    matrix = [[equations[key].get(i, 0) for i in range(len(unknowns))] for key in keys]
    rhs = [targets.get(key, 0) for key in keys]
    solution = solve_integer(matrix, rhs)
    if solution is None:
        return None
    coefficients = [LaurentPoly.zero(mu) for _ in relations]
    for (j, w), value in zip(unknowns, solution):
        if value:
            coefficients[j] = coefficients[j] + LaurentPoly.monomial(w, value)
    return coefficients


# ----------------------------------------------------------------------
# simplification


class _Reduction:
    """Mutable working copy of a presentation during simplify."""

    def __init__(self, p: Presentation):
        self.mu = p.mu
        self.gens: List[str] = list(p.generators)
        self.rows: List[Combination] = p.combinations()
        self.phi: Dict[str, LaurentPoly] = dict(p.phi)
        self.arcs: Dict[str, ArcImage] = dict(p.arcs)
        self.basis: Dict[str, Combination] = {g: dict(c) for g, c in p.basis.items()}

    def freeze(self) -> Presentation:
        zero = LaurentPoly.zero(self.mu)
        rows = tuple(tuple(row.get(g, zero) for g in self.gens) for row in self.rows)
        phi = {g: self.phi[g] for g in self.gens}
        basis = {g: self.basis[g] for g in self.gens if g in self.basis}
        return Presentation(self.mu, tuple(self.gens), rows, phi, self.arcs, basis)

    def _row_key(self, row: Combination):
        for gen in self.gens:
            if gen in row:
                unit = row[gen].normalizing_unit()
                return tuple((g, frozenset((row[g] * unit).as_dict().items())) for g in self.gens if g in row)
        return ()

    def tidy(self) -> None:
        seen = set()
        kept = []
        for row in self.rows:
            if not row:
                logger.debug("dropping zero row")
                continue
            key = self._row_key(row)
            if key in seen:
                logger.debug("dropping row that repeats an earlier row up to a unit")
                continue
            seen.add(key)
            kept.append(row)
        self.rows = kept

    def pivot(self) -> bool:
        for index, row in enumerate(self.rows):
            for gen in self.gens:
                if gen in row and row[gen].is_unit():
                    self._eliminate(index, gen)
                    return True
        return False

    def _eliminate(self, index: int, gen: str) -> None:
        pivot_row = self.rows.pop(index)
        inverse = pivot_row[gen].inverse()
        logger.debug("eliminating %s using a unit entry %s", gen, pivot_row[gen])

        def substitute(combo: Combination) -> Combination:
            if gen not in combo:
                return combo
            factor = -(combo[gen] * inverse)
            result = _added(combo, _scaled(pivot_row, factor))
            result.pop(gen, None)
            return result

        self.rows = [substitute(row) for row in self.rows]
        self.arcs = {a: ArcImage(img.component, substitute(img.image)) for a, img in self.arcs.items()}
        self.gens.remove(gen)
        self.phi.pop(gen)
        self.basis.pop(gen, None)

    def expose_unit(self) -> bool:
        multipliers = _multipliers(self.mu, SIMPLIFY_WINDOW)
        for i, row in enumerate(self.rows):
            for j, other in enumerate(self.rows):
                if i == j:
                    continue
                for m in multipliers:
                    candidate = _added(row, _scaled(other, m))
                    if any(c.is_unit() for c in candidate.values()):
                        logger.debug("row %d += (%s) * row %d exposes a unit", i, m, j)
                        self.rows[i] = candidate
                        return True
        for row in self.rows:
            for target in self.gens:
                for source in self.gens:
                    if source == target or source not in row:
                        continue
                    base = row.get(target, LaurentPoly.zero(self.mu))
                    for q in multipliers:
                        if (base + q * row[source]).is_unit():
                            self._column_operation(target, source, q)
                            return True
        return False

    def _column_operation(self, target: str, source: str, q: LaurentPoly) -> None:
        # col_target += q * col_source; the new generator is source - q * target.
        renamed = self._fresh_name(source)
        logger.debug("generator change %s -> %s = %s - (%s)*%s", source, renamed, source, q, target)

        def transform(combo: Combination) -> Combination:
            result = dict(combo)
            if source in result:
                extra = q * result[source]
                value = result.get(target, LaurentPoly.zero(self.mu)) + extra
                if value.is_zero():
                    result.pop(target, None)
                else:
                    result[target] = value
                result[renamed] = result.pop(source)
            return result

        self.rows = [transform(row) for row in self.rows]
        self.arcs = {a: ArcImage(img.component, transform(img.image)) for a, img in self.arcs.items()}
        self.phi[renamed] = self.phi.pop(source) - q * self.phi[target]
        if source in self.basis and target in self.basis:
            self.basis[renamed] = _added(
                self.basis.pop(source), _scaled(self.basis[target], -q)
            )
        else:
            self.basis.pop(source, None)
        self.gens[self.gens.index(source)] = renamed

    def _fresh_name(self, name: str) -> str:
        candidate = name + "'"
        while candidate in self.gens or candidate in self.arcs:
            candidate += "'"
        return candidate

    def drop_redundant(self) -> bool:
        if len(self.rows) < 2:
            return False
        for index in reversed(range(len(self.rows))):
            others = self.rows[:index] + self.rows[index + 1:]
            if relation_coefficients(self.rows[index], others, self.mu, SIMPLIFY_WINDOW) is not None:
                logger.debug("dropping row %d, a combination of the others", index)
                del self.rows[index]
                return True
        return False


def simplify(p: Presentation) -> Presentation:
    """
    Simplify a presentation without changing the module it presents.

    Repeats until stable: drop zero rows and rows equal to an earlier row up
    to a unit; eliminate a generator through the first unit entry (first
    row, then first generator); failing that, look for a row operation or a
    change of generators that exposes a unit; failing that, drop a row that
    is a combination of the others. phi, arc images and the generator basis
    are carried through every step.

    Args:
        p: Presentation

    Returns:
        New presentation of an isomorphic module
    """
    work = _Reduction(p)
    while True:
        work.tidy()
        if work.pivot():
            continue
        if work.expose_unit():
            continue
        if work.drop_redundant():
            continue
        break
    result = work.freeze()
    logger.debug(
        "simplified %d generators / %d rows to %d / %d",
        len(p.generators), len(p.rows), len(result.generators), len(result.rows),
    )
    return result


# ----------------------------------------------------------------------
# maps and quotients


def _map_presentation(p: Presentation, ring_map: LaurentRingMap, component) -> Presentation:
    def image(combo: Mapping[str, LaurentPoly]) -> Combination:
        result = {}
        for gen, coeff in combo.items():
            value = ring_map.substitute(coeff)
            if not value.is_zero():
                result[gen] = value
        return result

    rows = tuple(tuple(ring_map.substitute(e) for e in row) for row in p.rows)
    phi = {g: ring_map.substitute(v) for g, v in p.phi.items()}
    arcs = {}
    for arc, img in p.arcs.items():
        new_component = component(img.component)
        if new_component is not None:
            arcs[arc] = ArcImage(new_component, image(img.image))
    basis = {g: image(combo) for g, combo in p.basis.items()}
    return Presentation(ring_map.target_mu, p.generators, rows, phi, arcs, basis)


def reduce_one_variable(p: Presentation) -> Presentation:
    """Send every t_i to a single variable t; every arc joins component 1."""
    return _map_presentation(p, LaurentRingMap.one_variable(p.mu), lambda k: 1)


def quotient_mod_N(p: Presentation, d: Diagram, j: int) -> Presentation:
    """
    Presentation of M_A(L)/N over Λ_(mu-1), N the kernel of the sublink map.

    N is generated by (t_j - 1)·M_A(L) together with the orbit of component
    j. Applying π (t_j ↦ 1) kills the first part outright; the orbit part is
    generated by the arc generators of component j, since x ▷ y and
    x ▷⁻¹ y stay in N whenever x does. So it suffices to map every entry
    through π and add one killing row per arc of component j.

    Args:
        p: Presentation built from d (or a simplification of it)
        d: The diagram, for the component labels
        j: Component to project away

    Returns:
        Presentation over mu - 1 variables; arcs of component j leave the seed set

    Raises:
        DimensionError: If mu < 2 or j is out of range
    """
    if p.mu < 2:
        raise DimensionError("quotient_mod_N needs at least two components")
    if not 1 <= j <= p.mu:
        raise DimensionError(f"Component {j} outside 1..{p.mu}")
    projection = LaurentRingMap.projection(p.mu, j)
    killed = d.component_arcs(j)
    for arc in killed:
        if arc not in p.arcs:
            raise DiagramError(f"Arc {arc!r} of the diagram is unknown to the presentation")
    mapped = _map_presentation(
        p, projection, lambda k: None if k == j else (k - 1 if k > j else k)
    )
    zero = LaurentPoly.zero(p.mu - 1)
    extra = []
    for arc in killed:
        combo = p.arcs[arc].image
        extra.append(tuple(projection.substitute(combo.get(g, LaurentPoly.zero(p.mu))) for g in p.generators))
    rows = mapped.rows + tuple(row for row in extra if any(e != zero for e in row))
    return Presentation(mapped.mu, mapped.generators, rows, mapped.phi, mapped.arcs, mapped.basis)


def sublink_presentation(d: Diagram, j: int, mode: str = "diagram") -> Presentation:
    """Presentation of L - K_j, either from the sublink diagram or as M_A(L)/N."""
    if mode == "diagram":
        return build_presentation(delete_component(d, j))
    if mode == "quotient":
        return quotient_mod_N(build_presentation(d), d, j)
    raise ValueError(f"Unknown sublink mode: {mode!r}")


# ----------------------------------------------------------------------
# elementary ideals


def elementary_ideal_minors(p: Presentation, k: int) -> List[LaurentPoly]:
    """
    All (g-k)×(g-k) minors of the relation matrix.

    Returns [1] when g - k <= 0 and [0] when g - k exceeds the row count.
    """
    g = len(p.generators)
    if not 0 <= k <= g:
        raise DimensionError(f"k = {k} outside 0..{g}")
    size = g - k
    if size <= 0:
        return [LaurentPoly.one(p.mu)]
    if size > len(p.rows):
        return [LaurentPoly.zero(p.mu)]
    minors = []
    for rows in itertools.combinations(range(len(p.rows)), size):
        for cols in itertools.combinations(range(g), size):
            sub = [[p.rows[r][c] for c in cols] for r in rows]
            minors.append(determinant(sub, p.mu))
    return minors


def alexander_polynomial(p: Presentation) -> LaurentPoly:
    """
    Unit-normalized gcd of the first elementary ideal's minors.

    Raises:
        DimensionError: Unless p is a one-variable presentation
    """
    if p.mu != 1:
        raise DimensionError(f"Alexander polynomial needs a one-variable presentation, got mu = {p.mu}")
    minors = elementary_ideal_minors(p, 1)
    return reduce(gcd, minors, LaurentPoly.zero(1)).unit_normalize()


# ----------------------------------------------------------------------
# serialization


def presentation_to_data(p: Presentation) -> Dict:
    arc_names = list(p.arcs)
    return {
        "mu": p.mu,
        "generators": list(p.generators),
        "rows": [[format_poly(e) for e in row] for row in p.rows],
        "phi": {g: format_poly(p.phi[g]) for g in p.generators},
        "arcs": {
            a: {"component": img.component, "image": format_combination(img.image, p.generators)}
            for a, img in p.arcs.items()
        },
        "basis": {g: format_combination(combo, arc_names) for g, combo in p.basis.items()},
    }


def presentation_to_json(p: Presentation) -> str:
    return json.dumps(presentation_to_data(p), indent=2)


def presentation_from_data(data: Mapping) -> Presentation:
    """
    Rebuild a presentation from decoded JSON.

    ``arcs`` and ``basis`` are optional; without ``arcs`` every generator
    whose phi is t_i - 1 becomes its own seed on component i.
    """
    try:
        return _presentation_from_data(data)
    except CrowellError:
        raise
    except (KeyError, TypeError, ValueError, AttributeError) as e:
        raise ParseError(f"Malformed presentation document: {e!r}") from e


def _presentation_from_data(data: Mapping) -> Presentation:
    mu = int(data["mu"])
    if mu < 1:
        raise ParseError(f"Presentation needs mu >= 1, got {mu}")
    gens = tuple(str(g) for g in data["generators"])
    rows = tuple(tuple(parse_poly(e, mu) for e in row) for row in data["rows"])
    phi = {g: parse_poly(data["phi"][g], mu) for g in gens}
    arcs: Dict[str, ArcImage] = {}
    if "arcs" in data:
        for arc, entry in data["arcs"].items():
            arcs[str(arc)] = ArcImage(int(entry["component"]), parse_combination(entry["image"], mu, gens))
    else:
        for gen in gens:
            for i in range(1, mu + 1):
                if phi[gen] == LaurentPoly.variable(i, mu) - 1:
                    arcs[gen] = ArcImage(i, {gen: LaurentPoly.one(mu)})
    arc_names = list(arcs)
    basis = {str(g): parse_combination(text, mu, arc_names) for g, text in data.get("basis", {}).items()}
    return Presentation(mu, gens, rows, phi, arcs, basis)


def presentation_from_json(text: str) -> Presentation:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"Presentation file is not valid JSON: {e}") from e
    return presentation_from_data(data)
