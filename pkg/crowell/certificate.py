"""
Checking Crowell-equivalence certificates.

A certificate proposes a module map f from presentation A to presentation B
by giving f(g) for generators (or original arcs) of A as combinations of
generators (or original arcs) of B. The checker confirms three things:

1. phi_B(f(g)) = phi_A(g) for every generator of A.
2. f sends every relation of A into B's relation module. Membership is
   certified by exact division or by a bounded search; failing to find a
   combination is not a refutation.
3. On every battery target, the induced map on colorings is a bijection.
"""

import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Sequence, Union

from .coloring import Coloring, ColoringSpace
from .errors import CertificateError, DimensionError, ParseError
from .laurent import LaurentPoly, format_combination, format_poly, parse_combination
from .presentation import Presentation, relation_coefficients
from .targets import FiniteModuleSpec, apply_matrix, default_battery

logger = logging.getLogger(__name__)

DEFAULT_DEGREE_BOUND = 4

Combination = Dict[str, LaurentPoly]


class Verdict(str, Enum):
    VERIFIED = "VERIFIED"
    REFUTED = "REFUTED"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class EquivalenceCertificate:
    """Images of A's generators or arcs, written over B's generators or arcs."""

    generator_images: Dict[str, Combination]
    degree_bound: int = DEFAULT_DEGREE_BOUND


@dataclass(frozen=True)
class CertificateResult:
    verdict: Verdict
    witness: Optional[Dict[str, Any]] = None
    notes: List[Dict[str, Any]] = field(default_factory=list)

    def to_data(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"verdict": self.verdict.value, "witness": self.witness}
        if self.notes:
            data["notes"] = self.notes
        return data


def _symbols(b: Presentation) -> List[str]:
    return list(b.generators) + [a for a in b.arcs if a not in b.generators]


def certificate_from_data(data: Mapping[str, Any], b: Presentation) -> EquivalenceCertificate:
    """
    Parse ``{images: {gen: combination}, degree_bound}`` against target B.

    Raises:
        CertificateError: If fields are missing or a combination does not parse
    """
    try:
        images = data["images"]
        bound = int(data.get("degree_bound", DEFAULT_DEGREE_BOUND))
    except (KeyError, TypeError, ValueError) as e:
        raise CertificateError(f"Malformed certificate: {e}") from e
    symbols = _symbols(b)
    parsed = {}
    for key, text in images.items():
        try:
            parsed[str(key)] = parse_combination(text, b.mu, symbols)
        except ParseError as e:
            raise CertificateError(f"Image of {key!r}: {e}") from e
    if bound < 0:
        raise CertificateError(f"degree_bound must be nonnegative, got {bound}")
    return EquivalenceCertificate(parsed, bound)


def load_certificate(path: Union[str, Path], b: Presentation) -> EquivalenceCertificate:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise OSError(f"Cannot read certificate {path}: {e}") from e
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"Certificate {path} is not valid JSON: {e}") from e
    return certificate_from_data(data, b)


def certificate_to_data(cert: EquivalenceCertificate, b: Presentation) -> Dict[str, Any]:
    symbols = _symbols(b)
    return {
        "images": {k: format_combination(v, symbols) for k, v in cert.generator_images.items()},
        "degree_bound": cert.degree_bound,
    }


def identity_certificate(p: Presentation) -> EquivalenceCertificate:
    return EquivalenceCertificate({g: {g: LaurentPoly.one(p.mu)} for g in p.generators})


def _scaled_sum(terms, mu: int) -> Combination:
    total: Combination = {}
    for coeff, combo in terms:
        for gen, value in combo.items():
            updated = total.get(gen, LaurentPoly.zero(mu)) + coeff * value
            if updated.is_zero():
                total.pop(gen, None)
            else:
                total[gen] = updated
    return total


def _over_generators(combo: Mapping[str, LaurentPoly], b: Presentation) -> Combination:
    # Arc names are rewritten through B's arc images.
    terms = []
    for symbol, coeff in combo.items():
        if symbol in b.arcs:
            terms.append((coeff, b.arcs[symbol].image))
        elif symbol in b.generators:
            terms.append((coeff, {symbol: LaurentPoly.one(b.mu)}))
        else:
            raise CertificateError(f"Symbol {symbol!r} is neither a generator nor an arc of B")
    return _scaled_sum(terms, b.mu)


def _generator_map(a: Presentation, b: Presentation, images: Mapping[str, Combination]) -> Dict[str, Combination]:
    f = {}
    for gen in a.generators:
        if gen in images:
            f[gen] = images[gen]
            continue
        expression = a.basis.get(gen)
        if expression and all(arc in images for arc in expression):
            f[gen] = _scaled_sum([(c, images[arc]) for arc, c in expression.items()], b.mu)
            continue
        raise CertificateError(f"Certificate does not cover generator {gen!r} of A")
    return f


def _apply(f: Mapping[str, Combination], combo: Mapping[str, LaurentPoly], mu: int) -> Combination:
    return _scaled_sum([(coeff, f[gen]) for gen, coeff in combo.items()], mu)


def _check_target(job) -> Optional[Dict[str, Any]]:
    a, b, f, spec = job
    space_a = ColoringSpace(a, spec)
    space_b = ColoringSpace(b, spec)
    count_a, count_b = space_a.count(), space_b.count()
    if count_a != count_b:
        return {"check": "battery", "spec": spec.spec_id, "colorings_a": count_a, "colorings_b": count_b}
    n, k = spec.modulus, spec.rank
    blocks = {g: [(h, space_b.evaluate(c)) for h, c in f[g].items()] for g in a.generators}
    images = set()
    for coloring in space_b:
        pulled = {}
        for g in a.generators:
            total = [0] * k
            for h, block in blocks[g]:
                for i, v in enumerate(apply_matrix(block, coloring.assignment[h], n)):
                    total[i] += v
            pulled[g] = tuple(v % n for v in total)
        if not space_a.contains(Coloring(pulled)):
            return {"check": "battery", "spec": spec.spec_id, "reason": "pulled-back coloring violates a relation of A"}
        images.add(tuple(pulled[g] for g in a.generators))
    # equal counts plus injectivity means bijective
    if len(images) != count_b:
        return {"check": "battery", "spec": spec.spec_id, "reason": "induced map on colorings is not injective"}
    return None


def _check_battery(
    a: Presentation,
    b: Presentation,
    f: Mapping[str, Combination],
    battery: Sequence[FiniteModuleSpec],
    jobs: int = 1,
) -> Optional[Dict[str, Any]]:
    work = [(a, b, dict(f), spec) for spec in sorted(battery, key=lambda s: s.sort_key)]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_check_target, work))
    else:
        outcomes = [_check_target(job) for job in work]
    return next((o for o in outcomes if o is not None), None)


def check_equivalence_certificate(
    a: Presentation,
    b: Presentation,
    cert: EquivalenceCertificate,
    battery: Optional[Sequence[FiniteModuleSpec]] = None,
    jobs: int = 1,
) -> CertificateResult:
    """
    Check that a certificate describes a Crowell equivalence from A to B.

    Args:
        a: Source presentation
        b: Target presentation
        cert: Proposed images
        battery: Targets for the coloring check (default_battery(mu) when omitted)
        jobs: Worker processes for the coloring check

    Returns:
        CertificateResult with VERIFIED, REFUTED (plus witness) or INCONCLUSIVE

    Raises:
        DimensionError: If A and B have different variable counts
        CertificateError: If the certificate leaves a generator of A uncovered
    """
    if a.mu != b.mu:
        raise DimensionError(f"Variable-count mismatch: {a.mu} vs {b.mu}")
    mu = a.mu
    images = {key: _over_generators(combo, b) for key, combo in cert.generator_images.items()}
    for key in images:
        if key not in a.generators and key not in a.arcs:
            raise CertificateError(f"Certificate names {key!r}, which is not a generator or arc of A")
    f = _generator_map(a, b, images)

    for gen in a.generators:
        found = b.evaluate_phi(f[gen])
        if found != a.phi[gen]:
            logger.info("phi check failed on %s", gen)
            return CertificateResult(
                Verdict.REFUTED,
                {
                    "check": "phi",
                    "generator": gen,
                    "expected": format_poly(a.phi[gen]),
                    "found": format_poly(found),
                },
            )

    relations = b.combinations()
    unresolved: List[Dict[str, Any]] = []
    for index, row in enumerate(a.combinations()):
        vector = _apply(f, row, mu)
        if relation_coefficients(vector, relations, mu, cert.degree_bound) is None:
            logger.info("relation %d of A not found in B's relation module within the window", index)
            unresolved.append({"check": "relation", "row": index, "image": format_combination(vector, b.generators)})
    for key, image in images.items():
        if key in a.generators:
            continue
        expected = _apply(f, a.arcs[key].image, mu)
        difference = _scaled_sum([(LaurentPoly.one(mu), expected), (LaurentPoly.constant(-1, mu), image)], mu)
        if relation_coefficients(difference, relations, mu, cert.degree_bound) is None:
            logger.info("arc %s: certificate image disagrees with the induced image", key)
            unresolved.append({"check": "arc", "arc": key, "difference": format_combination(difference, b.generators)})

    targets = battery if battery is not None else default_battery(mu)
    refutation = _check_battery(a, b, f, targets, jobs)
    if refutation is not None:
        logger.info("battery check failed: %s", refutation)
        return CertificateResult(Verdict.REFUTED, refutation, unresolved)
    if unresolved:
        return CertificateResult(Verdict.INCONCLUSIVE, unresolved[0], unresolved)
    return CertificateResult(Verdict.VERIFIED)
