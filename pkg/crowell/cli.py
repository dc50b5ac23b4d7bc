#!/usr/bin/env python3
"""
Crowell CLI

Compute Alexander-module presentations, sublink projections, colorings and
fingerprints of link diagrams, and check equivalence certificates.
"""

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass
from functools import reduce
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from .certificate import Verdict, check_equivalence_certificate, load_certificate
from .coloring import CONSTRAINTS, ColoringSpace, fingerprint, satisfies
from .diagram import (
    FIXTURES_DIR,
    Diagram,
    diagram_from_data,
    diagram_to_json,
    delete_component,
    permute_components,
)
from .errors import CrowellError, DiagramError, DimensionError, ParseError
from .laurent import LaurentPoly, format_poly, gcd
from .presentation import (
    Presentation,
    alexander_polynomial,
    build_presentation,
    elementary_ideal_minors,
    presentation_from_data,
    presentation_to_json,
    quotient_mod_N,
    reduce_one_variable,
    simplify,
)
from .quandle import GradedElement, element_lengths
from .targets import load_battery, load_spec

logger = logging.getLogger(__name__)

BATTERY_ENV = "CROWELL_BATTERY"


# ANSI colors for terminal output
class Colors:
    HEADER = '\033[95m'
    BLUE = '\033[94m'
    CYAN = '\033[96m'
    GREEN = '\033[92m'
    YELLOW = '\033[93m'
    RED = '\033[91m'
    ENDC = '\033[0m'
    BOLD = '\033[1m'


def print_header(text: str) -> None:
    """Print a styled header."""
    print(f"\n{Colors.BOLD}{Colors.CYAN}{text}{Colors.ENDC}")
    print("=" * len(text))


def print_success(text: str) -> None:
    """Print success message."""
    print(f"{Colors.GREEN}✓{Colors.ENDC} {text}")


def print_warning(text: str) -> None:
    """Print warning message."""
    print(f"{Colors.YELLOW}⚠{Colors.ENDC} {text}")


def print_error(text: str, plain: bool = False) -> None:
    """Print error message to stderr; plain drops the color codes."""
    if plain:
        print(f"error: {text}", file=sys.stderr)
    else:
        print(f"{Colors.RED}✗{Colors.ENDC} {text}", file=sys.stderr)


def print_info(text: str) -> None:
    """Print info message."""
    print(f"{Colors.BLUE}ℹ{Colors.ENDC} {text}")


@dataclass(frozen=True)
class CommandResult:
    """Outcome of one CLI invocation."""

    status: str
    payload: Any
    exit_code: int


# ----------------------------------------------------------------------
# input helpers


def resolve_path(path: str) -> Path:
    """
    Locate an input file.

    Paths that exist are used as given. Otherwise ``fixtures/...`` falls back
    to the bundled fixture directory, and a bare file name is looked up in the
    bundled fixtures, targets and certificates.
    """
    candidate = Path(path)
    if candidate.exists():
        return candidate
    parts = candidate.parts
    if parts and parts[0] == "fixtures":
        bundled = FIXTURES_DIR.joinpath(*parts[1:])
        if bundled.exists():
            return bundled
    if len(parts) == 1:
        for folder in (FIXTURES_DIR, FIXTURES_DIR / "targets", FIXTURES_DIR / "certificates"):
            if (folder / path).exists():
                return folder / path
    return candidate


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    resolved = resolve_path(path)
    try:
        return resolved.read_text(encoding="utf-8")
    except OSError as e:
        raise OSError(f"Cannot read {path}: {e}") from e


def _read_document(path: str) -> Dict[str, Any]:
    try:
        data = json.loads(_read_text(path))
    except json.JSONDecodeError as e:
        raise ParseError(f"{path} is not valid JSON: {e}") from e
    if not isinstance(data, dict):
        raise ParseError(f"{path} must hold a JSON object")
    return data


def load_input(path: str) -> Union[Diagram, Presentation]:
    """Read a diagram (has ``crossings``) or a presentation (has ``generators``)."""
    data = _read_document(path)
    if "generators" in data:
        return presentation_from_data(data)
    if "arcs" in data:
        return diagram_from_data(data)
    raise ParseError(f"{path} is neither a diagram nor a presentation")


def _as_presentation(item: Union[Diagram, Presentation]) -> Presentation:
    return build_presentation(item) if isinstance(item, Diagram) else item


def _as_diagram(item: Union[Diagram, Presentation], command: str) -> Diagram:
    if not isinstance(item, Diagram):
        raise DiagramError(f"'{command}' needs a diagram file, not a presentation")
    return item


def _battery():
    path = os.environ.get(BATTERY_ENV)
    if path:
        logger.debug("battery from %s=%s", BATTERY_ENV, path)
        return load_battery(resolve_path(path))
    return None


def _parse_constraint(text: str) -> Tuple[int, str]:
    component, _, kind = text.partition("=")
    if kind not in CONSTRAINTS or not component.strip().isdigit():
        raise argparse.ArgumentTypeError(f"expected i=free|constant|zero, got {text!r}")
    return int(component), kind


def _parse_report(text: str) -> int:
    kind, _, component = text.partition(":")
    if kind != "nonconstant" or not component.isdigit():
        raise argparse.ArgumentTypeError(f"expected nonconstant:i, got {text!r}")
    return int(component)


def _parse_seed(text: str) -> Tuple[int, Tuple[int, ...]]:
    component, _, values = text.partition(":")
    try:
        return int(component), tuple(int(v) for v in values.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected i:v[,v...], got {text!r}")


def _parse_positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        value = 0
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def _parse_sigma(text: str) -> List[int]:
    try:
        return [int(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated permutation, got {text!r}")


# ----------------------------------------------------------------------
# commands
#
# Each command returns (status, payload, exit_code). A str payload is
# written as one line; anything else is written as JSON.


def cmd_present(args) -> Tuple[str, Any, int]:
    return "ok", _as_presentation(load_input(args.input)), 0


def cmd_simplify(args) -> Tuple[str, Any, int]:
    return "ok", simplify(_as_presentation(load_input(args.input))), 0


def cmd_sublink(args) -> Tuple[str, Any, int]:
    d = _as_diagram(load_input(args.input), "sublink")
    if args.mode == "diagram":
        return "ok", delete_component(d, args.drop), 0
    return "ok", quotient_mod_N(build_presentation(d), d, args.drop), 0


def cmd_ideals(args) -> Tuple[str, Any, int]:
    p = simplify(_as_presentation(load_input(args.input)))
    minors = elementary_ideal_minors(p, args.k)
    generator = reduce(gcd, minors, LaurentPoly.zero(p.mu))
    return "ok", {
        "k": args.k,
        "minors": [format_poly(m) for m in minors],
        "gcd": format_poly(generator.unit_normalize()),
    }, 0


def cmd_alexpoly(args) -> Tuple[str, Any, int]:
    p = _as_presentation(load_input(args.input))
    if args.reduce and p.mu > 1:
        p = reduce_one_variable(p)
    return "ok", format_poly(alexander_polynomial(simplify(p))), 0


def cmd_reduce1(args) -> Tuple[str, Any, int]:
    return "ok", reduce_one_variable(_as_presentation(load_input(args.input))), 0


def cmd_color(args) -> Tuple[str, Any, int]:
    p = _as_presentation(load_input(args.input))
    spec = load_spec(resolve_path(args.spec))
    space = ColoringSpace(p, spec)
    constraint: Dict[int, str] = {}
    for component, kind in args.constraint or []:
        if not 1 <= component <= p.mu:
            raise DimensionError(f"Constraint on component {component} outside 1..{p.mu}")
        if kind != "free":
            constraint[component] = kind
    report = args.report
    if report is not None:
        if not 1 <= report <= p.mu:
            raise DimensionError(f"Report on component {report} outside 1..{p.mu}")
        constraint.pop(report, None)

    listed = []
    count = 0
    if not constraint and report is None and not args.list:
        count = space.count()
    else:
        for coloring in space:
            summary = space.summary(coloring)
            if not satisfies(summary, constraint):
                continue
            if report is not None and summary.get(report, (False, False))[0]:
                continue
            count += 1
            if args.list:
                listed.append({a: list(v) for a, v in space.arc_values(coloring).items()})
    payload: Dict[str, Any] = {
        "spec": spec.spec_id,
        "constraint": {str(c): k for c, k in sorted(constraint.items())},
        "count": count,
    }
    if report is not None:
        payload["nonconstant"] = report
    if args.list:
        payload["colorings"] = listed
    return "ok", payload, 0


def cmd_fingerprint(args) -> Tuple[str, Any, int]:
    p = _as_presentation(load_input(args.input))
    return "ok", fingerprint(p, _battery(), jobs=args.jobs).to_data(), 0


def cmd_check_equiv(args) -> Tuple[str, Any, int]:
    a = simplify(_as_presentation(load_input(args.a)))
    b = simplify(_as_presentation(load_input(args.b)))
    cert = load_certificate(resolve_path(args.certificate), b)
    if args.degree_bound is not None:
        cert = type(cert)(cert.generator_images, args.degree_bound)
    result = check_equivalence_certificate(a, b, cert, _battery(), jobs=args.jobs)
    status = result.verdict.value.lower()
    if result.verdict is Verdict.VERIFIED:
        code = 0
    elif result.verdict is Verdict.REFUTED and args.expect_refuted:
        code = 0
    else:
        code = 1
    return status, result.to_data(), code


def cmd_permute(args) -> Tuple[str, Any, int]:
    d = _as_diagram(load_input(args.input), "permute")
    return "ok", permute_components(d, args.sigma), 0


def cmd_lengths(args) -> Tuple[str, Any, int]:
    spec = load_spec(resolve_path(args.spec))
    seeds = []
    for component, value in args.seed:
        if not 1 <= component <= spec.mu:
            raise DimensionError(f"Seed component {component} outside 1..{spec.mu}")
        if len(value) != spec.rank:
            raise DimensionError(f"Seed value {list(value)} does not have rank {spec.rank}")
        seeds.append(GradedElement(component, tuple(v % spec.modulus for v in value)))
    lengths = element_lengths(seeds, spec, args.maxlen)
    ordered = sorted(lengths.items(), key=lambda item: (item[1], item[0].component, item[0].value))
    return "ok", [
        {"component": e.component, "value": list(e.value), "length": n} for e, n in ordered
    ], 0


COMMANDS = {
    "present": cmd_present,
    "simplify": cmd_simplify,
    "sublink": cmd_sublink,
    "ideals": cmd_ideals,
    "alexpoly": cmd_alexpoly,
    "reduce1": cmd_reduce1,
    "color": cmd_color,
    "fingerprint": cmd_fingerprint,
    "check-equiv": cmd_check_equiv,
    "permute": cmd_permute,
    "lengths": cmd_lengths,
}


# ----------------------------------------------------------------------
# output


def render(payload: Any) -> str:
    if isinstance(payload, str):
        return payload
    if isinstance(payload, Diagram):
        return diagram_to_json(payload)
    if isinstance(payload, Presentation):
        return presentation_to_json(payload)
    return json.dumps(payload, indent=2)


def _print_pretty(command: str, status: str, payload: Any) -> None:
    print_header(f"crowell {command}")
    if isinstance(payload, Presentation):
        print_info(f"{len(payload.generators)} generators, {len(payload.rows)} relations, mu = {payload.mu}")
        for gen in payload.generators:
            print(f"  phi({gen}) = {format_poly(payload.phi[gen])}")
        return
    if isinstance(payload, Diagram):
        print_info(f"{len(payload.arcs)} arcs, {len(payload.crossings)} crossings, mu = {payload.mu}")
        return
    if isinstance(payload, dict) and "verdict" in payload:
        if status == "verified":
            print_success("VERIFIED")
        elif status == "refuted":
            print_error("REFUTED")
        else:
            print_warning("INCONCLUSIVE")
        if payload.get("witness"):
            print_info(json.dumps(payload["witness"]))
        return
    if isinstance(payload, dict):
        for key, value in payload.items():
            print_info(f"{key}: {value}")
        return
    if isinstance(payload, list):
        for item in payload:
            print_info(json.dumps(item))
        return
    print_success(str(payload))


def _emit(text: str, output: str) -> None:
    if output == "-":
        print(text)
        return
    try:
        Path(output).write_text(text + "\n", encoding="utf-8")
    except OSError as e:
        raise OSError(f"Cannot write {output}: {e}") from e


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true", help="Log debug output to stderr")
    common.add_argument("--pretty", action="store_true", help="Human-readable, colored output")
    common.add_argument("-o", "--output", default="-", metavar="PATH", help="Write output to PATH (default: stdout)")

    parser = argparse.ArgumentParser(
        prog="crowell",
        description="Alexander modules, sublinks and colorings of link diagrams",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Presentations
  crowell present fixtures/W.json
  crowell simplify fixtures/L7_2_8.json

  # Sublinks and the Alexander polynomial
  crowell sublink fixtures/W.json --drop 2 | crowell alexpoly -
  crowell alexpoly fixtures/trefoil.json

  # Colorings
  crowell color fixtures/L7_2_8.json --spec gf3chi.json --constraint 2=zero --report nonconstant:1
  crowell fingerprint fixtures/W.json --jobs 4

  # Certificates
  crowell check-equiv fixtures/W.json fixtures/L7_2_8.json W_to_L7_2_8.json
        """,
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def command(name: str, help_text: str, with_input: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_text)
        if with_input:
            p.add_argument("input", metavar="INPUT", help="Diagram or presentation JSON ('-' for stdin)")
        return p

    command("present", "Build the presentation of a diagram")
    command("simplify", "Simplify a presentation")

    p = command("sublink", "Presentation or diagram of L - K_i")
    p.add_argument("--drop", type=int, required=True, metavar="I", help="Component to delete")
    p.add_argument("--mode", choices=["diagram", "quotient"], default="diagram",
                   help="Delete from the diagram, or take M/N (default: diagram)")

    p = command("ideals", "Minors generating an elementary ideal")
    p.add_argument("-k", type=int, default=1, metavar="K", help="Ideal index (default: 1)")

    p = command("alexpoly", "One-variable Alexander polynomial")
    p.add_argument("--reduce", action="store_true", help="Send every t_i to t first")

    command("reduce1", "Send every t_i to a single variable t")

    p = command("color", "Count colorings by a finite module")
    p.add_argument("--spec", required=True, metavar="FILE", help="Target module JSON")
    p.add_argument("--constraint", action="append", type=_parse_constraint, metavar="I=KIND",
                   help="Orbit constraint: free, constant or zero (repeatable)")
    p.add_argument("--report", type=_parse_report, metavar="nonconstant:I",
                   help="Count colorings whose orbit I is not constant")
    p.add_argument("--list", action="store_true", help="Include the arc values of every counted coloring")

    p = command("fingerprint", f"Coloring counts over the battery (honors {BATTERY_ENV})")
    p.add_argument("--jobs", type=_parse_positive, default=1, metavar="N", help="Worker processes")

    p = command("check-equiv", "Check an equivalence certificate", with_input=False)
    p.add_argument("a", metavar="A", help="Source diagram or presentation")
    p.add_argument("b", metavar="B", help="Target diagram or presentation")
    p.add_argument("certificate", metavar="CERT", help="Certificate JSON")
    p.add_argument("--expect-refuted", action="store_true", help="Exit 0 when the certificate is refuted")
    p.add_argument("--degree-bound", type=int, metavar="D", help="Override the certificate's degree bound")
    p.add_argument("--jobs", type=_parse_positive, default=1, metavar="N", help="Worker processes")

    p = command("permute", "Relabel the components of a diagram")
    p.add_argument("--sigma", type=_parse_sigma, required=True, metavar="S", help="Permutation, e.g. 2,1")

    p = command("lengths", "Word lengths of quandle elements", with_input=False)
    p.add_argument("--spec", required=True, metavar="FILE", help="Target module JSON")
    p.add_argument("--seed", action="append", type=_parse_seed, required=True, metavar="I:V",
                   help="Seed element of component I with value V (repeatable)")
    p.add_argument("--maxlen", type=_parse_positive, default=4, metavar="N", help="Largest length to explore (default: 4)")

    return parser


def run(argv: Optional[Sequence[str]] = None) -> CommandResult:
    """
    Parse arguments, run one command and write its output.

    Args:
        argv: Arguments without the program name (sys.argv[1:] when None)

    Returns:
        CommandResult; exit_code is 2 for usage errors and 3 for computation errors
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        code = e.code if isinstance(e.code, int) else 2
        return CommandResult("ok" if code == 0 else "error", None, code)

    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        status, payload, code = COMMANDS[args.command](args)
        if args.pretty:
            _print_pretty(args.command, status, payload)
        else:
            _emit(render(payload), args.output)
    except (CrowellError, OSError) as e:
        print_error(str(e), plain=not args.pretty)
        return CommandResult("error", str(e), 3)
    return CommandResult(status, payload, code)


def main() -> int:
    return run(sys.argv[1:]).exit_code


if __name__ == "__main__":
    sys.exit(main())
