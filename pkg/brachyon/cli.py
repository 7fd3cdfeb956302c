# ABOUTME: Command-line front end for verifying, constructing and classifying solutions and braces
# ABOUTME: Dispatches one verb per run, prints key: value reports and writes canonical files under --output

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from .brace_examples import brace_names, named_brace, vector_code
from .braces import SkewBrace, is_two_sided, socle
from .config import Config, get_config
from .constructor import (
    ConstructionSpec,
    build_solution,
    canonical_spec,
    check_square_free_spec,
    make_spec,
    validate_spec,
)
from .groups import FiniteGroup
from .involutive import (
    InvolutiveSpec,
    build_involutive,
    build_irretractable,
    canonical_involutive_spec,
    irretractable_spec,
    validate_involutive_spec,
)
from .pipeline import run_classification
from .racks import RackTable, enumerate_racks
from .regular import enumerate_braces_on
from .serialization import FORMATS, FormatError, Loadable, emit, from_document, load_file
from .solutions import (
    Solution,
    is_involutive,
    is_irretractable,
    is_nondegenerate,
    is_square_free,
    multipermutation_level,
    permutation_brace,
    verify_ybe,
)
from .standard import named_group

logger = logging.getLogger(__name__)

VERBS = (
    "verify",
    "construct",
    "construct-involutive",
    "construct-irretractable",
    "classify",
    "racks",
    "enumerate-braces",
    "permutation-brace",
    "examples",
)
EMITTABLE = ("brace", "solution", "spec")


class UsageError(Exception):
    pass


class Report:
    """Collects key: value lines for standard output."""

    def __init__(self):
        self.lines: List[str] = []

    def add(self, key: str, value) -> None:
        if isinstance(value, bool):
            value = "yes" if value else "no"
        self.lines.append(f"{key}: {value}")

    def write(self) -> None:
        for line in self.lines:
            print(line)


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-i", "--input", "--brace", dest="input", help="Input file (group, brace, solution or spec).")
    common.add_argument("-o", "--output", help="Output file, or directory for verbs that write several objects.")
    common.add_argument("--format", choices=FORMATS, default="json", help="Output file format.")
    common.add_argument("--max-size", type=int, help="Largest solution or rack size to build.")
    common.add_argument("--max-order", type=int, help="Order cap for subgroup, isomorphism and brace searches.")
    common.add_argument("--cap-families", type=int, help="Most subgroups per orbit in enumerated specs.")
    common.add_argument("--name", help="Built-in brace (or group, for racks and enumerate-braces).")
    common.add_argument("--jobs", type=int, help="Concurrent builds during classification.")
    common.add_argument("--config", default="config.yaml", help="YAML configuration file.")
    common.add_argument("--catalog", help="SQLite catalogue for classification results.")
    common.add_argument("--emit", default="brace,solution", help="Objects written by examples: brace,solution,spec.")
    common.add_argument("-v", "--verbose", action="store_true", help="Debug logging on standard error.")

    parser = argparse.ArgumentParser(prog="brachyon", description="Skew braces and Yang-Baxter solutions")
    subparsers = parser.add_subparsers(dest="verb", required=True)
    helps = {
        "verify": "Validate a file and report its properties.",
        "construct": "Build a solution from a construction spec.",
        "construct-involutive": "Build an involutive solution from an involutive spec.",
        "construct-irretractable": "Build the irretractable solution of a brace with trivial socle.",
        "classify": "All solutions over a brace up to isomorphism.",
        "racks": "Racks built from a group, up to isomorphism.",
        "enumerate-braces": "Skew braces with a given star group, up to isomorphism.",
        "permutation-brace": "The permutation brace of a solution.",
        "examples": "Built-in example braces with their solutions.",
    }
    for verb in VERBS:
        subparsers.add_parser(verb, parents=[common], help=helps[verb])
    return parser


def _positive(value: Optional[int], flag: str) -> Optional[int]:
    if value is not None and value <= 0:
        raise UsageError(f"{flag} must be positive")
    return value


def _effective_config(args: argparse.Namespace) -> Config:
    config = get_config(args.config)
    if _positive(args.max_order, "--max-order") is not None:
        config.set_order_caps(args.max_order)
    if _positive(args.cap_families, "--cap-families") is not None:
        config.max_families_per_orbit = args.cap_families
    if _positive(args.max_size, "--max-size") is not None:
        config.max_solution_size = args.max_size
    if _positive(args.jobs, "--jobs") is not None:
        config.jobs = args.jobs
    if args.catalog:
        config.catalog_path = args.catalog
    return config


def _require_input(args: argparse.Namespace) -> Loadable:
    if not args.input:
        raise UsageError(f"{args.verb} needs --input")
    return load_file(args.input)


def _expect(obj: Loadable, kind: type, what: str) -> Loadable:
    if not isinstance(obj, kind):
        raise FormatError(f"Expected a {what} file, got {type(obj).__name__}")
    return obj


def _brace_argument(args: argparse.Namespace) -> SkewBrace:
    if args.name:
        return named_brace(args.name)
    return _expect(_require_input(args), SkewBrace, "skew_brace")


def _group_argument(args: argparse.Namespace) -> FiniteGroup:
    if args.name:
        return named_group(args.name)
    return _expect(_require_input(args), FiniteGroup, "group")


def _suffix(fmt: str) -> str:
    return ".json" if fmt == "json" else ".txt"


def _write_one(args: argparse.Namespace, obj: Loadable) -> None:
    if not args.output:
        return
    path = Path(args.output)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(emit(obj, args.format))
    logger.info(f"Wrote {path}")


def _write_many(args: argparse.Namespace, stem: str, objects: Sequence[Loadable]) -> None:
    if not args.output:
        return
    directory = Path(args.output)
    directory.mkdir(parents=True, exist_ok=True)
    for k, obj in enumerate(objects):
        (directory / f"{stem}_{k:03d}{_suffix(args.format)}").write_bytes(emit(obj, args.format))
    logger.info(f"Wrote {len(objects)} {stem} files to {directory}")


def _report_solution(report: Report, S: Solution) -> None:
    report.add("size", S.size)
    report.add("nondegenerate", is_nondegenerate(S))
    involutive = is_involutive(S)
    report.add("involutive", involutive)
    report.add("square-free", is_square_free(S))
    if involutive and is_nondegenerate(S):
        report.add("irretractable", is_irretractable(S))
        level = multipermutation_level(S)
        report.add("multipermutation-level", "none" if level is None else level)


def _report_brace(report: Report, B: SkewBrace) -> None:
    report.add("order", B.order)
    report.add("left", B.is_left)
    report.add("two-sided", is_two_sided(B))
    report.add("socle", socle(B).order)


def _verify_solution_document(doc: dict, report: Report) -> int:
    n = doc.get("size")
    F = np.asarray(doc.get("f"))
    Gt = np.asarray(doc.get("g"))
    if not isinstance(n, int) or n < 1 or F.shape != (n, n) or Gt.shape != (n, n):
        raise FormatError("solution needs 'size' and two size×size matrices 'f' and 'g'")
    if F.dtype.kind != "i" or Gt.dtype.kind != "i":
        raise FormatError("solution tables must hold integers")
    if ((F < 0) | (F >= n)).any() or ((Gt < 0) | (Gt >= n)).any():
        raise FormatError("solution tables must have entries in range(size)")
    ybe = verify_ybe(F, Gt)
    if not ybe:
        report.add("ybe", "fails")
        report.add("equation", ybe.equation)
        report.add("counterexample", " ".join(str(v) for v in ybe.counterexample))
        return 1
    report.add("ybe", "ok")
    _report_solution(report, from_document(doc))
    return 0


def _verify(args: argparse.Namespace, config: Config, report: Report) -> int:
    if not args.input:
        raise UsageError("verify needs --input")
    with open(args.input, "rb") as f:
        try:
            doc = json.loads(f.read().decode("utf-8"))
        except json.JSONDecodeError as e:
            raise FormatError(f"Not a JSON document: {e}") from e
    kind = doc.get("kind") if isinstance(doc, dict) else None
    report.add("kind", kind)
    if kind == "solution":
        return _verify_solution_document(doc, report)
    obj = from_document(doc)
    if isinstance(obj, FiniteGroup):
        report.add("order", obj.order)
        report.add("abelian", obj.is_abelian)
    elif isinstance(obj, SkewBrace):
        _report_brace(report, obj)
    elif isinstance(obj, RackTable):
        report.add("size", obj.size)
        report.add("quandle", obj.is_quandle)
    else:
        result = validate_spec(obj) if isinstance(obj, ConstructionSpec) else validate_involutive_spec(obj)
        report.add("valid", result.ok)
        if not result:
            report.add("failure", result.failure)
            report.add("witness", result.witness)
            report.add("message", result.message)
            return 1
        report.add("size", obj.size)
    return 0


def _construct(args: argparse.Namespace, config: Config, report: Report) -> int:
    if args.name:
        spec = canonical_spec(named_brace(args.name))
    else:
        spec = _expect(_require_input(args), ConstructionSpec, "construction_spec")
    built = build_solution(spec)
    _report_solution(report, built.solution)
    report.add("square-free-spec", check_square_free_spec(spec, cross_check=False))
    _write_one(args, built.solution)
    return 0


def _construct_involutive(args: argparse.Namespace, config: Config, report: Report) -> int:
    if args.name:
        spec = canonical_involutive_spec(named_brace(args.name))
    else:
        spec = _expect(_require_input(args), InvolutiveSpec, "involutive_spec")
    built = build_involutive(spec)
    _report_solution(report, built.solution)
    _write_one(args, built.solution)
    return 0


def _construct_irretractable(args: argparse.Namespace, config: Config, report: Report) -> int:
    built = build_irretractable(_brace_argument(args))
    _report_solution(report, built.solution)
    _write_one(args, built.solution)
    return 0


def _classify(args: argparse.Namespace, config: Config, report: Report) -> int:
    brace = _brace_argument(args)
    name = args.name or Path(args.input).stem
    result = run_classification(brace, config, max_size=config.max_solution_size, name=name)
    report.add("specs", result.built)
    report.add("solutions", len(result.solutions))
    report.add("certified", result.certified)
    report.add("sizes", " ".join(str(S.size) for S in result.solutions))
    if result.catalog_id is not None:
        report.add("catalog-id", result.catalog_id)
    _write_many(args, "solution", result.solutions)
    return 0


def _racks(args: argparse.Namespace, config: Config, report: Report) -> int:
    G = _group_argument(args)
    racks = enumerate_racks(
        G,
        max_size=config.max_solution_size,
        max_families=args.cap_families or 1,
        subgroup_cap=config.max_subgroup_order,
    )
    report.add("group-order", G.order)
    report.add("racks", len(racks))
    report.add("quandles", sum(R.is_quandle for R in racks))
    report.add("sizes", " ".join(str(R.size) for R in racks))
    _write_many(args, "rack", racks)
    return 0


def _enumerate_braces(args: argparse.Namespace, config: Config, report: Report) -> int:
    A = _group_argument(args)
    braces = enumerate_braces_on(A, cap=config.max_brace_enumeration_order, holomorph_cap=config.max_holomorph_order)
    report.add("group-order", A.order)
    report.add("braces", len(braces))
    report.add("left", sum(B.is_left for B in braces))
    _write_many(args, "brace", braces)
    return 0


def _permutation_brace(args: argparse.Namespace, config: Config, report: Report) -> int:
    S = _expect(_require_input(args), Solution, "solution")
    B = permutation_brace(S).brace
    _report_brace(report, B)
    _write_one(args, B)
    return 0


def _example_construction(name: str, B: SkewBrace):
    """The featured solution of each built-in brace and the spec it comes from."""
    if name == "vendramin":
        spec = irretractable_spec(B, reps=[vector_code(0, 0, 1), vector_code(0, 0, 0, 0, 0, 1)])
        return spec, build_irretractable(B, reps=spec.reps).solution
    if name == "trivial":
        spec = make_spec(B, [1], [[[0]]])
        return spec, build_solution(spec).solution
    spec = canonical_spec(B)
    return spec, build_solution(spec).solution


def _examples(args: argparse.Namespace, config: Config, report: Report) -> int:
    if not args.name:
        raise UsageError(f"examples needs --name ({', '.join(brace_names())})")
    wanted = [part.strip() for part in args.emit.split(",") if part.strip()]
    unknown = [part for part in wanted if part not in EMITTABLE]
    if unknown:
        raise UsageError(f"--emit accepts {', '.join(EMITTABLE)}, got {', '.join(unknown)}")
    B = named_brace(args.name)
    report.add("name", args.name)
    _report_brace(report, B)
    spec, S = _example_construction(args.name, B)
    report.add("spec-orbits", len(spec.reps))
    _report_solution(report, S)
    if args.output:
        directory = Path(args.output)
        directory.mkdir(parents=True, exist_ok=True)
        objects: Dict[str, Loadable] = {"brace": B, "solution": S, "spec": spec}
        for part in wanted:
            (directory / f"{part}{_suffix(args.format)}").write_bytes(emit(objects[part], args.format))
        logger.info(f"Wrote {', '.join(wanted)} to {directory}")
    return 0


_HANDLERS: Dict[str, Callable[[argparse.Namespace, Config, Report], int]] = {
    "verify": _verify,
    "construct": _construct,
    "construct-involutive": _construct_involutive,
    "construct-irretractable": _construct_irretractable,
    "classify": _classify,
    "racks": _racks,
    "enumerate-braces": _enumerate_braces,
    "permutation-brace": _permutation_brace,
    "examples": _examples,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run one verb. Returns 0 on success, 1 when an object fails validation or a domain
    error is raised, 2 on usage errors.
    """
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    try:
        config = _effective_config(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 2
    level = logging.DEBUG if args.verbose else getattr(logging, config.log_level.upper(), logging.INFO)
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    logging.getLogger().setLevel(level)

    report = Report()
    try:
        status = _HANDLERS[args.verb](args, config, report)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 2
    except (ValueError, KeyError, OSError) as e:
        logger.error(f"{args.verb} failed: {e}")
        report.add("error", e.args[0] if isinstance(e, KeyError) and e.args else e)
        report.write()
        return 1
    report.write()
    return status


def main() -> None:
    sys.exit(run())
