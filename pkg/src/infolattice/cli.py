"""Command-line interface.

Exit codes: 0 success, 2 invalid structure, 3 a checked claim fails,
64 usage error, 74 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from pathlib import Path

from .events import build_event_lattice
from .generator import GenerationError, GenParams, generate
from .io import StructureFormatError, export_dot, load_structure, serialize_structure, structure_document
from .reconstruct import DEFAULT_CAP, ReconstructionError, reconstruct_full
from .reduction import build_reduced_poset, distinct_traces, is_lattice_reduced
from .structure import StructureError, UnknownSpaceError, validate_structure
from .suite import run_claims

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_VIOLATION = 3
EXIT_USAGE = 64
EXIT_IO = 74


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _fmt_set(s) -> str:
    return "{" + ",".join(sorted(s)) + "}"


def _emit(text: str, output: str | None, out):
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        out.write(text)


def cmd_validate(args, out):
    structure = load_structure(args.file, validate=False)
    report = validate_structure(structure, check_cardinality=args.check_cardinality)
    if not report.ok:
        out.write(report.describe() + "\n")
        return EXIT_INVALID
    out.write(f"ok: {len(structure.space_ids)} spaces, {len(structure.omega)} states, top {structure.top}\n")
    return EXIT_OK


def cmd_events(args, out):
    structure = load_structure(args.file)
    lattice = build_event_lattice(structure, check_algebra=False)
    for e in lattice.events:
        out.write(f"{e}\n")
    per_base = Counter(e.base for e in lattice.events)
    out.write(f"events: {len(lattice)}\n")
    for base in sorted(per_base):
        out.write(f"  based at {base}: {per_base[base]}\n")
    return EXIT_OK


def cmd_reduce(args, out):
    structure = load_structure(args.file)
    lattice = build_event_lattice(structure, check_algebra=False)
    reduced = build_reduced_poset(structure, lattice)
    for e in reduced.events:
        out.write(f"{e}  trace={_fmt_set(reduced.trace_index[e])}\n")
    distinct, twins = distinct_traces(reduced)
    out.write(f"reduced events: {len(reduced)}\n")
    out.write(f"distinct traces: {'yes' if distinct else 'no'}\n")
    if twins:
        out.write(f"  shared trace: {twins[0]} and {twins[1]}\n")
    out.write(f"lattice: {'yes' if is_lattice_reduced(reduced) else 'no'}\n")
    return EXIT_OK


def cmd_check(args, out):
    structure = load_structure(args.file)
    results = run_claims(structure, cap=args.cap)
    for r in results:
        out.write(r.line() + "\n")
    return EXIT_OK if all(r.passed for r in results) else EXIT_VIOLATION


def cmd_reconstruct(args, out):
    structure = load_structure(args.file)
    lattice = build_event_lattice(structure, check_algebra=False)
    reduced = build_reduced_poset(structure, lattice)
    try:
        res = reconstruct_full(lattice, reduced, cap=args.cap)
    except ReconstructionError as exc:
        out.write(json.dumps({"error": str(exc)}, ensure_ascii=False) + "\n")
        return EXIT_VIOLATION
    doc = {
        "unique": res.unique,
        "diagnostics": res.diagnostics,
        "candidates": [
            {"event_lattice_iso": iso, "structure": structure_document(s)}
            for s, iso in zip(res.recovered, res.event_lattice_iso)
        ],
    }
    _emit(json.dumps(doc, indent=2, ensure_ascii=False) + "\n", args.output, out)
    return EXIT_OK if res.isomorphic else EXIT_VIOLATION


def cmd_generate(args, out):
    params = GenParams(
        seed=args.seed,
        top_states=args.top_states,
        n_spaces=args.spaces,
        strict_cardinality=args.strict_cardinality,
        allow_duplicate_partitions=args.allow_duplicates,
    )
    _emit(serialize_structure(generate(params)), args.output, out)
    return EXIT_OK


def cmd_export_dot(args, out):
    structure = load_structure(args.file)
    if args.object == "spaces":
        obj = structure
    else:
        lattice = build_event_lattice(structure, check_algebra=False)
        obj = lattice if args.object == "events" else build_reduced_poset(structure, lattice)
    _emit(export_dot(obj), args.output, out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="infolattice", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", help="check a structure file")
    p.add_argument("file")
    p.add_argument("--check-cardinality", action="store_true",
                   help="also require comparable spaces to differ in size")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("events", help="list every event")
    p.add_argument("file")
    p.set_defaults(func=cmd_events)

    p = sub.add_parser("reduce", help="list the least expressive events")
    p.add_argument("file")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("check", help="verify the order-theoretic claims")
    p.add_argument("file")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("reconstruct", help="recover the structure from its reduced poset")
    p.add_argument("file")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--output")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("generate", help="emit a random structure file")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--top-states", type=int, default=3)
    p.add_argument("--spaces", type=int, default=2)
    p.add_argument("--strict-cardinality", action="store_true")
    p.add_argument("--allow-duplicates", action="store_true")
    p.add_argument("--output")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("export-dot", help="Hasse diagram in Graphviz format")
    p.add_argument("file")
    p.add_argument("--object", choices=["spaces", "events", "reduced"], default="spaces")
    p.add_argument("--output")
    p.set_defaults(func=cmd_export_dot)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    try:
        return args.func(args, out)
    except (StructureFormatError, StructureError, UnknownSpaceError) as exc:
        err.write(f"invalid structure: {exc}\n")
        return EXIT_INVALID
    except GenerationError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        err.write(f"I/O error: {exc}\n")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
