"""Command line front end: ``corolla compute|verify|gen|eval``.

Exit codes: 0 success, 1 identity failure, 2 bad flags or input file,
3 method/graph mismatch or missing evaluation data.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import corolla_poly as cp
from .generators import enumerate_small, fixture, random_graph
from .genvalence import general_corolla
from .halfedge import GraphValidationError, dump_graph, load_graph
from .multipoly import MissingAssignmentError, Polynomial
from .universal import universal_poly, universal_tilde
from .verify import SUITES, load_corpus, report_json, run_suites

EXIT_FAIL, EXIT_USAGE, EXIT_MISMATCH = 1, 2, 3
SUBSETS_GUARD_VERTICES = 16


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _load(path: str):
    try:
        return load_graph(path)
    except OSError as exc:
        raise CliError(EXIT_USAGE, f"cannot read {path}: {exc.strerror}") from None
    except GraphValidationError as exc:
        raise CliError(EXIT_USAGE, f"invalid graph {path}: {exc}") from None


def _polynomial_for(G, args) -> Polynomial:
    method = args.method
    want_regular = args.universal or args.tilde or args.restrict or method in ("definition", "subsets", "recurrence")
    if want_regular and not G.is_three_regular():
        v = next(i for i, hs in enumerate(G.vertices) if len(hs) != 3)
        raise CliError(
            EXIT_MISMATCH,
            f"vertex {v} has valence {G.valence(v)}; the requested computation needs a 3-regular graph",
        )
    scan = args.universal or args.tilde or method == "subsets" or (
        method == "auto" and G.is_three_regular() and G.n_vertices <= cp.SUBSETS_MAX_VERTICES
    )
    if scan and G.n_vertices > SUBSETS_GUARD_VERTICES and not args.force:
        raise CliError(
            EXIT_MISMATCH,
            f"{G.n_vertices} vertices exceeds the subset-scan guard of {SUBSETS_GUARD_VERTICES}; pass --force",
        )
    if args.restrict is not None:
        try:
            E = json.loads(args.restrict)
            return cp.corolla_restricted(G, [tuple(e) for e in E])
        except (json.JSONDecodeError, TypeError, ValueError) as exc:
            raise CliError(EXIT_MISMATCH, f"bad --restrict edge set: {exc}") from None
    if args.tilde:
        return universal_tilde(G)
    if args.universal:
        return universal_poly(G)
    if method == "general" or (method == "auto" and not G.is_three_regular()):
        return general_corolla(G)
    return cp.corolla(G, method)


def _emit(text: str, output: str | None) -> None:
    if output and output != "-":
        with open(output, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def cmd_compute(args) -> int:
    G = _load(args.input)
    p = _polynomial_for(G, args)
    _emit(p.text() if args.format == "text" else json.dumps(p.to_json()), args.output)
    return 0


def _parse_assignment(args, G) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    try:
        if args.all is not None:
            val = Fraction(args.all)
            out.update({h: val for h in G.halfedges})
        if args.assign:
            raw = json.loads(args.assign)
            items = raw.items() if isinstance(raw, dict) else enumerate(raw)
            for k, v in items:
                out[int(k)] = Fraction(str(v))
    except (ValueError, ZeroDivisionError, json.JSONDecodeError) as exc:
        raise CliError(EXIT_USAGE, f"bad assignment: {exc}") from None
    return out


def _fraction(x: str | None) -> Fraction | None:
    if x is None:
        return None
    try:
        return Fraction(x)
    except (ValueError, ZeroDivisionError):
        raise CliError(EXIT_USAGE, f"bad rational {x!r}") from None


def cmd_eval(args) -> int:
    G = _load(args.input)
    r, q = _fraction(args.r), _fraction(args.q)
    args.universal = r is not None and q is None
    args.tilde = q is not None
    args.restrict = None
    p = _polynomial_for(G, args)
    a = _parse_assignment(args, G)
    try:
        value = p.evaluate(a, r, q)
    except MissingAssignmentError as exc:
        raise CliError(EXIT_MISMATCH, f"missing value: {exc.args[0]}") from None
    _emit(str(value) if value.denominator != 1 else str(value.numerator), args.output)
    return 0


def cmd_verify(args) -> int:
    suites = list(SUITES) if args.suite == "all" else [args.suite]
    try:
        corpus = load_corpus(args.corpus, closed=args.closed)
    except ValueError as exc:
        raise CliError(EXIT_USAGE, str(exc)) from None
    report = run_suites(suites, corpus, args.corpus)
    _emit(report_json(report) if args.format == "json" else report.to_text(), args.output)
    return report.exit_status


def _file_stem(name: str) -> str:
    return name.lower().replace("(", "_").replace(")", "")


def cmd_gen(args) -> int:
    family = args.family
    graphs = []
    if family.startswith("small:"):
        try:
            n = int(family.split(":", 1)[1])
            graphs = [(f"small{n}-{i:04d}", G) for i, G in enumerate(enumerate_small(n, not args.closed))]
        except ValueError as exc:
            raise CliError(EXIT_USAGE, f"bad family {family!r}: {exc}") from None
    elif family == "random":
        lo, _, hi = args.valence.partition(",")
        try:
            vr = (int(lo), int(hi or lo))
            graphs = [
                (f"random-{args.seed}-{i:03d}",
                 random_graph(args.seed * 100_003 + i, args.vertices, vr, args.external_fraction))
                for i in range(args.count)
            ]
        except ValueError as exc:
            raise CliError(EXIT_USAGE, f"bad random family options: {exc}") from None
    else:
        try:
            graphs = [(_file_stem(family), fixture(family))]
        except (KeyError, ValueError):
            raise CliError(EXIT_USAGE, f"unknown family {family!r}") from None
    os.makedirs(args.out_dir, exist_ok=True)
    for stem, G in graphs:
        path = os.path.join(args.out_dir, f"{stem}.json")
        with open(path, "w") as fh:
            fh.write(dump_graph(G) + "\n")
        print(path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="corolla", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    methods = ["auto", "definition", "subsets", "recurrence", "general"]

    c = sub.add_parser("compute", help="compute a corolla polynomial")
    c.add_argument("--input", required=True)
    c.add_argument("--method", choices=methods, default="auto")
    c.add_argument("--universal", action="store_true", help="add the cycle-counting variable r")
    c.add_argument("--tilde", action="store_true", help="add r and the component variable q")
    c.add_argument("--restrict", metavar="EDGES", help='JSON edge list, e.g. "[[1,3]]"')
    c.add_argument("--format", choices=["text", "json"], default="text")
    c.add_argument("--output")
    c.add_argument("--force", action="store_true", help="lift the subset-scan size guard")
    c.set_defaults(func=cmd_compute)

    v = sub.add_parser("verify", help="run identity suites over a corpus")
    v.add_argument("--suite", choices=["all", *SUITES], default="all")
    v.add_argument("--corpus", default="fixtures", help="fixtures | small:<n> | random:<seed>:<count> | mixed:<seed>:<count>")
    v.add_argument("--closed", action="store_true", help="small corpora without external legs")
    v.add_argument("--format", choices=["text", "json"], default="text")
    v.add_argument("--output")
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("gen", help="write graph JSON files")
    g.add_argument("--family", required=True, help="fixture name | small:<n> | random")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--count", type=int, default=1)
    g.add_argument("--vertices", type=int, default=6)
    g.add_argument("--valence", default="3,3", help="lo,hi valence range for random graphs")
    g.add_argument("--external-fraction", type=float, default=0.0)
    g.add_argument("--closed", action="store_true")
    g.add_argument("--out-dir", default=".")
    g.set_defaults(func=cmd_gen)

    e = sub.add_parser("eval", help="evaluate a polynomial at a rational point")
    e.add_argument("--input", required=True)
    e.add_argument("--assign", help='JSON object id->rational or list, e.g. {"0": "1/2"}')
    e.add_argument("--all", help="value for every half-edge variable (overridden by --assign)")
    e.add_argument("--r")
    e.add_argument("--q")
    e.add_argument("--method", choices=methods, default="auto")
    e.add_argument("--force", action="store_true")
    e.add_argument("--output")
    e.set_defaults(func=cmd_eval)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"corolla: error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
