"""Command-line front end and serialization.

Exit codes: 0 success/planned, 2 open gap, 3 nonexistent, 4 verification
failure, 5 parse or I/O error.

Interchange format ("kfactor/1"): a JSON document with fields n, g, d and
factors as a list of lists of 4-integer edges [x, a, y, b].  Table format:
one factor per row, "x_a y_b" tokens separated by double spaces, after a
"# kfactor/1 n=.. g=.. d=.." header line.
"""

from __future__ import annotations

import argparse
import json
import sys

from .core import Decomposition, Edge, Factor, Instance, bound_A, edge_to_codeword
from .planner import PlanKind, execute, plan, render
from .search import search_of
from .verify import verify_decomposition

EXIT_OK = 0
EXIT_OPEN_GAP = 2
EXIT_NON_EXISTENT = 3
EXIT_VERIFY_FAIL = 4
EXIT_PARSE_IO = 5

FORMAT_VERSION = "kfactor/1"


class ParseError(ValueError):
    pass


def dumps_json(dec: Decomposition, canonical: bool = True) -> str:
    factors = []
    for f in dec.factors:
        edges = [[e.u.part, e.u.symbol, e.v.part, e.v.symbol] for e in f.edges]
        if canonical:
            edges.sort()
        factors.append(edges)
    doc = {
        "version": FORMAT_VERSION,
        "n": dec.instance.n,
        "g": dec.instance.g,
        "d": dec.distance,
        "factors": factors,
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def dumps_table(dec: Decomposition, canonical: bool = True) -> str:
    lines = [f"# {FORMAT_VERSION} n={dec.instance.n} g={dec.instance.g} d={dec.distance}"]
    for f in dec.factors:
        edges = list(f.edges)
        if canonical:
            edges.sort()
        lines.append("  ".join(f"{e.u.part}_{e.u.symbol} {e.v.part}_{e.v.symbol}" for e in edges))
    return "\n".join(lines) + "\n"


def loads_json(text: str) -> Decomposition:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}")
    for key in ("version", "n", "g", "d", "factors"):
        if key not in doc:
            raise ParseError(f"missing field {key!r}")
    if doc["version"] != FORMAT_VERSION:
        raise ParseError(f"unsupported version {doc['version']!r}")
    inst = Instance(doc["n"], doc["g"])
    factors = []
    for idx, lst in enumerate(doc["factors"], start=1):
        edges = []
        for quad in lst:
            if len(quad) != 4:
                raise ParseError(f"factor {idx}: edge {quad!r} is not a 4-integer list")
            edges.append(Edge.make(*quad))
        factors.append(Factor(inst, f"F_{idx}", tuple(edges)))
    return Decomposition(inst, doc["d"], tuple(factors))


def loads_table(text: str) -> Decomposition:
    header = None
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if header is None:
                header = _parse_header(line, lineno)
            continue
        rows.append((lineno, line))
    if header is None:
        raise ParseError("missing '# kfactor/1 n=.. g=.. d=..' header line")
    n, g, d = header
    inst = Instance(n, g)
    factors = []
    for idx, (lineno, line) in enumerate(rows, start=1):
        edges = []
        for token in line.split("  "):
            token = token.strip()
            if not token:
                continue
            try:
                left, right = token.split(" ")
                x, a = left.split("_")
                y, b = right.split("_")
                edges.append(Edge.make(int(x), int(a), int(y), int(b)))
            except (ValueError, TypeError):
                col = line.index(token) + 1
                raise ParseError(f"line {lineno}, column {col}: bad edge token {token!r}")
        factors.append(Factor(inst, f"F_{idx}", tuple(edges)))
    return Decomposition(inst, d, tuple(factors))


def _parse_header(line: str, lineno: int):
    parts = line.lstrip("#").split()
    if not parts or parts[0] != FORMAT_VERSION:
        raise ParseError(f"line {lineno}: header must start with '# {FORMAT_VERSION}'")
    vals = {}
    for p in parts[1:]:
        if "=" in p:
            k, v = p.split("=", 1)
            vals[k] = int(v)
    for k in ("n", "g", "d"):
        if k not in vals:
            raise ParseError(f"line {lineno}: header missing {k}=")
    return vals["n"], vals["g"], vals["d"]


def load_path(path: str) -> Decomposition:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}")
    if text.lstrip().startswith("{"):
        return loads_json(text)
    return loads_table(text)


def _write_output(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_construct(args) -> int:
    status = plan(args.n, args.g, args.d)
    if status.kind is PlanKind.OPEN_GAP:
        print(
            f"open gap: existence of an optimal decomposition for (n,g,d)="
            f"({args.n},{args.g},{args.d}) is unresolved; clause ({status.clause.index}): "
            f"{status.clause.text}",
            file=sys.stderr,
        )
        return EXIT_OPEN_GAP
    if status.kind is PlanKind.NON_EXISTENT:
        print(f"nonexistent: {status.reason}", file=sys.stderr)
        return EXIT_NON_EXISTENT
    dec = execute(status.recipe)
    report = verify_decomposition(dec)
    if not report.ok:
        print(f"internal verification failure: {report.first().message}", file=sys.stderr)
        return EXIT_VERIFY_FAIL
    text = dumps_table(dec, canonical=not args.raw) if args.format == "table" else dumps_json(
        dec, canonical=not args.raw
    )
    try:
        _write_output(text, args.out)
        if args.figure:
            from .viz import render_decomposition

            render_decomposition(dec, args.figure)
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_PARSE_IO
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        dec = load_path(args.input)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE_IO
    report = verify_decomposition(dec)
    if report.ok:
        print(
            f"PASS: {report.stats['factors']}/{report.stats['expected_factors']} factors, "
            f"{report.stats['edges_covered']}/{report.stats['edges_total']} edges"
        )
        return EXIT_OK
    for fail in report.failures:
        print(f"FAIL [{fail.code}]: {fail.message}")
    return EXIT_VERIFY_FAIL


def cmd_plan(args) -> int:
    status = plan(args.n, args.g, args.d)
    if status.kind is PlanKind.PLANNED:
        print(render(status.recipe))
        return EXIT_OK
    if status.kind is PlanKind.OPEN_GAP:
        print(f"open gap, clause ({status.clause.index}): {status.clause.text}")
        return EXIT_OPEN_GAP
    print(f"nonexistent: {status.reason}")
    return EXIT_NON_EXISTENT


def cmd_bounds(args) -> int:
    try:
        print(bound_A(args.n, args.d, args.w, args.g + 1))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE_IO
    return EXIT_OK


def cmd_search(args) -> int:
    try:
        outcome = search_of(args.n, args.g, args.budget, seed=args.seed)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE_IO
    if outcome.status == "infeasible":
        print("infeasible: gn odd with n > g", file=sys.stderr)
        return EXIT_NON_EXISTENT
    if outcome.status == "exhausted":
        print(f"exhausted after {outcome.nodes} nodes (complete={outcome.complete})", file=sys.stderr)
        return EXIT_OPEN_GAP
    print(f"found after {outcome.nodes} nodes", file=sys.stderr)
    text = dumps_table(outcome.decomposition) if args.format == "table" else dumps_json(
        outcome.decomposition
    )
    try:
        _write_output(text, args.out)
        if args.figure:
            from .viz import render_decomposition

            render_decomposition(outcome.decomposition, args.figure)
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_PARSE_IO
    return EXIT_OK


def cmd_export_code(args) -> int:
    try:
        dec = load_path(args.input)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE_IO
    if not (1 <= args.factor <= len(dec.factors)):
        print(f"error: factor {args.factor} out of range 1..{len(dec.factors)}", file=sys.stderr)
        return EXIT_PARSE_IO
    for e in dec.factors[args.factor - 1].edges:
        print(" ".join(str(c) for c in edge_to_codeword(dec.instance, e)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kfactor",
        description="Construct, plan, verify and search optimal decompositions of K_{n x g}.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="plan, execute, verify and write a decomposition")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--d", type=int, default=3, choices=(2, 3, 4))
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.add_argument("--out", default=None, help="output path (default: stdout)")
    p.add_argument("--raw", action="store_true", help="keep construction edge order")
    p.add_argument("--figure", default=None, help="also render the edge-color matrix to this file")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="verify a decomposition file")
    p.add_argument("--in", dest="input", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("plan", help="print the recipe tree for (n, g, d)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--d", type=int, default=3, choices=(2, 3, 4))
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("bounds", help="print the maximum code size A_{g+1}(n, d, w)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--w", type=int, default=2)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("search", help="backtracking search for an OF(n, g)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--budget", type=int, default=10**6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.add_argument("--out", default=None)
    p.add_argument("--figure", default=None)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("export-code", help="print one factor's codewords")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--factor", type=int, required=True)
    p.set_defaults(func=cmd_export_code)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
