"""Command-line interface: ``tdgraph <command> ...``.

Exit status is 0 on success, 1 for usage errors and 2 for bad input data.
Reports are ``key=value`` lines.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import _backend
from .bench import format_table, measure
from .bmm import BoolMatrix, multiply_BC, multiply_via_neighbors
from .encoding import EncodedGraph, encode
from .errors import TDGraphError
from .lowerbound import DEFAULT_BUDGET, enumerate_lowerbound_family, gen_lowerbound, parse_spec, random_spec
from .model import format_representation, normalize, parse_representation
from .oracle import gen_random
from .query import QueryEngine, QueryStats


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _label(token: str):
    try:
        return int(token)
    except ValueError:
        return token


def cmd_build(args) -> int:
    rep = parse_representation(Path(args.input).read_text())
    graph = encode(normalize(rep), spacing=args.shortcut_spacing, store_degrees=args.store_degrees)
    blob = graph.to_bytes()
    if not args.output:
        raise UsageError("build needs --output for the artifact")
    Path(args.output).write_bytes(blob)
    lines = graph.space_report().lines() + [f"artifact_bytes={len(blob)}"]
    print("\n".join(lines))
    return 0


def cmd_query(args) -> int:
    graph = EncodedGraph.from_bytes(Path(args.input).read_bytes())
    engine = QueryEngine(graph)
    stats = QueryStats() if args.stats else None
    op, operands = args.op, args.operands
    arity = {"adj": 2, "neighbor": 1, "deg": 1}[op]
    if len(operands) != arity:
        raise UsageError(f"{op} takes {arity} vertex label(s)")
    labels = [_label(x) for x in operands]
    try:
        if op == "adj":
            result = str(engine.adj_label(*labels, stats=stats)).lower()
        elif op == "neighbor":
            result = " ".join(str(x) for x in engine.neighbor_label(labels[0], stats=stats))
        else:
            result = str(engine.deg_label(labels[0], stats=stats))
    except KeyError as exc:
        raise TDGraphError(exc.args[0]) from None
    print(result)
    if stats is not None:
        print("\n".join(stats.lines()))
    return 0


def cmd_gen(args) -> int:
    if args.kind == "random":
        _need(args, "n", "t", "d")
        rep = gen_random(args.n, args.t, args.d, args.seed, density=args.density)
        _emit(format_representation(rep), args.output)
        return 0
    if args.input:
        spec = parse_spec(Path(args.input).read_text())
    else:
        _need(args, "n", "m", "d", "t")
        spec = random_spec(args.n, args.m, args.d, args.t, args.seed)
    inst = gen_lowerbound(spec)
    head = (
        f"# colored vertices 1..{spec.colored} (label = color), "
        f"dependent vertices {spec.colored + 1}..{spec.n}\n"
    )
    if not inst.dimension1_disjoint:
        head += "# note: some dependent vertex has boxes overlapping on axis 1\n"
    _emit(head + format_representation(inst.representation), args.output)
    return 0


def cmd_enumerate(args) -> int:
    _need(args, "n", "m", "d", "t")
    res = enumerate_lowerbound_family(args.n, args.m, args.d, args.t, budget=args.budget)
    print("\n".join(res.lines()))
    print(res.summary())
    return 0


def cmd_bmm(args) -> int:
    mats = [BoolMatrix.from_text(Path(p).read_text()) for p in args.matrices]
    if len(mats) == 1:
        out = multiply_via_neighbors(mats[0])
    elif len(mats) == 2:
        out = multiply_BC(*mats)
    else:
        raise UsageError("bmm takes one matrix (A A^T) or two (B C)")
    _emit(out.to_text(), args.output)
    return 0


def cmd_bench(args) -> int:
    _need(args, "n", "t", "d")
    kernels = _backend.available() if args.kernel == "both" else [args.kernel]
    rows = [
        measure(n, args.t, args.d, seed=args.seed, queries=args.queries, backend=k)
        for k in kernels
        for n in args.n
    ]
    _emit(format_table(rows), args.output)
    return 0


def _need(args, *names):
    missing = [f"--{x}" for x in names if getattr(args, x, None) is None]
    if missing:
        raise UsageError(f"missing {' '.join(missing)}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tdgraph", description="Succinct box-intersection graphs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("build", help="encode a representation file")
    b.add_argument("--input", required=True)
    b.add_argument("--output")
    b.add_argument("--shortcut-spacing", type=int)
    b.add_argument("--store-degrees", action="store_true")
    b.set_defaults(func=cmd_build)

    q = sub.add_parser("query", help="query an artifact")
    q.add_argument("--input", required=True)
    q.add_argument("--stats", action="store_true")
    q.add_argument("op", choices=["adj", "neighbor", "deg"])
    q.add_argument("operands", nargs="+")
    q.set_defaults(func=cmd_query)

    g = sub.add_parser("gen", help="generate a representation")
    g.add_argument("kind", choices=["random", "lowerbound"])
    g.add_argument("--input", help="lower-bound spec file")
    g.add_argument("--output")
    for name in ("n", "t", "d", "m"):
        g.add_argument(f"--{name}", type=int)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--density", type=float, default=1.0)
    g.set_defaults(func=cmd_gen)

    e = sub.add_parser("enumerate", help="exhaustively check the lower-bound family")
    for name in ("n", "m", "d", "t"):
        e.add_argument(f"--{name}", type=int)
    e.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    e.set_defaults(func=cmd_enumerate)

    m = sub.add_parser("bmm", help="Boolean matrix product through neighbor queries")
    m.add_argument("matrices", nargs="+")
    m.add_argument("--output")
    m.set_defaults(func=cmd_bmm)

    r = sub.add_parser("bench", help="time queries and measure space")
    r.add_argument("--n", type=int, nargs="+")
    r.add_argument("--t", type=int)
    r.add_argument("--d", type=int)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--queries", type=int, default=2000)
    r.add_argument("--kernel", choices=["python", "cython", "both"], default=_backend.DEFAULT)
    r.add_argument("--output")
    r.set_defaults(func=cmd_bench)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"tdgraph: error: {exc}", file=sys.stderr)
        return 1
    except (TDGraphError, ValueError, OSError) as exc:
        print(f"tdgraph: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
