"""Command-line front end.

    gridlock lo --family complete --param 5
    gridlock sg --family clique_matching --eval-at 2
    gridlock verify --input graph.json
    gridlock family triangle_chain 3 > chain.json
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import engine, families, oracles
from .graph import Graph, GraphError, is_connected
from .graphio import dumps, read_graph
from .polynomial import IntPolynomial

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3
EXIT_MISMATCH = 4

ORACLES = ("engine", "partitions", "bruteforce-interp")


def _add_input(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", metavar="PATH", help="graph file (JSON or edge list)")
    src.add_argument("--family", choices=families.FAMILY_NAMES)
    p.add_argument("--param", type=int, help="family parameter")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--budget-colorings", type=int, default=oracles.DEFAULT_COLORING_BUDGET,
                   metavar="N", help="max colorings one brute-force count may enumerate")
    p.add_argument("--budget-partitions", type=int, default=oracles.DEFAULT_PARTITION_BUDGET,
                   metavar="N", help="max set partitions the partition oracle may scan")
    p.add_argument("--budget-terms", type=int, default=engine.DEFAULT_TERM_BUDGET,
                   metavar="N", help="max terms the engine may expand")
    p.add_argument("--memo", action="store_true", help="depth-first engine with a term cache")
    p.add_argument("--workers", type=int, default=1, metavar="N")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized helpers")
    p.add_argument("-v", "--verbose", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gridlock",
        description="Locally-optimal (LO) and strict-gridlock (SG) polynomials of graphs.")
    sub = parser.add_subparsers(dest="verb", required=True)

    for verb, text in (("lo", "print the LO-polynomial"), ("sg", "print the SG-polynomial")):
        p = sub.add_parser(verb, help=text)
        _add_input(p)
        _add_common(p)
        p.add_argument("--oracle", choices=ORACLES, default=None,
                       help="computation route (default: engine)")
        p.add_argument("--eval-at", type=int, metavar="K",
                       help="print the count at K instead of the polynomial")

    p = sub.add_parser("eval", help="print the exact count of LO (or SG) colorings at K")
    _add_input(p)
    _add_common(p)
    p.add_argument("--k", "--eval-at", dest="k", type=int, required=True, metavar="K")
    p.add_argument("--sg", action="store_true", help="count strict gridlocks instead")
    p.add_argument("--oracle", choices=ORACLES, default=None)

    p = sub.add_parser("verify", help="compare engine, partition oracle and brute force")
    _add_input(p)
    _add_common(p)
    p.add_argument("--max-k", type=int, default=4, metavar="K",
                   help="largest k for brute-force samples (default 4)")

    p = sub.add_parser("family", help="emit a named graph as JSON")
    p.add_argument("name", choices=families.FAMILY_NAMES + ("random",))
    p.add_argument("param", nargs="?", type=int)
    p.add_argument("--edge-prob", type=float, default=0.5,
                   help="edge probability for the 'random' helper")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-v", "--verbose", action="store_true")

    p = sub.add_parser("partitions", help="list locally-optimal partitions")
    _add_input(p)
    _add_common(p)
    return parser


def load_graph(args) -> Graph:
    if args.input is not None:
        if args.param is not None:
            raise GraphError("--param only applies to --family")
        return read_graph(args.input)
    return families.build(args.family, args.param)


def _engine_kwargs(args) -> dict:
    return dict(memo=args.memo, workers=args.workers, budget_terms=args.budget_terms)


def lo_by(g: Graph, oracle: str, args) -> IntPolynomial:
    if oracle == "engine":
        return engine.lo_polynomial(g, **_engine_kwargs(args))
    if oracle == "partitions":
        return oracles.lo_polynomial_via_partitions(g, budget=args.budget_partitions)
    return oracles.lo_polynomial_via_interpolation(g, budget=args.budget_colorings,
                                                   workers=args.workers)


def sg_from_lo(g: Graph, lo: int | IntPolynomial, k: int | None = None):
    """Drop the consensus colorings, by the same rule as ``engine.sg_polynomial``."""
    if not g.roles:
        return 0 if k is not None else IntPolynomial()
    if engine.min_voting_degree(g) < 1:
        return lo
    return lo - k if k is not None else lo - IntPolynomial([0, 1])


def count_at(g: Graph, k: int, args, sg: bool) -> int:
    """Exact count at ``k``; enumerates directly unless an oracle was named."""
    if args.oracle is None and k ** len(g.roles) <= args.budget_colorings:
        value = oracles.brute_force_lo_count(g, k, budget=args.budget_colorings,
                                             workers=args.workers)
    else:
        value = lo_by(g, args.oracle or "engine", args)(k)
    return sg_from_lo(g, value, k) if sg else value


def _emit_poly(p: IntPolynomial, fmt: str, out) -> None:
    if fmt == "json":
        print(json.dumps(p.to_json()), file=out)
    else:
        print(str(p), file=out)


def _emit_int(x: int, fmt: str, out) -> None:
    print(json.dumps({"value": str(x)}) if fmt == "json" else x, file=out)


def cmd_poly(args, out) -> int:
    g = load_graph(args)
    sg = args.verb == "sg"
    if args.eval_at is not None:
        _emit_int(count_at(g, args.eval_at, args, sg), args.format, out)
        return EXIT_OK
    p = lo_by(g, args.oracle or "engine", args)
    if sg:
        p = sg_from_lo(g, p)
    _emit_poly(p, args.format, out)
    return EXIT_OK


def cmd_eval(args, out) -> int:
    g = load_graph(args)
    _emit_int(count_at(g, args.k, args, args.sg), args.format, out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    g = load_graph(args)
    n = len(g.roles)
    methods: dict[str, IntPolynomial] = {}
    notes = []
    for name in ORACLES:
        try:
            if name == "bruteforce-interp" and (n < 3 or not is_connected(g)):
                notes.append(f"{name}: skipped (needs a connected graph on >= 3 vertices)")
                continue
            methods[name] = lo_by(g, name, args)
        except (oracles.BudgetExceeded, engine.TermBudgetExceeded) as exc:
            notes.append(f"{name}: skipped ({exc})")
    ks = [k for k in range(args.max_k + 1) if k ** n <= args.budget_colorings]
    counts = {k: oracles.brute_force_lo_count(g, k, budget=args.budget_colorings,
                                              workers=args.workers) for k in ks}
    sources = len(methods) + (1 if ks else 0)
    rows = []
    ok = True
    polys = list(methods.values())
    agree_poly = all(p == polys[0] for p in polys)
    ok &= agree_poly
    for k in ks:
        vals = {name: p(k) for name, p in methods.items()}
        vals["bruteforce"] = counts[k]
        row_ok = len(set(vals.values())) == 1
        ok &= row_ok
        rows.append((k, vals, row_ok))
    if sources < 2:
        notes.append("fewer than two independent methods ran")
        ok = False

    if args.format == "json":
        print(json.dumps({
            "polynomials": {m: p.to_json() for m, p in methods.items()},
            "samples": [{"k": k, "values": {m: str(v) for m, v in vals.items()}, "agree": r}
                        for k, vals, r in rows],
            "notes": notes,
            "agree": ok,
        }), file=out)
    else:
        for m, p in methods.items():
            print(f"{m}: {p}", file=out)
        for k, vals, r in rows:
            body = " ".join(f"{m}={v}" for m, v in vals.items())
            print(f"k={k} {body} {'agree' if r else 'MISMATCH'}", file=out)
        for note in notes:
            print(f"note: {note}", file=out)
        print("verified: all methods agree" if ok else "verification FAILED", file=out)
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_family(args, out) -> int:
    if args.name == "random":
        if args.param is None or args.param < 1:
            raise GraphError("family random needs a vertex count >= 1")
        g = families.random_connected_graph(args.param, args.edge_prob, args.seed)
    else:
        g = families.build(args.name, args.param)
    print(dumps(g), file=out)
    return EXIT_OK


def cmd_partitions(args, out) -> int:
    g = load_graph(args)
    parts = oracles.enumerate_lo_partitions(g, budget=args.budget_partitions)
    if args.format == "json":
        print(json.dumps([[sorted(b) for b in p] for p in parts]), file=out)
    else:
        for p in parts:
            print(" | ".join("{" + ",".join(map(str, sorted(b))) + "}" for b in p), file=out)
    return EXIT_OK


COMMANDS = {"lo": cmd_poly, "sg": cmd_poly, "eval": cmd_eval, "verify": cmd_verify,
            "family": cmd_family, "partitions": cmd_partitions}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.verb](args, out)
    except (OSError, GraphError) as exc:
        print(f"gridlock: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (oracles.BudgetExceeded, engine.TermBudgetExceeded) as exc:
        print(f"gridlock: budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (engine.EngineError, oracles.InterpolationError, ValueError) as exc:
        print(f"gridlock: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
