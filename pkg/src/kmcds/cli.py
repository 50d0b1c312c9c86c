"""Command-line interface.

Exit codes: 0 success, 1 ``verify`` failure, 2 bad input or flags,
3 infeasible instance, 4 size limit exceeded.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .bench import format_table, run_bench
from .connectivity import is_k_connected, vertex_connectivity
from .domination import domination_level, is_m_dominating
from .exceptions import InfeasibleError, KMCDSError, ParseError, PreconditionError, SizeLimitError
from .general import solve_general
from .graph import Instance, emit_instance, emit_solution, parse_instance, parse_solution
from .oracle import exact_kmcds
from .udg import generate_udg, solve_udg

EXIT_FAIL, EXIT_USAGE, EXIT_INFEASIBLE, EXIT_SIZE = 1, 2, 3, 4


def _positive(text):
    val = int(text)
    if val < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return val


def build_parser():
    parser = argparse.ArgumentParser(prog="kmcds", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-udg", help="write a random unit-disc instance")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--side", type=float, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--weights", choices=("unit", "random"), default="unit")
    p.add_argument("--k", type=_positive, default=1)
    p.add_argument("--m", type=_positive, default=None)
    p.add_argument("--out", required=True)

    p = sub.add_parser("solve", help="run an approximation algorithm")
    p.add_argument("--input", required=True)
    p.add_argument("--mode", choices=("general", "udg"), default="general")
    p.add_argument("--k", type=_positive, help="defaults to the instance header")
    p.add_argument("--m", type=_positive, help="defaults to the instance header")
    p.add_argument("--out")
    p.add_argument("--trace", action="store_true", help="print per-phase weights to stderr")

    p = sub.add_parser("verify", help="check a solution file against an instance")
    p.add_argument("--input", required=True)
    p.add_argument("--solution", required=True)
    p.add_argument("--k", type=_positive)
    p.add_argument("--m", type=_positive)

    p = sub.add_parser("exact", help="exact branch and bound (at most 16 nodes)")
    p.add_argument("--input", required=True)
    p.add_argument("--k", type=_positive)
    p.add_argument("--m", type=_positive)
    p.add_argument("--out")

    p = sub.add_parser("bench", help="seeded benchmark table")
    p.add_argument("--mode", choices=("general", "udg"), default="general")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--trials", type=_positive, required=True)
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--m", type=_positive, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--side", type=float, default=2.0, help="udg square side")
    p.add_argument("--p-edge", type=float, default=0.5, help="general edge probability")
    p.add_argument("--weights", choices=("unit", "random"), default="random")
    p.add_argument("--jobs", type=_positive, default=1)
    p.add_argument("--no-oracle", action="store_true")
    return parser


def _load(path):
    return parse_instance(Path(path).read_bytes())


def _km(args, inst):
    k = args.k if args.k is not None else inst.k
    m = args.m if args.m is not None else inst.m
    if not m >= k:
        raise PreconditionError(f"need m >= k, got k={k}, m={m}")
    return k, m


def _write(data: bytes, out):
    if out:
        Path(out).write_bytes(data)
    else:
        sys.stdout.write(data.decode("utf-8"))


def _cmd_gen(args):
    inst = generate_udg(args.n, args.side, args.seed, args.weights)
    m = args.m if args.m is not None else args.k
    inst = Instance(inst.graph, args.k, max(m, args.k))
    Path(args.out).write_bytes(emit_instance(inst))
    return 0


def _cmd_solve(args):
    inst = _load(args.input)
    k, m = _km(args, inst)
    G = inst.graph
    if args.mode == "general":
        sol = solve_general(G, k, m, terminals=inst.terminals)
    else:
        sol = solve_udg(G, k, m, terminals=inst.terminals)
    _write(sol.to_bytes(), args.out)
    if args.trace:
        for phase, w in sol.trace.items():
            print(f"{phase}\t{w}", file=sys.stderr)
    return 0


def _cmd_verify(args):
    inst = _load(args.input)
    k, m = _km(args, inst)
    rec = parse_solution(Path(args.solution).read_bytes())
    G = inst.graph
    bad = [v for v in rec.nodes if v not in G]
    problems = []
    if bad:
        problems.append(f"unknown nodes {bad[:5]}")
    else:
        S = set(rec.nodes)
        if not is_k_connected(G.induced(S), k):
            problems.append(f"not {k}-connected")
        if not is_m_dominating(G, S, m):
            problems.append(f"not {m}-dominating")
        w = G.weight_of(S)
        if abs(w - rec.weight) > 1e-9:
            problems.append(f"weight {rec.weight} does not match {w}")
    if problems:
        print("FAIL: " + "; ".join(problems))
        return EXIT_FAIL
    print("PASS")
    return 0


def _cmd_exact(args):
    inst = _load(args.input)
    k, m = _km(args, inst)
    res = exact_kmcds(inst.graph, None, k, m)
    S = res.nodes
    sub = inst.graph.induced(S)
    _write(emit_solution(S, res.weight, vertex_connectivity(sub), domination_level(inst.graph, S)), args.out)
    return 0


def _cmd_bench(args):
    if not args.m >= args.k:
        raise PreconditionError(f"need m >= k, got k={args.k}, m={args.m}")
    results = run_bench(
        args.mode, args.n, args.trials, args.k, args.m, args.seed,
        side=args.side, weights=args.weights, p_edge=args.p_edge, jobs=args.jobs,
        oracle=not args.no_oracle,
    )
    sys.stdout.write(format_table(results, args.mode))
    return 0


COMMANDS = {
    "gen-udg": _cmd_gen,
    "solve": _cmd_solve,
    "verify": _cmd_verify,
    "exact": _cmd_exact,
    "bench": _cmd_bench,
}


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (ParseError, PreconditionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except SizeLimitError as exc:
        print(f"size limit: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except KMCDSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
