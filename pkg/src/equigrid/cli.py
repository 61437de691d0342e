"""Command-line interface.

Exit codes: 0 = success / feasible, 2 = infeasible (or verification /
cross-check failure), 1 = usage or I/O error.  Output is line-oriented
``name=value`` pairs; reproducibility inputs (seeds, budgets) are echoed
on ``#``-prefixed header lines.
"""
from __future__ import annotations

import argparse
import sys

from . import annealer, builder, feasibility, grid, halftone, oracle
from .errors import EquigridError, Infeasible, SizeLimit

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INFEASIBLE = 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _add_dims(sub):
    for name in ("m", "n", "k", "l"):
        sub.add_argument(name, type=int)


def _dims(args) -> grid.Dims:
    try:
        return grid.Dims(args.m, args.n, args.k, args.l)
    except ValueError as e:
        raise _UsageError(str(e)) from None


def _make_parser() -> _Parser:
    p = _Parser(prog="equigrid", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("decide", help="decide feasibility of (m,n,k,l)")
    _add_dims(s)

    s = sub.add_parser("construct", help="build a verified matrix")
    _add_dims(s)
    s.add_argument("-o", "--output")
    s.add_argument("--budget", type=int, default=builder.DEFAULT_BUILD_BUDGET)

    s = sub.add_parser("verify", help="report discrepancy of a matrix file")
    s.add_argument("file")
    s.add_argument("k", type=int)
    s.add_argument("l", type=int)

    s = sub.add_parser("oracle", help="exhaustive ground-truth search")
    _add_dims(s)
    s.add_argument("--count", action="store_true")
    s.add_argument("--budget", type=int, default=oracle.DEFAULT_BUDGET)

    s = sub.add_parser("anneal", help="heuristic discrepancy minimization")
    _add_dims(s)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--iters", type=int, required=True)
    s.add_argument("--restarts", type=int, default=1)
    s.add_argument("--objective", choices=("max", "l2"), default="l2")
    s.add_argument("-o", "--output")

    s = sub.add_parser("dither", help="halftone a PGM image with a matrix")
    s.add_argument("-m", "--matrix", required=True)
    s.add_argument("-i", "--input", required=True)
    s.add_argument("-o", "--output", required=True)
    s.add_argument("--ascii", action="store_true")

    s = sub.add_parser("survey", help="feasibility table over all small tuples")
    s.add_argument("--max-mn", type=int, required=True)
    s.add_argument("--check-oracle", action="store_true")
    s.add_argument("--budget", type=int, default=oracle.DEFAULT_BUDGET)
    return p


def _cmd_decide(args, out) -> int:
    dims = _dims(args)
    v = feasibility.decide(dims)
    red = feasibility.reduce_dims(dims)
    word = "feasible" if v.feasible else "infeasible"
    print(f"{word} {v.reason.value}", file=out)
    print(f"g={red.g}", file=out)
    print(f"h={red.h}", file=out)
    print(f"target_x2={grid.target_sum_x2(dims)}", file=out)
    return EXIT_OK if v.feasible else EXIT_INFEASIBLE


def _cmd_construct(args, out) -> int:
    dims = _dims(args)
    try:
        board = builder.build(dims, budget=args.budget)
    except Infeasible as e:
        print(f"infeasible {e.reason.value}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except SizeLimit as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    text = grid.write_matrix(board)
    if args.output:
        with open(args.output, "w", encoding="ascii") as f:
            f.write(text)
    else:
        out.write(text)
    return EXIT_OK


def _cmd_verify(args, out) -> int:
    with open(args.file, encoding="ascii") as f:
        board = grid.read_matrix(f.read())
    report = grid.discrepancy_report(board, args.k, args.l)
    for name in (
        "target_x2",
        "min_sum",
        "max_sum",
        "spread",
        "max_abs_dev_x2",
        "l2_dev_x4",
    ):
        print(f"{name}={getattr(report, name)}", file=out)
    return EXIT_OK if report.spread == 0 else EXIT_INFEASIBLE


def _cmd_oracle(args, out) -> int:
    dims = _dims(args)
    print(f"# budget={args.budget}", file=out)
    if args.count:
        count = oracle.count_witnesses(dims, budget=args.budget)
        print(f"count={count}", file=out)
        return EXIT_OK if count > 0 else EXIT_INFEASIBLE
    result = oracle.oracle_decide(dims, budget=args.budget)
    print(f"status={result.status.value}", file=out)
    print(f"nodes={result.nodes_explored}", file=out)
    if result.witness is not None:
        out.write(grid.write_matrix(result.witness))
    return EXIT_OK if result.status is oracle.Status.FEASIBLE else EXIT_INFEASIBLE


def _cmd_anneal(args, out) -> int:
    dims = _dims(args)
    objective = (
        annealer.AnnealObjective.MAX_ABS_DEV_X2
        if args.objective == "max"
        else annealer.AnnealObjective.L2_DEV_X4
    )
    params = annealer.AnnealParams(
        seed=args.seed,
        iterations=args.iters,
        restarts=args.restarts,
        objective=objective,
    )
    outcome = annealer.anneal(dims, params)
    print(
        f"# seed={args.seed} iters={args.iters} restarts={args.restarts} "
        f"objective={args.objective}",
        file=out,
    )
    print(
        f"best_objective={annealer.objective_value(outcome.best_report, objective)}",
        file=out,
    )
    print(f"max_abs_dev_x2={outcome.best_report.max_abs_dev_x2}", file=out)
    print(f"l2_dev_x4={outcome.best_report.l2_dev_x4}", file=out)
    print(f"spread={outcome.best_report.spread}", file=out)
    print(f"accepted={outcome.accepted_moves}", file=out)
    print(f"evaluations={outcome.evaluations}", file=out)
    text = grid.write_matrix(outcome.best_board)
    if args.output:
        with open(args.output, "w", encoding="ascii") as f:
            f.write(text)
    else:
        out.write(text)
    return EXIT_OK


def _cmd_dither(args, out) -> int:
    with open(args.matrix, encoding="ascii") as f:
        board = grid.read_matrix(f.read())
    with open(args.input, "rb") as f:
        image = halftone.read_pgm(f.read())
    bits = halftone.dither(image, board)
    mode = "P1" if args.ascii else "P4"
    with open(args.output, "wb") as f:
        f.write(halftone.write_pbm(bits, mode))
    return EXIT_OK


def _cmd_survey(args, out) -> int:
    max_mn = args.max_mn
    print(f"# max_mn={max_mn} check_oracle={args.check_oracle}", file=out)
    all_agree = True
    for m in range(1, max_mn + 1):
        for n in range(1, max_mn // m + 1):
            for k in range(1, m + 1):
                for l in range(1, n + 1):
                    dims = grid.Dims(m, n, k, l)
                    v = feasibility.decide(dims)
                    red = feasibility.reduce_dims(dims)
                    line = (
                        f"{m} {n} {k} {l} {red.g} {red.h} "
                        f"{'true' if v.feasible else 'false'} {v.reason.value}"
                    )
                    if args.check_oracle:
                        result = oracle.oracle_decide(dims, budget=args.budget)
                        agree = (
                            result.status is oracle.Status.FEASIBLE
                        ) == v.feasible
                        line += f" oracle={result.status.value}"
                        if not agree:
                            line += " DISAGREE"
                            all_agree = False
                    print(line, file=out)
    return EXIT_OK if all_agree else EXIT_USAGE


_COMMANDS = {
    "decide": _cmd_decide,
    "construct": _cmd_construct,
    "verify": _cmd_verify,
    "oracle": _cmd_oracle,
    "anneal": _cmd_anneal,
    "dither": _cmd_dither,
    "survey": _cmd_survey,
}


def run(argv, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = _make_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args, out)
    except _UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (EquigridError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
