"""``dagreduce`` command line.

Exit codes: ``solve``/``oracle`` return 10 for yes and 20 for no; ``verify``
returns 0 when every trial agrees and 3 otherwise. Usage and input errors
exit 1, exhausted budgets exit 2. Data goes to stdout (or ``-o``),
diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence, TextIO

from . import formats
from .errors import DagReduceError, InputTooLargeError, ResourceLimitError
from .harness import CampaignConfig, gen_cnf, gen_dag, gen_subsetsum, run_campaign
from .oracles import sat_oracle, subset_sum_oracle
from .reductions import (
    extract_assignment,
    extract_subset,
    reduce_sat_to_irrpath,
    reduce_ss_to_kpath,
    reduce_ss_to_nullpath,
)
from .solvers import (
    DEFAULT_NODE_BUDGET,
    DEFAULT_STATE_BUDGET,
    DEFAULT_TABLE_BUDGET,
    solve_irreducible_path,
    solve_k_weighted_path,
    solve_null_weighted_path,
    solve_path_of_length_k,
)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_RESOURCE = 2
EXIT_DISAGREE = 3
EXIT_YES = 10
EXIT_NO = 20

SOLVE_TAGS = {"null": "nullpath", "ksum": "kpath", "length": "lengthk", "irr": "irrpath"}
VERIFY_KINDS = {"nullpath": "nullpath", "kpath": "kpath", "irrpath": "irrpath", "solvers": "solver-equivalence"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; 2 is reserved for resource limits here
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as f:
        return f.read()


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)


def _int_pair(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(x) for x in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dagreduce", description=__doc__.splitlines()[0])
    parser.add_argument("-q", "--quiet", action="store_true", help="suppress diagnostics")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("reduce", help="reduce a SUBSET SUM or CNF instance to a DAG")
    p.add_argument("reduction", choices=["ss2null", "ss2k", "sat2irr"])
    p.add_argument("-i", "--input", default="-")
    p.add_argument("-o", "--output", default="-")

    p = sub.add_parser("solve", help="decide a path problem on a DAG file")
    p.add_argument("problem", choices=list(SOLVE_TAGS))
    p.add_argument("-i", "--input", default="-")
    p.add_argument("-o", "--output", default="-")
    p.add_argument("--k", type=int, dest="k")
    p.add_argument("--budget", type=int, help="state/node/table budget override")

    p = sub.add_parser("oracle", help="exhaustive SUBSET SUM or SAT check")
    p.add_argument("problem", choices=["subsetsum", "sat"])
    p.add_argument("-i", "--input", default="-")
    p.add_argument("-o", "--output", default="-")

    p = sub.add_parser("extract", help="map a path witness back to a subset or assignment")
    p.add_argument("what", choices=["subset", "assignment"])
    p.add_argument("-i", "--input", default="-", help="witness JSON from 'solve'")
    p.add_argument("--instance", required=True, help="the original .ss or .cnf file")
    p.add_argument("-o", "--output", default="-")

    p = sub.add_parser("verify", help="run a seeded round-trip campaign")
    p.add_argument("campaign", choices=list(VERIFY_KINDS))
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-n", type=int, default=12)
    p.add_argument("--values", type=_int_pair, default=(-20, 20), metavar="LO:HI")
    p.add_argument("--max-vars", type=int, default=6)
    p.add_argument("--max-clauses", type=int, default=5)
    p.add_argument("--max-width", type=int, default=3)
    p.add_argument("--dag-size", type=int, default=10)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("-o", "--output", default="-", help="report JSONL")
    p.add_argument("-v", "--verbose", action="store_true", help="print a trial counter")

    p = sub.add_parser("gen", help="generate a random instance")
    p.add_argument("what", choices=["subsetsum", "cnf", "dag"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-n", type=int, default=12)
    p.add_argument("--values", type=_int_pair, default=(-20, 20), metavar="LO:HI")
    p.add_argument("--max-vars", type=int, default=6)
    p.add_argument("--max-clauses", type=int, default=5)
    p.add_argument("--max-width", type=int, default=3)
    p.add_argument("--vertices", type=int, default=8)
    p.add_argument("--arc-probability", type=float, default=0.5)
    p.add_argument("--weights", type=_int_pair, default=(-5, 5), metavar="LO:HI")
    p.add_argument("-o", "--output", default="-")
    return parser


def _cmd_reduce(args, log: TextIO) -> int:
    text = _read(args.input)
    if args.reduction == "ss2null":
        dag = reduce_ss_to_nullpath(formats.parse_subsetsum(text))
    elif args.reduction == "ss2k":
        inst = reduce_ss_to_kpath(formats.parse_subsetsum(text))
        dag = inst.dag
        print(f"K={inst.k} P={inst.p}", file=log)
    else:
        irr = reduce_sat_to_irrpath(formats.parse_cnf(text))
        dag = irr.dag
        print(f"K={irr.k}", file=log)
    _write(args.output, formats.serialize_dag(dag))
    return EXIT_OK


def _cmd_solve(args, log: TextIO) -> int:
    if args.problem != "null" and args.k is None:
        raise UsageError(f"solve {args.problem} requires --k")
    dag = formats.parse_dag(_read(args.input))
    budget = args.budget
    if args.problem == "null":
        outcome = solve_null_weighted_path(dag, state_budget=budget or DEFAULT_STATE_BUDGET)
    elif args.problem == "ksum":
        outcome = solve_k_weighted_path(dag, args.k, table_budget=budget or DEFAULT_TABLE_BUDGET)
    elif args.problem == "length":
        outcome = solve_path_of_length_k(dag, args.k)
    else:
        outcome = solve_irreducible_path(dag, args.k, node_budget=budget or DEFAULT_NODE_BUDGET)
    k = None if args.problem == "null" else args.k
    _write(args.output, formats.emit_witness(outcome, SOLVE_TAGS[args.problem], dag, k))
    print(
        f"{SOLVE_TAGS[args.problem]}: {outcome.answer_text} "
        f"({outcome.stats.states_explored} states, {outcome.stats.elapsed:.6f}s)",
        file=log,
    )
    return EXIT_YES if outcome.answer else EXIT_NO


def _cmd_oracle(args, log: TextIO) -> int:
    text = _read(args.input)
    if args.problem == "subsetsum":
        found = subset_sum_oracle(formats.parse_subsetsum(text))
        payload = list(found.indices) if found else None
        key = "subset"
    else:
        found = sat_oracle(formats.parse_cnf(text))
        payload = [v if val else -v for v, val in found.values.items()] if found else None
        key = "assignment"
    answer = "yes" if found is not None else "no"
    obj = {"problem": args.problem, "answer": answer, key: payload}
    _write(args.output, json.dumps(obj, separators=(",", ":")) + "\n")
    print(f"{args.problem}: {answer}", file=log)
    return EXIT_YES if found is not None else EXIT_NO


def _cmd_extract(args, log: TextIO) -> int:
    doc = formats.parse_witness(_read(args.input))
    if doc.witness is None:
        raise UsageError("the witness document answers 'no'; nothing to extract")
    instance_text = _read(args.instance)
    if args.what == "subset":
        instance = formats.parse_subsetsum(instance_text)
        subset = extract_subset(doc.witness, instance)
        total = subset.total(instance)
        obj = {"subset": list(subset.indices), "sum": total}
        ok = subset.is_zero_sum(instance)
    else:
        formula = formats.parse_cnf(instance_text)
        assignment = extract_assignment(doc.witness, reduce_sat_to_irrpath(formula), formula)
        ok = formula.is_satisfied_by(assignment)
        obj = {"assignment": [v if val else -v for v, val in assignment.values.items()], "satisfies": ok}
    _write(args.output, json.dumps(obj, separators=(",", ":")) + "\n")
    print(f"extracted {args.what}: {'valid' if ok else 'INVALID'}", file=log)
    return EXIT_YES if ok else EXIT_NO


def _cmd_verify(args, log: TextIO) -> int:
    config = CampaignConfig(
        kind=VERIFY_KINDS[args.campaign],
        trials=args.trials,
        seed=args.seed,
        max_n=args.max_n,
        value_range=args.values,
        max_vars=args.max_vars,
        max_clauses=args.max_clauses,
        max_clause_width=args.max_width,
        dag_size=args.dag_size,
        workers=args.workers,
    )

    def progress(record):
        if args.verbose:
            print(f"trial {record.index + 1}/{config.trials}", file=log)

    report = run_campaign(config, progress=progress)
    _write(args.output, formats.serialize_report(report))
    print(
        f"{config.kind}: {report.agreements}/{report.trials} trials agree"
        + (f"; failures {report.failures}" if report.failures else ""),
        file=log,
    )
    return EXIT_OK if report.all_agree else EXIT_DISAGREE


def _cmd_gen(args, log: TextIO) -> int:
    if args.what == "subsetsum":
        text = formats.serialize_subsetsum(gen_subsetsum(args.max_n, args.values, args.seed))
    elif args.what == "cnf":
        text = formats.serialize_cnf(gen_cnf(args.max_vars, args.max_clauses, args.max_width, args.seed))
    else:
        text = formats.serialize_dag(gen_dag(args.vertices, args.arc_probability, args.weights, args.seed))
    _write(args.output, text)
    return EXIT_OK


COMMANDS = {
    "reduce": _cmd_reduce,
    "solve": _cmd_solve,
    "oracle": _cmd_oracle,
    "extract": _cmd_extract,
    "verify": _cmd_verify,
    "gen": _cmd_gen,
}


class _Null:
    def write(self, _text):
        return 0

    def flush(self):
        pass


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_INPUT
    log: TextIO = _Null() if args.quiet else sys.stderr  # type: ignore[assignment]
    try:
        return COMMANDS[args.command](args, log)
    except UsageError as exc:
        print(f"dagreduce: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ResourceLimitError, InputTooLargeError) as exc:
        print(f"dagreduce: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (DagReduceError, ValueError) as exc:
        print(f"dagreduce: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"dagreduce: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
