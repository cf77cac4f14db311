"""Command-line entry point: ``hornlearn <command> ...``.

Exit codes: 0 success, 1 negative outcome (not normal form, learned formula
not equivalent, traces differ), 2 parse error, 3 teacher error, 4 loop limit,
5 I/O error.
"""

from __future__ import annotations

import argparse
import difflib
import logging
import os
import random
import sys

from . import __version__
from .adversary import ScriptedTeacher, build_fn_family, build_fn_script, build_trivial_ordered_script
from .core import HornFormula, MalformedInput, equivalent
from .corpus import random_canonical_target
from .learner import LoopLimitExceeded, Policy, RunConfig, RunResult, run
from .normalize import canonical_order, is_normal_form, normalize
from .teachers import CountingTeacher, HonestTeacher, Teacher, TeacherError
from .textio import (
    ParseError,
    StatsRow,
    dump_trace,
    format_formula,
    format_script,
    parse_formula,
    parse_script,
    trace_lines,
    write_stats,
)

log = logging.getLogger("hornlearn")

ALGOS = {"afp": Policy.FIRST, "afp-star": Policy.ALL}

EXIT_OK, EXIT_NEGATIVE, EXIT_PARSE, EXIT_TEACHER, EXIT_LOOP, EXIT_IO = range(6)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _seed(args: argparse.Namespace) -> int:
    env = os.environ.get("HORN_SEED")
    return int(env) if env else args.seed


def _scan_label(policy: Policy, paper_literal: bool) -> str:
    return f"{policy.value}/{'member-first' if paper_literal else 'subset-first'}"


def make_teacher(spec: str, target: HornFormula, strict: bool = False, interleave: bool = False) -> Teacher:
    """Build a teacher from a ``--teacher`` value: ``honest``, ``ordered`` or ``script:<path>``."""
    if spec == "honest":
        return HonestTeacher(target)
    if spec == "ordered":
        script = build_trivial_ordered_script(normalize(target))
        return ScriptedTeacher(target, script, strict=strict, interleave_positives=True)
    if spec.startswith("script:"):
        script = parse_script(_read(spec[len("script:"):]), target.n)
        return ScriptedTeacher(target, script, strict=strict, interleave_positives=interleave)
    raise ValueError(f"unknown teacher {spec!r}")


def _run(args: argparse.Namespace, target: HornFormula, algo: str) -> tuple[RunResult, CountingTeacher]:
    teacher = CountingTeacher(make_teacher(args.teacher, target, args.strict, args.interleave_positives))
    config = RunConfig(membership_first=args.paper_literal_scan)
    return run(teacher, ALGOS[algo], config), teacher


def cmd_normalize(args: argparse.Namespace) -> int:
    f = parse_formula(_read(args.input))
    if args.check:
        report = is_normal_form(f)
        for v in report.violations:
            print(v, file=sys.stderr)
        return EXIT_OK if report else EXIT_NEGATIVE
    _write(args.output, format_formula(normalize(f)))
    return EXIT_OK


def cmd_learn(args: argparse.Namespace) -> int:
    target = parse_formula(_read(args.target))
    result, counter = _run(args, target, args.algo)
    learned = canonical_order(result.hypothesis)
    if args.trace:
        _write(args.trace, dump_trace(result.trace, target.n))
    if args.stats:
        row = StatsRow.from_stats(
            result.stats, algorithm=args.algo, policy=_scan_label(ALGOS[args.algo], args.paper_literal_scan),
            n=target.n, m=len(normalize(target)), teacher=args.teacher, seed=_seed(args))
        write_stats(args.stats, [row])
    s = result.stats
    sys.stdout.write(format_formula(learned))
    print(f"# eq_queries={s.eq_queries} member_queries={s.member_queries} "
          f"pos_ces={s.pos_ces} neg_ces={s.neg_ces} refinements={s.refinements} appends={s.appends}")
    if counter.snapshot() != (s.member_queries, s.eq_queries):
        log.error("teacher counters %s disagree with the trace", counter.snapshot())
        return EXIT_NEGATIVE
    return EXIT_OK if equivalent(learned, target) is None else EXIT_NEGATIVE


def cmd_compare(args: argparse.Namespace) -> int:
    target = parse_formula(_read(args.target))
    runs = {}
    for algo in (args.left, args.right):
        runs[algo] = _run(args, target, algo)[0]
    left, right = runs[args.left], runs[args.right]
    left_lines = trace_lines(left.trace, target.n)
    right_lines = trace_lines(right.trace, target.n)
    diff = "".join(
        line + "\n"
        for line in difflib.unified_diff(left_lines, right_lines, args.left, args.right, lineterm="")
    )
    if args.diff:
        _write(args.diff, diff)
    elif diff:
        sys.stdout.write(diff)
    if args.trace_prefix:
        for algo, r in runs.items():
            _write(f"{args.trace_prefix}{algo}.json", dump_trace(r.trace, target.n))
    for name, r in ((args.left, left), (args.right, right)):
        print(f"# {name}: eq_queries={r.stats.eq_queries} member_queries={r.stats.member_queries}",
              file=sys.stderr)
    return EXIT_OK if not diff else EXIT_NEGATIVE


def cmd_family(args: argparse.Namespace) -> int:
    _write(args.output, f"# f_{args.n}\n" + format_formula(build_fn_family(args.n)))
    return EXIT_OK


def cmd_script(args: argparse.Namespace) -> int:
    text = format_script(build_fn_script(args.n, args.repeat_positives), 2 * args.n + 1)
    _write(args.output, f"# counterexample script for f_{args.n}\n" + text)
    return EXIT_OK


def parse_range(text: str) -> range:
    lo, sep, hi = text.partition("..")
    try:
        lo_i = int(lo)
        hi_i = int(hi) if sep else lo_i
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or A..B, got {text!r}") from None
    if lo_i < 1 or hi_i < lo_i:
        raise argparse.ArgumentTypeError(f"bad range {text!r}")
    return range(lo_i, hi_i + 1)


def bench_rows(ns: range, seed: int, random_targets: int = 1) -> list[StatsRow]:
    rows = []
    for n in ns:
        family = build_fn_family(n)
        m = len(family)
        for algo, policy in ALGOS.items():
            teacher = ScriptedTeacher(family, build_fn_script(n), strict=True)
            r = run(teacher, policy)
            rows.append(StatsRow.from_stats(r.stats, algorithm=algo, policy=_scan_label(policy, False),
                                            n=family.n, m=m, teacher="script:fn", seed=seed))
        rng = random.Random(seed * 1000 + n)
        for _ in range(random_targets):
            target = random_canonical_target(rng, 2 * n + 1, 2 * n)
            for algo, policy in ALGOS.items():
                r = run(HonestTeacher(target), policy)
                rows.append(StatsRow.from_stats(r.stats, algorithm=algo, policy=_scan_label(policy, False),
                                                n=target.n, m=len(target), teacher="honest", seed=seed))
    return rows


def cmd_bench(args: argparse.Namespace) -> int:
    rows = bench_rows(args.n, _seed(args), args.random_targets)
    write_stats(args.csv, rows, append=args.append)
    print(f"{'algorithm':<9} {'teacher':<10} {'n':>3} {'m':>3} {'eq':>5} {'member':>7}")
    for r in rows:
        print(f"{r.algorithm:<9} {r.teacher:<10} {r.n:>3} {r.m:>3} {r.eq_queries:>5} {r.member_queries:>7}")
    return EXIT_OK


def _add_run_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--teacher", default="honest", help="honest | ordered | script:<path>")
    p.add_argument("--strict", action="store_true", help="error on a scripted entry that is not a counterexample")
    p.add_argument("--interleave-positives", action="store_true",
                   help="serve honest positives before retrying a stale scripted entry")
    p.add_argument("--paper-literal-scan", action="store_true",
                   help="ask the membership query before the subset test")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hornlearn", description="Exact learning of Horn formulas.")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normalize", help="write the canonical normal form")
    p.add_argument("input")
    p.add_argument("-o", "--output")
    p.add_argument("--check", action="store_true", help="only test whether the input is in normal form")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("learn", help="learn a target formula through queries")
    p.add_argument("target")
    p.add_argument("--algo", choices=sorted(ALGOS), default="afp")
    p.add_argument("--trace", help="write the JSON event trace here")
    p.add_argument("--stats", help="write a CSV stats row here")
    p.add_argument("--seed", type=int, default=0, help="recorded in the stats row (HORN_SEED overrides)")
    _add_run_flags(p)
    p.set_defaults(func=cmd_learn)

    p = sub.add_parser("compare", help="run two algorithms on the same teacher and diff their traces")
    p.add_argument("target")
    p.add_argument("--left", choices=sorted(ALGOS), default="afp")
    p.add_argument("--right", choices=sorted(ALGOS), default="afp-star")
    p.add_argument("--diff", help="write the unified diff here instead of stdout")
    p.add_argument("--trace-prefix", help="also write <prefix><algo>.json traces")
    _add_run_flags(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("family", help="write the f_n target")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("script", help="write the counterexample script for f_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--repeat-positives", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_script)

    p = sub.add_parser("bench", help="query counts for both algorithms over a range of n")
    p.add_argument("--n", type=parse_range, required=True, help="N or A..B")
    p.add_argument("--csv", required=True)
    p.add_argument("--random-targets", type=int, default=1, help="random honest-teacher targets per n")
    p.add_argument("--append", action="store_true")
    p.add_argument("--seed", type=int, default=0, help="random seed (HORN_SEED overrides)")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if getattr(args, "n", None) is not None and isinstance(args.n, int) and args.n < 1:
        parser.error("--n must be at least 1")
    try:
        return args.func(args)
    except (ParseError, MalformedInput, ValueError) as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except TeacherError as e:
        print(f"teacher error: {e}", file=sys.stderr)
        return EXIT_TEACHER
    except LoopLimitExceeded as e:
        print(f"loop limit: {e}", file=sys.stderr)
        return EXIT_LOOP
    except OSError as e:
        print(f"I/O error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
