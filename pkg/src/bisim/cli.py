"""Command-line front end: minimize, check, generate, benchmark.

Exit codes: 0 success (or "bisimilar"), 1 not-bisimilar, 2 usage/input
error, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from itertools import combinations
from statistics import mean
from time import perf_counter

from .engine import EngineConfig, EngineError, run
from .lts import AutFormatError, gen_chain, gen_random, parse_aut, write_aut
from .oracle import check_transfer, oracle_partition, quotient, verify_quotient
from .partition import canonical_form, is_stable
from .tuple_index import tuple_index

EXIT_OK = 0
EXIT_NOT_BISIMILAR = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3


def _default_threads() -> int:
    return int(os.environ.get("BISIM_THREADS", "1"))


def _load(path: str):
    with open(path, encoding="utf-8") as handle:
        return parse_aut(handle.read())


def cmd_min(args) -> int:
    lts = _load(args.input)
    part, stats = run(lts, EngineConfig(threads=args.threads))
    quot = quotient(lts, part)
    if args.verify:
        stable, witness = is_stable(lts, part)
        if not stable:
            print(f"verification failed: unstable partition {witness}",
                  file=sys.stderr)
            return EXIT_INTERNAL
        ok, witness = check_transfer(lts, part)
        if not ok:
            print(f"verification failed: transfer violation {witness}",
                  file=sys.stderr)
            return EXIT_INTERNAL
        if not verify_quotient(lts, quot):
            print("verification failed: quotient not bisimilar to input",
                  file=sys.stderr)
            return EXIT_INTERNAL
    with open(args.output, "w", encoding="utf-8") as handle:
        handle.write(write_aut(quot.lts))
    print(f"states={lts.n_states} transitions={lts.n_transitions} "
          f"blocks={quot.lts.n_states} rounds={stats.rounds}")
    return EXIT_OK


def cmd_check(args) -> int:
    lts = _load(args.input)
    for s in (args.s1, args.s2):
        if not 0 <= s < lts.n_states:
            print(f"state {s} out of range", file=sys.stderr)
            return EXIT_USAGE
    if args.oracle:
        part = oracle_partition(lts)
    else:
        part, _ = run(lts, EngineConfig(threads=args.threads))
    same = part.state_to_block[args.s1] == part.state_to_block[args.s2]
    print("bisimilar" if same else "not-bisimilar")
    return EXIT_OK if same else EXIT_NOT_BISIMILAR


def cmd_gen(args) -> int:
    if args.kind == "chain":
        lts = gen_chain(args.n)
    else:
        lts = gen_random(args.states, args.labels, args.transitions, args.seed)
    with open(args.output, "w", encoding="utf-8") as handle:
        handle.write(write_aut(lts))
    print(f"wrote {args.output}: states={lts.n_states} "
          f"transitions={lts.n_transitions}")
    return EXIT_OK


def bench_one(lts, thread_counts, warmup: int, measured: int):
    """Timing protocol for one input: per thread count, ``warmup`` discarded
    runs then ``measured`` averaged runs; only the engine run is timed.

    Returns a list of row dicts.  Raises :class:`EngineError` if the
    canonical partition differs across thread counts.
    """
    if measured < 1:
        raise ValueError("need at least one measured run")
    rows = []
    reference = None
    base_mean = None
    for threads in thread_counts:
        config = EngineConfig(threads=threads, instrument=True)
        timings = []
        last = None
        for i in range(warmup + measured):
            t0 = perf_counter()
            part, stats = run(lts, config)
            elapsed = perf_counter() - t0
            if i >= warmup:
                timings.append(elapsed)
            last = (part, stats)
        part, stats = last
        shape = canonical_form(part)
        if reference is None:
            reference = shape
        elif shape != reference:
            raise EngineError(
                f"partition at {threads} threads differs from "
                f"{thread_counts[0]}-thread result")
        mean_s = mean(timings)
        if base_mean is None:
            base_mean = mean_s
        rows.append({
            "threads": threads,
            "mean_ms": mean_s * 1000.0,
            "speedup": base_mean / mean_s if mean_s > 0 else float("inf"),
            "rounds": stats.rounds,
            "max_split_count": stats.max_per_state_split_count,
        })
    return rows


def cmd_bench(args) -> int:
    thread_counts = [int(t) for t in args.threads.split(",") if t]
    if not thread_counts or any(t < 1 for t in thread_counts):
        print("invalid thread list", file=sys.stderr)
        return EXIT_USAGE
    report = []
    for path in args.inputs:
        lts = _load(path)
        for row in bench_one(lts, thread_counts, args.warmup, args.measured):
            report.append({"input": path, "states": lts.n_states,
                           "transitions": lts.n_transitions, **row})
    if args.format == "json":
        print(json.dumps(report, indent=2))
    else:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["input", "states", "transitions", "threads",
                         "mean_ms", "speedup", "rounds", "max_split_count"])
        for row in report:
            writer.writerow([row["input"], row["states"], row["transitions"],
                             row["threads"], f"{row['mean_ms']:.3f}",
                             f"{row['speedup']:.3f}", row["rounds"],
                             row["max_split_count"]])
        sys.stdout.write(buf.getvalue())
    return EXIT_OK


def cmd_tuple_index(args) -> int:
    """Brute-force injectivity check over all non-empty subsets of the
    domain."""
    d = args.domain
    elements = range(d)
    seen: dict[int, tuple] = {}
    count = 0
    for size in range(1, d + 1):
        for subset in combinations(elements, size):
            idx = tuple_index(subset, d)
            if idx in seen:
                print(f"collision: {seen[idx]} and {subset} -> {idx}",
                      file=sys.stderr)
                return EXIT_INTERNAL
            seen[idx] = subset
            count += 1
    print(f"domain {d}: {count} subsets, all indices distinct")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bisim",
        description="Bisimulation minimization of labelled transition systems")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("min", help="minimize an .aut file")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--threads", type=int, default=_default_threads())
    p.add_argument("--verify", action="store_true",
                   help="re-validate the result with the slow oracles")
    p.set_defaults(func=cmd_min)

    p = sub.add_parser("check", help="decide bisimilarity of two states")
    p.add_argument("input")
    p.add_argument("s1", type=int)
    p.add_argument("s2", type=int)
    p.add_argument("--threads", type=int, default=_default_threads())
    p.add_argument("--oracle", action="store_true",
                   help="use the naive fixpoint instead of the engine")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("gen", help="generate an .aut file")
    gsub = p.add_subparsers(dest="kind", required=True)
    g = gsub.add_parser("chain", help="two disjoint chains of n states")
    g.add_argument("n", type=int)
    g.add_argument("output")
    g.set_defaults(func=cmd_gen, kind="chain")
    g = gsub.add_parser("random", help="seeded random system")
    g.add_argument("states", type=int)
    g.add_argument("labels", type=int)
    g.add_argument("transitions", type=int)
    g.add_argument("output")
    g.add_argument("--seed", type=int, default=0)
    g.set_defaults(func=cmd_gen, kind="random")

    p = sub.add_parser("bench", help="timed runs over a thread-count sweep")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--threads", default="1,2,4,8",
                   help="comma-separated thread counts")
    p.add_argument("--warmup", type=int, default=2)
    p.add_argument("--measured", type=int, default=3)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("tuple-index",
                       help="run the set-index injectivity check")
    p.add_argument("--domain", type=int, default=12)
    p.set_defaults(func=cmd_tuple_index)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (AutFormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except EngineError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def entry():  # console-script wrapper
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
