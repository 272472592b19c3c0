"""Command-line front end.

Machine-readable results go to stdout; diagnostics (traces, timings) go to
stderr.  Exit codes: 0 success, 1 usage or parse error, 2 internal
inconsistency or selftest failure.
"""

from __future__ import annotations

import argparse
import sys
import time

from . import acceptance, census as census_mod, nineadic, prefix, words, wreath
from .errors import ContractionBudgetError, InternalInconsistencyError
from .words import Word, WordSyntaxError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INCONSISTENT = 2

_WORD_CROSSCHECK_CAP = 10**6


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage errors; the contract wants 1
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _fmt_word(w: Word) -> str:
    return str(w) if len(w) else "id"


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cubicrabbit",
                     description="Classify twisted cubic rabbit polynomials.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_classify = sub.add_parser("classify", help="classify g R3 for a word g")
    p_classify.add_argument("word", help="word in x, z (uppercase = inverse), e.g. 'z x^2'")
    p_classify.add_argument("--algorithm", choices=["whole-word", "prefix", "both"],
                            default="both")
    p_classify.add_argument("--trace", action="store_true",
                            help="print each iterate to stderr")

    p_power = sub.add_parser("power", help="classify D_x^m R_n from the digits of m")
    p_power.add_argument("m", help="integer exponent (arbitrary precision)")
    p_power.add_argument("--family", choices=["n3", "nGeq4"], default="n3")
    p_power.add_argument("--crosscheck", action="store_true",
                         help="also run the reduction oracle and (n3, |m| bounded) "
                              "the word algorithms; error on any disagreement")

    p_census = sub.add_parser("census", help="tally classes over a ball")
    p_census.add_argument("--max-len", type=int, required=True)
    p_census.add_argument("--algorithm", choices=["whole-word", "prefix", "both"],
                          default="both")
    p_census.add_argument("--workers", type=int, default=1)
    p_census.add_argument("--format", choices=["csv", "table"], default="csv")
    p_census.add_argument("--output", default=None, help="write to this path instead of stdout")

    p_nucleus = sub.add_parser("nucleus", help="compute and verify the nucleus")
    p_nucleus.add_argument("--budget", type=int, default=10_000)

    p_selftest = sub.add_parser("selftest", help="run the acceptance criteria")
    p_selftest.add_argument("scope", nargs="?", choices=["full", "quick"],
                            default="full")
    return parser


def _cmd_classify(args) -> int:
    try:
        w = words.parse(args.word)
    except WordSyntaxError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    results = {}
    if args.algorithm in ("whole-word", "both"):
        if args.trace:
            for i, cur in enumerate(wreath.iter_psi_bar_orbit(w)):
                print(f"whole-word step {i}: {_fmt_word(cur)}", file=sys.stderr)
        results["whole-word"] = wreath.classify_whole_word(w)
    if args.algorithm in ("prefix", "both"):
        if args.trace:
            for i, cur in enumerate(prefix.iter_prefix_orbit(w)):
                print(f"prefix step {i}: {_fmt_word(cur)}", file=sys.stderr)
        results["prefix"] = prefix.classify_prefix(w)
    answers = set(results.values())
    if len(answers) > 1:
        print(f"internal inconsistency: {results}", file=sys.stderr)
        return EXIT_INCONSISTENT
    print(answers.pop())
    return EXIT_OK


def _cmd_power(args) -> int:
    try:
        m = int(args.m)
    except ValueError:
        print(f"parse error: {args.m!r} is not an integer", file=sys.stderr)
        return EXIT_USAGE
    expansion = nineadic.expand(m)
    if args.family == "n3":
        cls = nineadic.classify_power_3(m)
        if args.crosscheck:
            oracle = nineadic.oracle_classify_3(m)
            if oracle is not cls:
                print(f"crosscheck failed: oracle says {oracle}, digits say {cls}",
                      file=sys.stderr)
                return EXIT_INCONSISTENT
            if abs(m) <= _WORD_CROSSCHECK_CAP:
                w = words.generator_power("x", m)
                for name, fn in (("whole-word", wreath.classify_whole_word),
                                 ("prefix", prefix.classify_prefix)):
                    got = fn(w)
                    if got is not cls:
                        print(f"crosscheck failed: {name} says {got}, digits say {cls}",
                              file=sys.stderr)
                        return EXIT_INCONSISTENT
            else:
                print(f"note: |m| > {_WORD_CROSSCHECK_CAP}, word algorithms skipped",
                      file=sys.stderr)
    else:
        cls = nineadic.classify_power_n(m)
        if args.crosscheck:
            oracle = nineadic.oracle_classify_n(m)
            if oracle is not cls:
                print(f"crosscheck failed: oracle says {oracle}, digits say {cls}",
                      file=sys.stderr)
                return EXIT_INCONSISTENT
    print(f"{expansion} -> {cls}")
    return EXIT_OK


def _cmd_census(args) -> int:
    report = census_mod.run_census(args.max_len, algorithm=args.algorithm,
                                   workers=args.workers)
    text = (census_mod.export_csv(report) if args.format == "csv"
            else census_mod.format_table(report))
    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    print(f"census of {report.total(report.max_len)} words in {report.elapsed:.2f}s "
          f"({report.algorithm}, workers={args.workers})", file=sys.stderr)
    return EXIT_OK


def _cmd_nucleus(args) -> int:
    start = time.perf_counter()
    result = wreath.nucleus(budget=args.budget)
    ordered = sorted(result, key=lambda w: (len(w), str(w)))
    k = wreath.contraction_depth(result, max_k=8)
    elapsed = time.perf_counter() - start
    listing = ", ".join(_fmt_word(w) for w in ordered)
    if k is None:
        print(f"{{{listing}}} failed verification for k <= 8", file=sys.stderr)
        return EXIT_INCONSISTENT
    print(f"{{{listing}}} verified at depth k = {k}")
    print(f"nucleus computed in {elapsed:.3f}s", file=sys.stderr)
    return EXIT_OK


def _cmd_selftest(args) -> int:
    results = acceptance.run_all(scope=args.scope)
    failed = 0
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        print(f"{status}  {res.number}. {res.name}: {res.detail}")
        failed += 0 if res.passed else 1
    if failed:
        print(f"{failed} criteria failed", file=sys.stderr)
        return EXIT_INCONSISTENT
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help and friends
        return int(exc.code or 0)
    dispatch = {
        "classify": _cmd_classify,
        "power": _cmd_power,
        "census": _cmd_census,
        "nucleus": _cmd_nucleus,
        "selftest": _cmd_selftest,
    }
    try:
        return dispatch[args.command](args)
    except (InternalInconsistencyError, ContractionBudgetError) as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT


if __name__ == "__main__":
    sys.exit(main())
