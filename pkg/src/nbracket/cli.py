"""Command-line front end: expand, reduce, verify, bench.

Exit codes: 0 success/verified, 1 identity violated, 2 expression or input
error, 3 term budget exceeded, 4 unsupported parameter.
"""

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from time import perf_counter

from .algebra import ANTI_SLOT, pattern_str, word_sort_key, word_str
from .expand import (
    DEFAULT_TERM_BUDGET,
    TermBudgetExceeded,
    UnsupportedShapeError,
    expand_expr,
    fast_profile,
    naive_term_count,
    oracle_profile,
)
from .identities import (
    UnsupportedParameter,
    check_sums,
    intercalation_profile,
    nested_shape,
    split_shape,
    verify_bremner,
    verify_decomposition,
    verify_even_gji,
    verify_odd_reduction,
)
from .syntax import DuplicateAntiIndexError, ParseError, latex_symbol, parse, render

EXIT_OK = 0
EXIT_VIOLATED = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3
EXIT_PARAM = 4

IDENTITIES = ("even", "odd-reduce", "bremner", "sums", "decomp")


@dataclass
class RunConfig:
    term_budget: int = DEFAULT_TERM_BUDGET
    threads: int = 1
    format: str = "text"
    seed: int = 0
    record: str | None = None


def _parse_threads(value: str) -> int:
    if value == "auto":
        return os.cpu_count() or 1
    n = int(value)
    if n < 1:
        raise argparse.ArgumentTypeError("thread count must be positive")
    return n


def _parse_budget(value: str) -> int:
    n = int(value)
    if n < 1:
        raise argparse.ArgumentTypeError("term budget must be positive")
    return n


def _parse_roles(pairs):
    roles = {}
    for pair in pairs or ():
        letter, _, role = pair.partition("=")
        if len(letter) != 1 or not letter.isalpha() or role not in ("fixed", "anti"):
            raise argparse.ArgumentTypeError(
                f"role override must look like X=fixed or x=anti, got {pair!r}"
            )
        roles[letter] = role
    return roles or None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "latex"), default="text")
    common.add_argument("--threads", type=_parse_threads, default=1, metavar="N",
                        help="worker processes, or 'auto'")
    common.add_argument("--budget", type=_parse_budget, default=DEFAULT_TERM_BUDGET,
                        metavar="N", help="cap on generated words")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized runs")
    common.add_argument("--record", metavar="PATH",
                        help="append verified reports to this JSON-lines log")

    parser = argparse.ArgumentParser(
        prog="nbracket",
        description="Expand and verify totally antisymmetrized operator brackets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", parents=[common],
                       help="expand an expression into signed words")
    p.add_argument("expr")
    p.add_argument("--role", action="append", metavar="LETTER=ROLE",
                   help="override the case convention, e.g. --role Z=anti")
    p.set_defaults(handler=cmd_expand)

    p = sub.add_parser("reduce", parents=[common],
                       help="expand and reduce to canonical classes")
    p.add_argument("expr")
    p.add_argument("--role", action="append", metavar="LETTER=ROLE")
    p.add_argument("--path", choices=("auto", "oracle", "fast"), default="auto")
    p.set_defaults(handler=cmd_reduce)

    p = sub.add_parser("verify", parents=[common], help="verify an identity")
    p.add_argument("identity", choices=IDENTITIES)
    p.add_argument("param", type=int,
                   help="bracket size N (even, odd-reduce) or half-order L")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("bench", parents=[common],
                       help="time the oracle and fast routes on both triple nestings")
    p.add_argument("L", type=int)
    p.set_defaults(handler=cmd_bench)
    return parser


def _config(args) -> RunConfig:
    return RunConfig(
        term_budget=args.budget,
        threads=args.threads,
        format=args.format,
        seed=args.seed,
        record=args.record,
    )


def _coeff_text(coeff) -> str:
    if isinstance(coeff, Fraction) and coeff.denominator != 1:
        return f"+{coeff}" if coeff > 0 else str(coeff)
    return f"{int(coeff):+d}"


def _coeff_json(coeff):
    if isinstance(coeff, Fraction):
        return int(coeff) if coeff.denominator == 1 else str(coeff)
    return coeff


def word_latex(word) -> str:
    return " ".join(latex_symbol(s) for s in word)


def pattern_latex(pattern) -> str:
    out = []
    slot = 0
    for s in pattern:
        if s == ANTI_SLOT:
            slot += 1
            out.append(f"B_{{{slot}}}")
        else:
            out.append(str(s))
    return " ".join(out)


def _signed_series(parts) -> str:
    """Join (coefficient, body) pairs into a +/- separated series."""
    chunks = []
    for coeff, body in parts:
        sign = "-" if coeff < 0 else "+"
        magnitude = -coeff if coeff < 0 else coeff
        term = body if magnitude == 1 else f"{magnitude}\\,{body}"
        chunks.append(f"{sign} {term}" if chunks else (f"-{term}" if sign == "-" else term))
    return " ".join(chunks) if chunks else "0"


def cmd_expand(args, config: RunConfig) -> int:
    expr = parse(args.expr, roles=_parse_roles(args.role))
    element = expand_expr(expr, budget=config.term_budget)
    words = element.words_in_order()
    if config.format == "json":
        payload = {
            "expr": render(expr),
            "terms": [
                {"coefficient": _coeff_json(element.coefficient(w)), "word": word_str(w)}
                for w in words
            ],
            "count": len(words),
        }
        print(json.dumps(payload, indent=2))
    elif config.format == "latex":
        print(_signed_series((element.coefficient(w), word_latex(w)) for w in words))
    else:
        if not words:
            print("0")
        for w in words:
            print(f"{_coeff_text(element.coefficient(w))} {word_str(w)}")
    return EXIT_OK


def _reduce_classes(expr, config: RunConfig, path: str):
    if path == "oracle":
        return oracle_profile(expr, budget=config.term_budget, jobs=config.threads), "oracle"
    if path == "fast":
        return fast_profile(expr, budget=config.term_budget), "fast"
    try:
        return fast_profile(expr, budget=config.term_budget), "fast"
    except UnsupportedShapeError:
        return oracle_profile(expr, budget=config.term_budget, jobs=config.threads), "oracle"


def cmd_reduce(args, config: RunConfig) -> int:
    expr = parse(args.expr, roles=_parse_roles(args.role))
    classes, used_path = _reduce_classes(expr, config, args.path)
    ordered = sorted(classes, key=word_sort_key)
    resolution = intercalation_profile(classes)
    profile = resolution[0] if resolution else None
    if config.format == "json":
        payload = {
            "expr": render(expr),
            "path": used_path,
            "classes": [
                {"pattern": pattern_str(p), "coefficient": _coeff_json(classes[p])}
                for p in ordered
            ],
            "profile": profile,
            "profile_sign": "(-1)^n",
            "terms": naive_term_count(expr),
        }
        print(json.dumps(payload, indent=2))
    elif config.format == "latex":
        print(_signed_series((classes[p], pattern_latex(p)) for p in ordered))
    else:
        if not ordered:
            print("0")
        for p in ordered:
            print(f"{_coeff_text(classes[p])} {pattern_str(p)}")
        if profile is not None:
            print(f"profile m_n: {profile} with class coefficient (-1)^n m_n")
    return EXIT_OK


def _run_identity(identity: str, param: int, config: RunConfig):
    if identity == "even":
        return verify_even_gji(param, budget=config.term_budget, jobs=config.threads)
    if identity == "odd-reduce":
        return verify_odd_reduction(param, budget=config.term_budget, jobs=config.threads)
    if identity == "bremner":
        return verify_bremner(param, budget=config.term_budget)
    if identity == "sums":
        return check_sums(param)
    return verify_decomposition(param, budget=config.term_budget, jobs=config.threads)


def cmd_verify(args, config: RunConfig) -> int:
    report = _run_identity(args.identity, args.param, config)
    doc = report.to_json_dict()
    if config.format == "json":
        print(json.dumps(doc, indent=2))
    elif config.format == "latex":
        if report.profile:
            width = len(report.profile)
            parts = []
            for n, m in enumerate(report.profile):
                pattern = (ANTI_SLOT,) * n + ("A",) + (ANTI_SLOT,) * (width - 1 - n)
                parts.append((-m if n & 1 else m, pattern_latex(pattern)))
            print(_signed_series(parts))
        else:
            print(f"% {report.identity} {report.params}: {report.status}")
    else:
        summary = f"{report.identity} {report.params}: {report.status}"
        if report.details:
            notes = ", ".join(f"{k}={v}" for k, v in report.details.items() if v is not None)
            if notes:
                summary += f" ({notes})"
        print(summary)
        if report.profile is not None:
            print(f"profile m_n: {report.profile}")
        if report.witness is not None:
            print(f"witness: {report.witness}")
    if config.record and report.verified:
        with open(config.record, "a", encoding="utf-8") as log:
            log.write(json.dumps(doc) + "\n")
    return EXIT_OK if report.verified else EXIT_VIOLATED


def _bench_rows(L: int, config: RunConfig):
    rows = []
    for name, expr in (("split", split_shape(L)), ("nested", nested_shape(L))):
        naive = naive_term_count(expr)
        start = perf_counter()
        classes = fast_profile(expr, budget=config.term_budget)
        fast_s = perf_counter() - start
        rows.append({
            "shape": name, "path": "fast", "words": naive,
            "elapsed_ms": fast_s * 1e3, "classes": len(classes),
            "note": None,
        })
        if naive > config.term_budget:
            rows.append({
                "shape": name, "path": "oracle", "words": naive,
                "elapsed_ms": None, "classes": None,
                "note": f"skipped: {naive} words exceed budget {config.term_budget}",
            })
            continue
        start = perf_counter()
        serial = oracle_profile(expr, budget=config.term_budget, jobs=1)
        serial_s = perf_counter() - start
        note = f"{int(naive / serial_s)} words/s" if serial_s else None
        rows.append({
            "shape": name, "path": "oracle", "words": naive,
            "elapsed_ms": serial_s * 1e3, "classes": len(serial), "note": note,
        })
        if config.threads > 1:
            start = perf_counter()
            oracle_profile(expr, budget=config.term_budget, jobs=config.threads)
            parallel_s = perf_counter() - start
            speedup = serial_s / parallel_s if parallel_s else 0.0
            rows.append({
                "shape": name, "path": f"oracle x{config.threads}", "words": naive,
                "elapsed_ms": parallel_s * 1e3, "classes": len(serial),
                "note": f"speedup {speedup:.2f}x vs single block",
            })
    return rows


def cmd_bench(args, config: RunConfig) -> int:
    if args.L < 1:
        raise UnsupportedParameter(f"half-order must be >= 1, got {args.L}")
    rows = _bench_rows(args.L, config)
    if config.format == "json":
        print(json.dumps({"L": args.L, "rows": rows}, indent=2))
        return EXIT_OK
    header = f"{'shape':<8}{'path':<12}{'words':>14}{'ms':>12}{'classes':>9}  note"
    print(header)
    for row in rows:
        ms = "-" if row["elapsed_ms"] is None else f"{row['elapsed_ms']:.1f}"
        classes = "-" if row["classes"] is None else str(row["classes"])
        print(f"{row['shape']:<8}{row['path']:<12}{row['words']:>14}{ms:>12}"
              f"{classes:>9}  {row['note'] or ''}".rstrip())
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    config = _config(args)
    try:
        return args.handler(args, config)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except DuplicateAntiIndexError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except TermBudgetExceeded as exc:
        print(f"budget error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UnsupportedParameter, UnsupportedShapeError) as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_PARAM


if __name__ == "__main__":
    sys.exit(main())
