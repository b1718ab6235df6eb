"""Command-line frontend.

Exit codes: 0 success, 1 a verification or oracle mismatch, 2 a usage or
parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from contextlib import contextmanager
from typing import Iterator, TextIO

from . import identities
from .partitions import ENUMERATION_CAP, dp_signed_sums, enumerate_signed_sum
from .pseries import NonUnitConstantTerm, TruncatedSeries, invert
from .qdsl import DissectionIndexOutOfRange, ParseError, evaluate, parse
from .qproducts import named

DP_CAP = 5000

EXPR_HELP = """\
expressions use q, integers, + - * / ^ (integer exponents), Pochhammer
products such as (q,-q^2,-q^3,q^4;q^5), the names X Y R Rcal Phi phi_m u_k
udag_k U_k alpha beta gamma delta, substitution e@(q->q^m) and dissection
e[[r]]%m, which is sum_j a(mj+r) q^(mj): the coefficients of e at exponents
congruent to r mod m, with the factor q^r removed."""


class UsageError(Exception):
    pass


@contextmanager
def _output(path: str | None) -> Iterator[TextIO]:
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8") as fh:
            yield fh


def _emit_series(f: TruncatedSeries, fmt: str, out: TextIO) -> None:
    if fmt == "json":
        # zeros are implied by "order"; only nonzero terms are listed
        doc = {"order": f.order, "coeffs": [[n, str(c)] for n, c in enumerate(f.coeffs) if c]}
        out.write(json.dumps(doc) + "\n")
    else:
        for n, c in enumerate(f.coeffs):
            if c:
                out.write(f"{n}\t{c}\n")


def _evaluate_text(text: str, order: int) -> TruncatedSeries:
    if order < 0:
        raise UsageError("--order must be non-negative")
    try:
        return evaluate(parse(text), order)
    except (NonUnitConstantTerm, DissectionIndexOutOfRange) as exc:
        raise UsageError(str(exc)) from exc


def cmd_expand(args) -> int:
    f = _evaluate_text(args.expr, args.order)
    with _output(args.out) as out:
        _emit_series(f, args.format, out)
    return 0


def cmd_dissect(args) -> int:
    if args.modulus < 1:
        raise UsageError("--modulus must be >= 1")
    if not 0 <= args.residue < args.modulus:
        raise UsageError("--residue must lie in [0, modulus)")
    args.expr = f"({args.expr})[[{args.residue}]]%{args.modulus}"
    return cmd_expand(args)


def cmd_verify(args) -> int:
    cases = identities.matching(args.filter)
    if not cases:
        raise UsageError(f"no identities matched {args.filter!r}")
    order = args.order if args.order is not None else 1000
    if order < identities.MIN_ORDER:
        raise UsageError(f"--order must be at least {identities.MIN_ORDER}")
    reports = identities.verify_cases(cases, order)
    failed = [r for r in reports if not r.passed]
    with _output(args.out) as out:
        if args.format == "json":
            out.write(json.dumps([r.to_json() for r in reports], indent=1) + "\n")
        else:
            for r in reports:
                line = f"{r.status.upper()}\t{r.id}\torder={r.order}\t{r.elapsed * 1000:.1f}ms"
                if r.first_mismatch is not None:
                    n, a, b = r.first_mismatch
                    line += f"\tfirst mismatch at q^{n}: lhs={a} rhs={b}"
                out.write(line + "\n")
            out.write(f"{len(reports) - len(failed)}/{len(reports)} passed\n")
    return 1 if failed else 0


def cmd_oracle(args) -> int:
    n_max = args.n_max
    if n_max < 0:
        raise UsageError("--n-max must be non-negative")
    enumerate_all = n_max <= ENUMERATION_CAP or args.force
    if not enumerate_all and n_max > DP_CAP:
        raise UsageError(f"--n-max above {DP_CAP} is outside the dynamic program's cap")
    dp = dp_signed_sums(n_max, args.variant)
    series = invert(named("X" if args.variant == "plain" else "Y", n_max)).coeffs
    rows = []
    for n in range(n_max + 1):
        enum = enumerate_signed_sum(n, args.variant, cap=n_max) if enumerate_all else None
        oracle = enum if enum is not None else dp[n]
        ok = oracle == series[n] == dp[n]
        rows.append((n, oracle, series[n], ok))
    method = "enumeration" if enumerate_all else "dp"
    with _output(args.out) as out:
        if args.format == "json":
            doc = {"variant": args.variant, "oracle": method,
                   "rows": [{"n": n, "oracle": str(o), "series": str(s), "match": ok}
                            for n, o, s, ok in rows]}
            out.write(json.dumps(doc) + "\n")
        else:
            out.write(f"# n\t{method}\tseries\tmatch\n")
            for n, o, s, ok in rows:
                out.write(f"{n}\t{o}\t{s}\t{'match' if ok else 'MISMATCH'}\n")
    return 0 if all(r[3] for r in rows) else 1


def cmd_list(args) -> int:
    rows = identities.listing()
    with _output(args.out) as out:
        if args.format == "json":
            out.write(json.dumps([{"id": i, "label": l, "description": d, "default_order": o}
                                  for i, l, d, o in rows], indent=1) + "\n")
        else:
            for i, l, d, o in rows:
                out.write(f"{i}\t{l}\t{o}\t{d}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qdissect",
        description="Exact q-series expansion, dissection and identity checks.",
        epilog=EXPR_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", help="write to this file instead of stdout")

    p = sub.add_parser("expand", parents=[common], help="expand an expression",
                       epilog=EXPR_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("expr")
    p.add_argument("--order", type=int, default=100)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("dissect", parents=[common],
                       help="expand one residue class of an expression",
                       epilog=EXPR_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("expr")
    p.add_argument("-m", "--modulus", type=int, required=True)
    p.add_argument("-r", "--residue", type=int, required=True)
    p.add_argument("--order", type=int, default=100)
    p.set_defaults(func=cmd_dissect)

    p = sub.add_parser("verify", parents=[common], help="check registered identities")
    p.add_argument("--filter", default="*", help="glob over identity ids")
    p.add_argument("--order", type=int, default=None,
                   help="truncation order (default 1000; theorem cases never go below 2000)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", parents=[common],
                       help="compare partition oracles with series coefficients")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--variant", choices=("plain", "dagger"), default="plain")
    p.add_argument("--force", action="store_true",
                   help=f"enumerate partitions even above n = {ENUMERATION_CAP}")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("list", parents=[common], help="print the identity registry")
    p.set_defaults(func=cmd_list)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"qdissect: parse error: {exc}", file=sys.stderr)
    except (UsageError, OSError) as exc:
        print(f"qdissect: {exc}", file=sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())
