"""Command-line surface: per-permutation reports, distribution tables,
series coefficients, expectations, the all-digits-separate generator,
and the verification harness.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
Identical inputs produce byte-identical output regardless of the
worker count; parallelism only lives inside the exhaustive sweeps.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from decimal import Decimal, localcontext
from fractions import Fraction
from pathlib import Path

from . import config, exhaustive
from .perms import (
    Direction,
    Permutation,
    bond_count,
    bonds,
    format_permutation,
    is_king,
    maximal_runs,
    parse_permutation,
)
from .separators import separator_count, separator_report
from .series import (
    BiSeries,
    bond_gf,
    bond_marked_gf,
    series_csv_rows,
    series_to_json,
    vertical_marked_gf,
    vertical_sep_gf,
)

_SERIES = {
    "h": ("vertical separator distribution", vertical_sep_gf, "u"),
    "g": ("marked vertical separators", vertical_marked_gf, "v"),
    "A": ("marked bonds", bond_marked_gf, "v"),
    "B": ("bond distribution", bond_gf, "u"),
}
_SERIES_ALIASES = {
    "vertical": "h",
    "marked-vertical": "g",
    "marked-bonds": "A",
    "bonds": "B",
}

_ARROW = {Direction.UP: "↑", Direction.DOWN: "↓", Direction.NONE: ""}


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def _json_dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)


def _csv_text(header: tuple[str, ...], rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue().rstrip("\n")


def _approx(x: Fraction, digits: int = 12) -> str:
    with localcontext() as ctx:
        ctx.prec = digits
        return str(Decimal(x.numerator) / Decimal(x.denominator))


def _value_set(values) -> str:
    return "{" + ", ".join(str(v) for v in sorted(values)) + "}"


def _poly_str(poly, var: str) -> str:
    if not poly:
        return "0"
    terms = []
    for m, c in enumerate(poly.coeffs):
        if not c:
            continue
        if m == 0:
            terms.append(str(c))
        elif m == 1:
            terms.append(var if c == 1 else f"{c}*{var}")
        else:
            terms.append(f"{var}^{m}" if c == 1 else f"{c}*{var}^{m}")
    return " + ".join(terms)


def _run_str(p: Permutation, run) -> str:
    values = p.entries[run.start - 1 : run.start - 1 + run.length]
    joiner = "" if p.n <= 9 else "-"
    return joiner.join(str(v) for v in values) + _ARROW[run.direction]


# ---------------------------------------------------------------------------
# Commands


def cmd_report(args: argparse.Namespace) -> int:
    p = parse_permutation(args.perm)
    rep = separator_report(p)
    runs = maximal_runs(p)
    if args.format == "json":
        payload = {
            "perm": list(p.entries),
            "vertical": sorted(rep.vertical),
            "horizontal": sorted(rep.horizontal),
            "both": sorted(rep.both),
            "sep_count": rep.sep_count,
            "bonds": sorted(bonds(p)),
            "bond_count": bond_count(p),
            "runs": [
                {"start": r.start, "length": r.length, "direction": r.direction.value}
                for r in runs
            ],
            "king": is_king(p),
        }
        _emit(_json_dumps(payload), args.out)
    else:
        lines = [
            f"permutation:  {format_permutation(p)}",
            f"vertical:     {_value_set(rep.vertical)}",
            f"horizontal:   {_value_set(rep.horizontal)}",
            f"both:         {_value_set(rep.both)}",
            f"separators:   {rep.sep_count}",
            f"bonds:        {_value_set(bonds(p))} (count {bond_count(p)})",
            f"runs:         {' '.join(_run_str(p, r) for r in runs)}",
            f"king:         {'yes' if is_king(p) else 'no'}",
        ]
        _emit("\n".join(lines), args.out)
    return 0


def cmd_dist(args: argparse.Namespace) -> int:
    table = exhaustive.distribution(args.n, args.kind, threads=args.threads)
    if args.format == "json":
        _emit(_json_dumps(table.to_json()), args.out)
    elif args.format == "csv":
        _emit(_csv_text(("n", "m", "count"), table.csv_rows()), args.out)
    else:
        lines = [f"distribution of {args.kind} over S_{args.n}", "m  count"]
        lines += [f"{m}  {c}" for m, c in sorted(table.counts.items())]
        _emit("\n".join(lines), args.out)
    return 0


def cmd_gf(args: argparse.Namespace) -> int:
    which = _SERIES_ALIASES.get(args.which, args.which)
    if args.order < 0 or args.order > config.MAX_ORDER:
        raise ValueError(
            f"order {args.order} outside 0..{config.MAX_ORDER}"
        )
    label, builder, var = _SERIES[which]
    series: BiSeries = builder(args.order)
    if args.format == "json":
        payload = series_to_json(series)
        payload["series"] = which
        _emit(_json_dumps(payload), args.out)
    elif args.format == "csv":
        _emit(_csv_text(("n", "m", "count"), series_csv_rows(series)), args.out)
    else:
        lines = [f"{label} up to z^{args.order}"]
        for e, poly in series:
            lines.append(f"z^{e}: {_poly_str(poly, var)}")
        _emit("\n".join(lines), args.out)
    return 0


def cmd_expect(args: argparse.Namespace) -> int:
    want_formula = args.mode in ("formula", "both")
    want_empirical = args.mode in ("empirical", "both")
    payload: dict = {"n": args.n, "kind": args.kind}
    lines = []
    formula = empirical = None
    if want_formula:
        formula = exhaustive.expectation_formula(args.n, args.kind)
        payload["formula"] = str(formula)
        payload["formula_approx"] = _approx(formula)
        lines.append(f"formula:   {formula} (approx. {_approx(formula)})")
    if want_empirical:
        empirical = exhaustive.expectation_empirical(
            args.n, args.kind, threads=args.threads
        )
        payload["empirical"] = str(empirical)
        payload["empirical_approx"] = _approx(empirical)
        lines.append(f"empirical: {empirical} (approx. {_approx(empirical)})")
    code = 0
    if args.mode == "both":
        match = formula == empirical
        payload["match"] = match
        lines.append(
            f"{formula} = {empirical} MATCH"
            if match
            else f"{formula} != {empirical} MISMATCH"
        )
        code = 0 if match else 1
    if args.format == "json":
        _emit(_json_dumps(payload), args.out)
    else:
        _emit("\n".join(lines), args.out)
    return code


def cmd_maxsep(args: argparse.Namespace) -> int:
    perms = exhaustive.max_separator_perms(args.k)
    n = 4 * args.k
    verified = None
    if args.verify:
        cap = config.enumeration_cap()
        if n > cap:
            raise ValueError(
                f"exhaustive cross-check needs n={n} <= cap {cap}"
            )
        want = {p.entries for p in perms}
        got = {
            p.entries
            for p in exhaustive.iterate_sn(n)
            if separator_count(p) == n
        }
        verified = want == got
    if args.format == "json":
        payload = {
            "k": args.k,
            "n": n,
            "count": len(perms),
            "perms": [list(p.entries) for p in perms],
        }
        if verified is not None:
            payload["verified"] = verified
        _emit(_json_dumps(payload), args.out)
    else:
        lines = [f"{len(perms)} permutations of S_{n} in which every digit separates"]
        lines += [format_permutation(p) for p in perms]
        if verified is not None:
            lines.append(
                "exhaustive cross-check: PASS" if verified else
                "exhaustive cross-check: FAIL"
            )
        _emit("\n".join(lines), args.out)
    return 0 if verified in (None, True) else 1


def cmd_verify(args: argparse.Namespace) -> int:
    checks = exhaustive.run_check_suite(args.n_max, threads=args.threads)
    passed = all(c.passed for c in checks)
    report = None
    if args.verbose:
        report = exhaustive.verify_gf_vs_brute(args.n_max, threads=args.threads)
    if args.format == "json":
        payload = {
            "n_max": args.n_max,
            "passed": passed,
            "checks": [
                {"name": c.name, "passed": c.passed, "detail": c.detail}
                for c in checks
            ],
        }
        if report is not None:
            payload["vertical_rows"] = {
                str(n): {str(m): c for m, c in row.items()}
                for n, row in report.vertical_rows.items()
            }
            payload["bond_rows"] = {
                str(n): {str(m): c for m, c in row.items()}
                for n, row in report.bond_rows.items()
            }
        _emit(_json_dumps(payload), args.out)
    else:
        lines = []
        for c in checks:
            tag = "PASS" if c.passed else "FAIL"
            lines.append(f"{tag}  {c.name} ({c.detail})")
        if report is not None:
            for n in range(args.n_max + 1):
                lines.append(f"vertical row n={n}: {report.vertical_rows[n]}")
                lines.append(f"bond row n={n}:     {report.bond_rows[n]}")
        lines.append(
            f"{'all checks passed' if passed else 'CHECKS FAILED'} "
            f"(n_max={args.n_max})"
        )
        _emit("\n".join(lines), args.out)
    return 0 if passed else 1


# ---------------------------------------------------------------------------
# Parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sepstat",
        description="Separator statistics on permutations: exact counts, "
        "series, and expectations, with brute-force verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, formats: tuple[str, ...]) -> None:
        p.add_argument("--format", choices=formats, default="plain")
        p.add_argument("--out", metavar="PATH", help="write output to a file")

    def with_threads(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--threads",
            type=int,
            default=None,
            metavar="T",
            help="worker processes for exhaustive sweeps "
            "(default: machine parallelism)",
        )

    p = sub.add_parser("report", help="separator/bond/run report for one permutation")
    p.add_argument("perm", help='e.g. "132465879" or "5,3,2,4,1"')
    common(p, ("plain", "json"))
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("dist", help="exhaustive distribution of a statistic over S_n")
    p.add_argument("n", type=int)
    p.add_argument("--kind", choices=exhaustive.KINDS, default="vertical")
    with_threads(p)
    common(p, ("plain", "json", "csv"))
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("gf", help="series coefficients up to z^order")
    p.add_argument(
        "--which",
        choices=tuple(_SERIES) + tuple(_SERIES_ALIASES),
        default="h",
        help="h: vertical separators, g: marked vertical separators, "
        "A: marked bonds, B: bonds",
    )
    p.add_argument("--order", type=int, default=config.DEFAULT_ORDER)
    common(p, ("plain", "json", "csv"))
    p.set_defaults(func=cmd_gf)

    p = sub.add_parser("expect", help="expected number of separators")
    p.add_argument("n", type=int)
    p.add_argument("--kind", choices=exhaustive.EXPECTATION_KINDS, default="any")
    p.add_argument("--mode", choices=("formula", "empirical", "both"), default="formula")
    with_threads(p)
    common(p, ("plain", "json"))
    p.set_defaults(func=cmd_expect)

    p = sub.add_parser(
        "maxsep", help="permutations of S_{4k} in which every digit separates"
    )
    p.add_argument("k", type=int)
    p.add_argument(
        "--verify",
        action="store_true",
        help="cross-check against an exhaustive scan of S_{4k}",
    )
    with_threads(p)
    common(p, ("plain", "json"))
    p.set_defaults(func=cmd_maxsep)

    p = sub.add_parser("verify", help="run the full invariant suite")
    p.add_argument("--n-max", type=int, default=config.DEFAULT_VERIFY_N)
    p.add_argument(
        "-v",
        "--verbose",
        action="store_true",
        help="also print the per-n distribution rows behind the series checks",
    )
    with_threads(p)
    common(p, ("plain", "json"))
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
