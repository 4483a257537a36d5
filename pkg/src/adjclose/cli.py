"""Command-line front end: adjust, returns, reinvest, audit, plot.

Exit codes are a stable scripting contract: 0 success, 1 parse or I/O
failure, 2 domain precondition failure, 3 audit found discrepancies.
Results go to stdout (or ``--out``); warnings and the audit summary go
to stderr.  Identical inputs and flags produce byte-identical output.
"""

from __future__ import annotations

import argparse
import datetime as dt
import sys
from decimal import Decimal
from pathlib import Path

from .audit import DEFAULT_TOLERANCE, audit_provider_series, findings_to_csv, format_summary
from .chart import render_svg_chart
from .domain import PriceHistory, parse_trading_date
from .engine import adjusted_series, period_return, reinvestment_ledger
from .errors import DomainError, ParseError, SinkWrite
from .ingest import (
    format_display,
    merge_actions,
    parse_distribution_csv,
    parse_price_csv,
    write_adjusted_csv,
)

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_DOMAIN = 2
EXIT_FINDINGS = 3


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except (ParseError, SinkWrite, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adjclose",
        description="Adjusted closing prices, returns, and reinvestment from CSV price history.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    adjust = sub.add_parser("adjust", help="write an adjusted-close CSV from an anchor")
    _add_inputs(adjust)
    adjust.add_argument("--base-date", type=_date_arg, required=True)
    adjust.add_argument("--base-value", type=_positive_decimal, required=True)
    adjust.add_argument("--out", type=Path)
    adjust.set_defaults(handler=cmd_adjust)

    returns = sub.add_parser("returns", help="growth ratio and total return between two dates")
    _add_inputs(returns)
    returns.add_argument("--start", type=_date_arg, required=True)
    returns.add_argument("--end", type=_date_arg, required=True)
    returns.set_defaults(handler=cmd_returns)

    reinvest = sub.add_parser("reinvest", help="share ledger with dividends reinvested")
    _add_inputs(reinvest)
    reinvest.add_argument("--shares", type=_positive_decimal, required=True)
    reinvest.add_argument("--out", type=Path)
    reinvest.set_defaults(handler=cmd_reinvest)

    audit = sub.add_parser("audit", help="reconcile a provider adjclose column")
    _add_inputs(audit)
    audit.add_argument("--tolerance", type=_positive_decimal, default=DEFAULT_TOLERANCE)
    audit.add_argument("--out", type=Path)
    audit.set_defaults(handler=cmd_audit)

    plot = sub.add_parser("plot", help="normalized multi-series CSV and optional SVG chart")
    plot.add_argument("prices", type=Path, nargs="+")
    plot.add_argument(
        "--distributions",
        type=Path,
        action="append",
        default=[],
        help="distribution file for the Nth price file (repeatable, matched by position)",
    )
    plot.add_argument("--snap-forward", action="store_true")
    plot.add_argument("--base-date", type=_date_arg, required=True)
    plot.add_argument("--base-value", type=_positive_decimal, required=True)
    plot.add_argument("--svg", type=Path)
    plot.add_argument("--out", type=Path)
    plot.set_defaults(handler=cmd_plot)

    return parser


def _add_inputs(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("prices", type=Path)
    sub.add_argument("distributions", type=Path, nargs="?")
    sub.add_argument(
        "--snap-forward",
        action="store_true",
        help="move an off-calendar ex-date to the next trading day instead of failing",
    )


def _date_arg(text: str) -> dt.date:
    return parse_trading_date(text)


def _positive_decimal(text: str) -> Decimal:
    try:
        value = Decimal(text)
    except ArithmeticError:
        raise ValueError(f"bad decimal {text!r}") from None
    if value <= 0:
        raise ValueError(f"{text!r} must be positive")
    return value


def _series_name(path: Path) -> str:
    stem = path.stem
    if stem.lower().endswith("_data"):
        stem = stem[: -len("_data")]
    return stem.upper()


def _load_history(prices: Path, distributions: Path | None, snap_forward: bool) -> PriceHistory:
    history, warnings = parse_price_csv(prices.read_bytes(), symbol=_series_name(prices))
    if distributions is not None:
        actions = parse_distribution_csv(distributions.read_bytes())
        history, merge_warnings = merge_actions(history, actions, snap_forward=snap_forward)
        warnings += merge_warnings
    for warning in warnings:
        print(f"warning: {warning}", file=sys.stderr)
    return history


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_bytes(text.encode("utf-8"))


def cmd_adjust(args) -> int:
    history = _load_history(args.prices, args.distributions, args.snap_forward)
    adjusted = adjusted_series(history, args.base_date, args.base_value)
    if args.out is None:
        write_adjusted_csv(history, adjusted, sys.stdout.buffer)
        sys.stdout.buffer.flush()
    else:
        with open(args.out, "wb") as sink:
            write_adjusted_csv(history, adjusted, sink)
    return EXIT_OK


def cmd_returns(args) -> int:
    history = _load_history(args.prices, args.distributions, args.snap_forward)
    adjusted = adjusted_series(history, history.bars[0].date, Decimal(100))
    result = period_return(adjusted, args.start, args.end)
    growth = format(result.growth_ratio, ".4g")
    pct = format_display(result.total_return * 100, 2)
    print(f"growth={growth} return={pct}%")
    return EXIT_OK


def cmd_reinvest(args) -> int:
    history = _load_history(args.prices, args.distributions, args.snap_forward)
    ledger = reinvestment_ledger(history, args.shares)
    lines = ["date,shares,purchased,kind,position_value"]
    for entry in ledger.entries:
        lines.append(
            ",".join(
                [
                    entry.date.isoformat(),
                    format_display(entry.shares, 6),
                    format_display(entry.purchased, 6),
                    entry.kind,
                    format_display(entry.position_value, 4),
                ]
            )
        )
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_audit(args) -> int:
    history = _load_history(args.prices, args.distributions, args.snap_forward)
    report = audit_provider_series(history, tolerance=args.tolerance)
    _emit(findings_to_csv(report), args.out)
    print(format_summary(report), end="", file=sys.stderr)
    return EXIT_FINDINGS if report.discrepancies else EXIT_OK


def cmd_plot(args) -> int:
    distributions: list[Path | None] = list(args.distributions)
    distributions += [None] * (len(args.prices) - len(distributions))

    names: list[str] = []
    columns: list[dict] = []
    for prices, dists in zip(args.prices, distributions):
        history = _load_history(prices, dists, args.snap_forward)
        name = history.symbol or _series_name(prices)
        if name in names:
            print(f"error: duplicate series name {name!r}", file=sys.stderr)
            return EXIT_DOMAIN
        adjusted = adjusted_series(history, args.base_date, args.base_value)
        names.append(name)
        columns.append(adjusted.by_date)

    all_dates = sorted(set().union(*columns))
    lines = ["date," + ",".join(names)]
    for date in all_dates:
        cells = [date.isoformat()]
        for column in columns:
            value = column.get(date)
            cells.append(format_display(value) if value is not None else "")
        lines.append(",".join(cells))
    _emit("\n".join(lines) + "\n", args.out)

    if args.svg is not None:
        series = [
            (name, sorted(column.items()))
            for name, column in zip(names, columns)
        ]
        args.svg.write_text(render_svg_chart(series), encoding="utf-8")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
