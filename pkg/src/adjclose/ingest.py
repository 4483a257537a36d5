"""CSV parsing, merging, and serialization for price and distribution data.

Pinned formats (see FORMATS.md at the repository root):

* price file: header ``date,close[,distribution][,adjclose][,split]``,
  one row per trading day, dates ISO ``YYYY-MM-DD``.  Empty distribution
  cells mean zero; the adjclose column, when present, is kept as
  provider reference data for auditing.
* distribution file: rows ``ex_date,kind,value`` with kind ``cash`` or
  ``split``; a split value may be written ``3`` or ``3:1``.  The header
  line is optional.

Input is UTF-8 (a leading BOM is tolerated) with ``\\n`` or ``\\r\\n``
line endings; output is always ``\\n``.  Parsing is total: any byte
stream yields either a value or a ParseError carrying a 1-based line
number.  Row order in the input never matters; histories come out
ascending by date.
"""

from __future__ import annotations

import datetime as dt
from decimal import Decimal, InvalidOperation
from typing import IO

from .domain import (
    AdjustedSeries,
    CashDistribution,
    CorporateAction,
    PriceBar,
    PriceHistory,
    Split,
    parse_money,
    parse_ratio,
    parse_trading_date,
)
from .errors import (
    DateNotInSeries,
    DuplicateDate,
    EmptyFile,
    ExDateBeforeHistoryStart,
    ExDateNotTradingDay,
    MalformedRow,
    SinkWrite,
    UnknownKind,
)

PRICE_COLUMNS = ("date", "close", "distribution", "adjclose", "split")
DISTRIBUTION_HEADER = ("ex_date", "kind", "value")

_FOUR_DP = Decimal("0.0001")


def _read_lines(data: bytes | IO[bytes]) -> list[bytes]:
    raw = data if isinstance(data, (bytes, bytearray)) else data.read()
    if raw.startswith(b"\xef\xbb\xbf"):
        raw = raw[3:]
    lines = bytes(raw).split(b"\n")
    if lines and lines[-1] == b"":
        lines.pop()  # ordinary trailing newline
    return [line[:-1] if line.endswith(b"\r") else line for line in lines]


def _decode(line: bytes, lineno: int) -> str:
    try:
        return line.decode("utf-8")
    except UnicodeDecodeError:
        raise MalformedRow(lineno, "invalid UTF-8") from None


def _cells(text: str) -> list[str]:
    return [cell.strip() for cell in text.split(",")]


def parse_price_csv(
    data: bytes | IO[bytes], symbol: str = ""
) -> tuple[PriceHistory, list[str]]:
    """Parse a price file into a PriceHistory plus ignorable-anomaly warnings."""
    lines = _read_lines(data)
    warnings: list[str] = []

    header: list[str] | None = None
    rows: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(lines, start=1):
        text = _decode(raw, lineno)
        if not text.strip():
            warnings.append(f"line {lineno}: blank line ignored")
            continue
        if header is None:
            header = [cell.lower() for cell in _cells(text)]
            _check_price_header(header, lineno, warnings)
            continue
        rows.append((lineno, _cells(text)))

    if header is None:
        raise EmptyFile("empty file")
    if not rows:
        raise EmptyFile("no data rows")

    col = {name: i for i, name in enumerate(header) if name in PRICE_COLUMNS}
    has_adjclose = "adjclose" in col

    parsed: list[tuple[dt.date, Decimal, Decimal, Decimal | None, Decimal | None]] = []
    seen: dict[dt.date, int] = {}
    for lineno, cells in rows:
        if len(cells) != len(header):
            raise MalformedRow(
                lineno, f"expected {len(header)} fields, got {len(cells)}"
            )
        date = _parse_cell(lineno, cells[col["date"]], parse_trading_date)
        if date in seen:
            raise DuplicateDate(lineno, date)
        seen[date] = lineno
        close = _parse_cell(lineno, cells[col["close"]], parse_money)
        distribution = Decimal(0)
        if "distribution" in col and cells[col["distribution"]]:
            distribution = _parse_cell(lineno, cells[col["distribution"]], parse_money)
        adjclose = None
        if has_adjclose and cells[col["adjclose"]]:
            adjclose = _parse_cell(lineno, cells[col["adjclose"]], parse_money)
        split = None
        if "split" in col and cells[col["split"]]:
            split = _parse_cell(lineno, cells[col["split"]], parse_money)
        parsed.append((date, close, distribution, adjclose, split))

    parsed.sort(key=lambda row: row[0])
    bars = tuple(PriceBar(date, close) for date, close, *_ in parsed)
    actions: list[CorporateAction] = []
    for date, _, distribution, _, split in parsed:
        if distribution > 0:
            actions.append(CorporateAction(date, CashDistribution(distribution)))
        if split is not None:
            actions.append(CorporateAction(date, Split(split)))
    provider = tuple(row[3] for row in parsed) if has_adjclose else None
    history = PriceHistory(
        bars=bars, actions=tuple(actions), symbol=symbol, provider_adjclose=provider
    )
    return history, warnings


def _check_price_header(header: list[str], lineno: int, warnings: list[str]) -> None:
    for required in ("date", "close"):
        if required not in header:
            raise MalformedRow(lineno, f"header is missing the {required!r} column")
    for name in header:
        if header.count(name) > 1:
            raise MalformedRow(lineno, f"header repeats the {name!r} column")
        if name not in PRICE_COLUMNS:
            warnings.append(f"line {lineno}: unknown column {name!r} ignored")


def _parse_cell(lineno: int, cell: str, parser):
    try:
        return parser(cell)
    except ValueError as exc:
        raise MalformedRow(lineno, str(exc)) from None


def parse_distribution_csv(data: bytes | IO[bytes]) -> list[CorporateAction]:
    """Parse a distribution export; an empty file is an empty action list."""
    lines = _read_lines(data)
    actions: list[CorporateAction] = []
    saw_row = False
    for lineno, raw in enumerate(lines, start=1):
        text = _decode(raw, lineno)
        if not text.strip():
            continue
        cells = _cells(text)
        if not saw_row and tuple(cell.lower() for cell in cells) == DISTRIBUTION_HEADER:
            saw_row = True
            continue
        saw_row = True
        if len(cells) != 3:
            raise MalformedRow(lineno, f"expected 3 fields, got {len(cells)}")
        ex_date = _parse_cell(lineno, cells[0], parse_trading_date)
        kind = cells[1].lower()
        if kind == "cash":
            actions.append(
                CorporateAction(ex_date, CashDistribution(_parse_cell(lineno, cells[2], parse_money)))
            )
        elif kind == "split":
            actions.append(
                CorporateAction(ex_date, Split(_parse_cell(lineno, cells[2], parse_ratio)))
            )
        else:
            raise UnknownKind(lineno, f"unknown kind {cells[1]!r} (expected cash or split)")
    actions.sort(key=lambda a: a.ex_date)
    return actions


def merge_actions(
    history: PriceHistory,
    actions: list[CorporateAction] | tuple[CorporateAction, ...],
    snap_forward: bool = False,
) -> tuple[PriceHistory, list[str]]:
    """Attach separately sourced actions to the bars of ``history``.

    Same-day cash amounts are summed (with a warning when an amount from
    the price file is involved); same-day split ratios compose by
    multiplication, with a warning.  An ex-date that is not a trading
    day either snaps to the next bar date (``snap_forward``) or is an
    error; one before the first bar is always an error.
    """
    warnings: list[str] = []
    cash: dict[dt.date, Decimal] = {}
    split: dict[dt.date, Decimal] = {}
    from_file: set[dt.date] = set()
    for action in history.actions:
        if isinstance(action.kind, CashDistribution):
            cash[action.ex_date] = cash.get(action.ex_date, Decimal(0)) + action.kind.amount
            from_file.add(action.ex_date)
        else:
            split[action.ex_date] = split.get(action.ex_date, Decimal(1)) * action.kind.ratio

    if not history.bars:
        if actions:
            first_ex = min(action.ex_date for action in actions)
            raise ExDateNotTradingDay(first_ex, "history has no bars")
        return history, warnings
    first = history.bars[0].date

    for action in sorted(actions, key=lambda a: a.ex_date):
        date = action.ex_date
        if date < first:
            raise ExDateBeforeHistoryStart(date, first)
        if history.index_of(date) is None:
            if not snap_forward:
                raise ExDateNotTradingDay(date)
            target = next((d for d in history.dates if d > date), None)
            if target is None:
                raise ExDateNotTradingDay(date, "no later trading day to snap to")
            warnings.append(
                f"ex-date {date.isoformat()} is not a trading day; "
                f"snapped forward to {target.isoformat()}"
            )
            date = target
        if isinstance(action.kind, CashDistribution):
            if date in cash and date in from_file:
                warnings.append(
                    f"cash distribution on {date.isoformat()} summed with the "
                    f"amount already present in the price file"
                )
            cash[date] = cash.get(date, Decimal(0)) + action.kind.amount
        else:
            if date in split:
                warnings.append(
                    f"multiple splits on {date.isoformat()} composed by multiplication"
                )
            split[date] = split.get(date, Decimal(1)) * action.kind.ratio

    merged: list[CorporateAction] = []
    for date in sorted(set(cash) | set(split)):
        if date in cash:
            merged.append(CorporateAction(date, CashDistribution(cash[date])))
        if date in split:
            merged.append(CorporateAction(date, Split(split[date])))
    new_history = PriceHistory(
        bars=history.bars,
        actions=tuple(merged),
        symbol=history.symbol,
        provider_adjclose=history.provider_adjclose,
    )
    return new_history, warnings


def format_price(value: Decimal) -> str:
    """Render with exactly 4 fractional digits, more only when needed to
    avoid losing precision (internal precision is never truncated)."""
    try:
        quantized = value.quantize(_FOUR_DP)
    except InvalidOperation:
        return format(value, "f")
    if quantized == value:
        return format(quantized, "f")
    return format(value, "f")


def format_display(value: Decimal, places: int = 4) -> str:
    """Render rounded to ``places`` fractional digits (display contract)."""
    try:
        return format(value.quantize(Decimal(1).scaleb(-places)), "f")
    except InvalidOperation:
        return format(value, "f")


def write_adjusted_csv(
    history: PriceHistory, adjusted: AdjustedSeries, sink: IO[bytes]
) -> None:
    """Emit ``date,close,distribution,adjclose`` rows for every bar.

    Zero distributions become empty cells; adjusted values are rounded
    to 4 fractional digits.  A ``split`` column is appended only when
    the history contains splits, so that parsing the output recovers the
    actions exactly.  Output is deterministic, UTF-8, ``\\n``-terminated.
    """
    has_splits = any(isinstance(a.kind, Split) for a in history.actions)
    header = "date,close,distribution,adjclose" + (",split" if has_splits else "")
    out = [header]
    for bar in history.bars:
        value = adjusted.value_on(bar.date)
        if value is None:
            raise DateNotInSeries(bar.date)
        cash = history.cash_on(bar.date)
        row = [
            bar.date.isoformat(),
            format_price(bar.close),
            format_price(cash) if cash > 0 else "",
            format_display(value),
        ]
        if has_splits:
            ratio = history.split_on(bar.date)
            row.append(format_price(ratio) if ratio is not None else "")
        out.append(",".join(row))
    payload = ("\n".join(out) + "\n").encode("utf-8")
    try:
        sink.write(payload)
    except OSError as exc:
        raise SinkWrite(f"could not write adjusted CSV: {exc}") from exc
