"""Exception types shared across the package.

Two families matter to callers: ``ParseError`` for anything wrong with an
input byte stream (every instance carries a 1-based ``line``), and
``DomainError`` for data that parsed fine but violates a computation's
preconditions.  The CLI maps the families to exit codes 1 and 2.
"""

from __future__ import annotations

import datetime as dt


class AdjcloseError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(AdjcloseError):
    """A byte stream could not be parsed; ``line`` is 1-based."""

    def __init__(self, line: int, reason: str):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class MalformedRow(ParseError):
    """A row contains an unparseable date, number, or field layout."""


class DuplicateDate(ParseError):
    """Two price rows carry the same date."""

    def __init__(self, line: int, date: dt.date):
        self.date = date
        super().__init__(line, f"duplicate date {date.isoformat()}")


class EmptyFile(ParseError):
    """The input contains no data rows."""

    def __init__(self, reason: str = "no data rows"):
        super().__init__(1, reason)


class UnknownKind(ParseError):
    """A distribution row names a kind other than 'cash' or 'split'."""


class SinkWrite(AdjcloseError):
    """Writing serialized output to the sink failed."""


class DomainError(AdjcloseError):
    """Input data violates a computation's preconditions."""


class InvalidHistory(DomainError):
    """A price history fails validation; carries the violation list."""

    def __init__(self, violations):
        self.violations = list(violations)
        lead = "; ".join(str(v) for v in self.violations[:3])
        more = len(self.violations) - 3
        if more > 0:
            lead += f"; and {more} more"
        super().__init__(f"invalid price history: {lead}")


class NonPositiveExPrice(DomainError):
    """A distribution is at least the prior close, so the ex-price C - D
    would be zero or negative.  Almost always a data/unit error."""

    def __init__(self, date: dt.date | None, prev_close, amount):
        self.date = date
        self.prev_close = prev_close
        self.amount = amount
        when = f" on {date.isoformat()}" if date else ""
        super().__init__(
            f"distribution {amount}{when} is not below the prior close {prev_close}"
        )


class BaseDateNotInHistory(DomainError):
    def __init__(self, date: dt.date):
        self.date = date
        super().__init__(f"base date {date.isoformat()} is not a trading day in the history")


class DateNotInSeries(DomainError):
    def __init__(self, date: dt.date):
        self.date = date
        super().__init__(f"date {date.isoformat()} is not in the adjusted series")


class StartNotBeforeEnd(DomainError):
    def __init__(self, start: dt.date, end: dt.date):
        self.start = start
        self.end = end
        super().__init__(f"start {start.isoformat()} is not before end {end.isoformat()}")


class ExDateNotTradingDay(DomainError):
    def __init__(self, date: dt.date, detail: str = ""):
        self.date = date
        msg = f"ex-date {date.isoformat()} is not a trading day in the history"
        super().__init__(msg + (f" ({detail})" if detail else ""))


class ExDateBeforeHistoryStart(DomainError):
    def __init__(self, date: dt.date, start: dt.date):
        self.date = date
        super().__init__(
            f"ex-date {date.isoformat()} precedes the first trading day {start.isoformat()}"
        )


class MissingProviderColumn(DomainError):
    """The history lacks a usable provider adjusted close on some bar."""
