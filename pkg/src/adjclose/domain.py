"""Value types for dates, prices, corporate actions, and aligned series.

All money and ratio arithmetic is done in :class:`decimal.Decimal` (the
default 28-significant-digit context), never binary floats.  Comparisons
that involve division results use a relative tolerance of ``REL_TOL``.
Dates are plain :class:`datetime.date` values; the set of dates present in
a price file *is* the trading calendar, no exchange calendar is consulted.

Every type here is an immutable value: safe to share across threads and
usable as a dict key where hashable.  Construction does not validate
cross-field invariants; :func:`validate_history` reports them as data.
"""

from __future__ import annotations

import datetime as dt
import re
from dataclasses import dataclass
from decimal import Decimal
from functools import cached_property

#: Relative tolerance for comparisons of decimal-division results.
REL_TOL = Decimal("1e-9")

_DATE_RE = re.compile(r"^\d{4}-\d{2}-\d{2}$")
_MONEY_RE = re.compile(r"^\$?[0-9]+(\.[0-9]+)?$")


def parse_trading_date(text: str) -> dt.date:
    """Parse an ISO ``YYYY-MM-DD`` date, rejecting every other layout."""
    text = text.strip()
    if not _DATE_RE.match(text):
        raise ValueError(f"bad date {text!r} (expected YYYY-MM-DD)")
    try:
        return dt.date.fromisoformat(text)
    except ValueError:
        raise ValueError(f"bad date {text!r} (no such calendar day)") from None


def format_trading_date(date: dt.date) -> str:
    return date.isoformat()


def parse_money(text: str) -> Decimal:
    """Parse a non-negative decimal amount.

    A single leading ``$`` is stripped; thousands separators, signs,
    exponents, and bare ``.5`` / ``5.`` forms are rejected.
    """
    text = text.strip()
    if not _MONEY_RE.match(text):
        raise ValueError(f"bad amount {text!r}")
    return Decimal(text.lstrip("$"))


def parse_ratio(text: str) -> Decimal:
    """Parse a positive decimal ratio, also accepting ``a:b`` notation."""
    text = text.strip()
    if ":" in text:
        num_text, _, den_text = text.partition(":")
        num, den = parse_money(num_text), parse_money(den_text)
        if den == 0:
            raise ValueError(f"bad ratio {text!r} (zero denominator)")
        return num / den
    return parse_money(text)


def rel_diff(value: Decimal, reference: Decimal) -> Decimal:
    """|value - reference| / |reference|."""
    return abs(value - reference) / abs(reference)


def is_rel_close(value: Decimal, reference: Decimal, tol: Decimal = REL_TOL) -> bool:
    return rel_diff(value, reference) <= tol


@dataclass(frozen=True)
class PriceBar:
    """One trading day's closing price."""

    date: dt.date
    close: Decimal


@dataclass(frozen=True)
class CashDistribution:
    """Cash paid per share (dividend, capital gain) on an ex-date."""

    amount: Decimal


@dataclass(frozen=True)
class Split:
    """An alpha:1 share split; each share becomes ``ratio`` shares."""

    ratio: Decimal


@dataclass(frozen=True)
class CorporateAction:
    ex_date: dt.date
    kind: CashDistribution | Split


@dataclass(frozen=True)
class Violation:
    """One well-formedness defect found in a :class:`PriceHistory`."""

    date: dt.date | None
    message: str

    def __str__(self) -> str:
        when = self.date.isoformat() if self.date else "history"
        return f"{when}: {self.message}"


@dataclass(frozen=True, eq=False)
class PriceHistory:
    """Closing prices plus corporate actions for one security.

    ``provider_adjclose`` optionally carries a third party's adjusted
    closes aligned to ``bars`` (``None`` where the source had no value);
    it is reference data for auditing and takes no part in computation.
    """

    bars: tuple[PriceBar, ...]
    actions: tuple[CorporateAction, ...] = ()
    symbol: str = ""
    provider_adjclose: tuple[Decimal | None, ...] | None = None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PriceHistory):
            return NotImplemented
        return (
            self.bars == other.bars
            and sorted(self.actions, key=_action_sort_key) == sorted(other.actions, key=_action_sort_key)
            and self.symbol == other.symbol
        )

    def __len__(self) -> int:
        return len(self.bars)

    @cached_property
    def dates(self) -> tuple[dt.date, ...]:
        return tuple(bar.date for bar in self.bars)

    @cached_property
    def _index(self) -> dict[dt.date, int]:
        return {bar.date: i for i, bar in enumerate(self.bars)}

    def index_of(self, date: dt.date) -> int | None:
        return self._index.get(date)

    def cash_on(self, date: dt.date) -> Decimal:
        """Total cash distributed per share on ``date`` (0 if none)."""
        total = Decimal(0)
        for action in self.actions:
            if action.ex_date == date and isinstance(action.kind, CashDistribution):
                total += action.kind.amount
        return total

    def split_on(self, date: dt.date) -> Decimal | None:
        for action in self.actions:
            if action.ex_date == date and isinstance(action.kind, Split):
                return action.kind.ratio
        return None


def _action_sort_key(action: CorporateAction):
    return (action.ex_date, isinstance(action.kind, Split), str(action.kind))


@dataclass(frozen=True)
class GrowthSeries:
    """Per-day growth ratios aligned to history days 1..n."""

    entries: tuple[tuple[dt.date, Decimal], ...]

    def __len__(self) -> int:
        return len(self.entries)

    @cached_property
    def by_date(self) -> dict[dt.date, Decimal]:
        return dict(self.entries)


@dataclass(frozen=True)
class AdjustedSeries:
    """Adjusted closing prices anchored at (base_date, base_value).

    Consecutive ratios equal the growth ratios; the whole series is
    defined only up to the positive scale fixed by the anchor.
    """

    entries: tuple[tuple[dt.date, Decimal], ...]
    base_date: dt.date
    base_value: Decimal

    def __len__(self) -> int:
        return len(self.entries)

    @cached_property
    def by_date(self) -> dict[dt.date, Decimal]:
        return dict(self.entries)

    def value_on(self, date: dt.date) -> Decimal | None:
        return self.by_date.get(date)


#: Increment kinds recorded in a reinvestment ledger.
KIND_NONE = ""
KIND_REINVESTED = "reinvested"
KIND_SPLIT = "split"
KIND_REINVESTED_SPLIT = "reinvested+split"


@dataclass(frozen=True)
class LedgerEntry:
    date: dt.date
    shares: Decimal
    purchased: Decimal
    kind: str
    position_value: Decimal


@dataclass(frozen=True)
class ReinvestmentLedger:
    """Share counts over time under automatic dividend reinvestment.

    ``shares`` obeys the additive recurrence shares_i = shares_{i-1} +
    purchased_i; split increments are not purchases but are recorded the
    same way, distinguished by ``kind``.
    """

    entries: tuple[LedgerEntry, ...]
    initial_shares: Decimal

    def __len__(self) -> int:
        return len(self.entries)


def validate_history(history: PriceHistory) -> list[Violation]:
    """Report every well-formedness defect in ``history``.

    Returns an empty list iff all type invariants hold: strictly
    ascending unique dates, positive closes, every action ex-date on a
    bar other than the first (an ex-date needs a prior close), at most
    one cash distribution and one split per date, positive amounts, and
    split ratios other than 1.  Violations are data, not failures.
    """
    violations: list[Violation] = []

    seen: set[dt.date] = set()
    prev: dt.date | None = None
    for bar in history.bars:
        if bar.date in seen:
            violations.append(Violation(bar.date, "duplicate date"))
        elif prev is not None and bar.date < prev:
            violations.append(Violation(bar.date, f"date out of order (after {prev.isoformat()})"))
        seen.add(bar.date)
        prev = bar.date
        if bar.close <= 0:
            violations.append(Violation(bar.date, f"non-positive close {bar.close}"))

    first = history.bars[0].date if history.bars else None
    cash_dates: set[dt.date] = set()
    split_dates: set[dt.date] = set()
    for action in history.actions:
        label = "distribution" if isinstance(action.kind, CashDistribution) else "split"
        if action.ex_date not in seen:
            violations.append(Violation(action.ex_date, f"{label} on unknown date"))
        elif action.ex_date == first:
            violations.append(
                Violation(action.ex_date, f"{label} on first date (no prior close exists)")
            )
        if isinstance(action.kind, CashDistribution):
            if action.ex_date in cash_dates:
                violations.append(Violation(action.ex_date, "more than one cash distribution"))
            cash_dates.add(action.ex_date)
            if action.kind.amount <= 0:
                violations.append(
                    Violation(action.ex_date, f"non-positive distribution {action.kind.amount}")
                )
        else:
            if action.ex_date in split_dates:
                violations.append(Violation(action.ex_date, "more than one split"))
            split_dates.add(action.ex_date)
            if action.kind.ratio <= 0:
                violations.append(
                    Violation(action.ex_date, f"non-positive split ratio {action.kind.ratio}")
                )
            elif action.kind.ratio == 1:
                violations.append(Violation(action.ex_date, "split ratio 1 is not a split"))

    return violations
