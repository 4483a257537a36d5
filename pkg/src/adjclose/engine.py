"""Growth ratios, adjusted closing prices, period returns, reinvestment.

The daily growth ratio of a security whose prior close is C- and whose
close is C+ is C+/C- on an ordinary day, C+/(C- - D) when day two is the
ex-date of a cash distribution D (the holder starts the day from the
effective price C- - D), and a*C+/C- after an a:1 split.  A split is
equivalent to a cash distribution of (a-1)/a * C-.

Adjusted closing prices are any positive series whose consecutive ratios
equal the growth ratios; they are fixed only up to a positive scale
chosen via an anchor (base date, base value) and filled outward from the
anchor by x_next = x * sigma going forward and x_prev = x / sigma going
backward.  The growth of the security between two dates is then the
ratio of its adjusted closes, which telescopes to the product of the
daily ratios; total return is that ratio minus one.

Reinvesting each cash distribution at the ex-price C- - D buys
D/(C- - D) new shares per share held, which makes position value track
the adjusted series exactly.

All functions are pure and operate on immutable inputs.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass
from decimal import Decimal

from .domain import (
    KIND_NONE,
    KIND_REINVESTED,
    KIND_REINVESTED_SPLIT,
    KIND_SPLIT,
    AdjustedSeries,
    CashDistribution,
    GrowthSeries,
    LedgerEntry,
    PriceHistory,
    ReinvestmentLedger,
    Split,
    validate_history,
)
from .errors import (
    BaseDateNotInHistory,
    DateNotInSeries,
    InvalidHistory,
    NonPositiveExPrice,
    StartNotBeforeEnd,
)

__all__ = [
    "PeriodReturn",
    "daily_growth_ratio",
    "split_as_distribution",
    "growth_series",
    "adjusted_series",
    "period_return",
    "reinvestment_ledger",
]


@dataclass(frozen=True)
class PeriodReturn:
    """Growth of a security between two trading dates."""

    start_date: dt.date
    end_date: dt.date
    growth_ratio: Decimal

    @property
    def total_return(self) -> Decimal:
        return self.growth_ratio - 1


def daily_growth_ratio(
    prev_close: Decimal,
    close: Decimal,
    action: CashDistribution | Split | None = None,
) -> Decimal:
    """Growth ratio over one day, optionally an ex-day.

    Raises NonPositiveExPrice if a cash distribution is not below the
    prior close (the ex-price must stay positive).
    """
    if prev_close <= 0 or close <= 0:
        raise ValueError("closes must be positive")
    if action is None:
        return close / prev_close
    if isinstance(action, CashDistribution):
        return _ratio_for_day(prev_close, close, action.amount, Decimal(1), date=None)
    return action.ratio * close / prev_close


def split_as_distribution(prev_close: Decimal, ratio: Decimal) -> Decimal:
    """Cash distribution equivalent to an alpha:1 split: (a-1)/a * C-."""
    if prev_close <= 0 or ratio <= 0:
        raise ValueError("prev_close and ratio must be positive")
    return (ratio - 1) / ratio * prev_close


def _ratio_for_day(
    prev_close: Decimal,
    close: Decimal,
    cash: Decimal,
    split: Decimal,
    date: dt.date | None,
) -> Decimal:
    # Cash is declared per pre-split share, so it is subtracted before
    # the split scaling: sigma = a * C+ / (C- - D).
    ex_price = prev_close - cash
    if ex_price <= 0:
        raise NonPositiveExPrice(date, prev_close, cash)
    return split * close / ex_price


def growth_series(history: PriceHistory) -> GrowthSeries:
    """One growth ratio per history day 1..n.

    Raises InvalidHistory when validate_history reports violations, and
    NonPositiveExPrice (naming the date) when a distribution is not
    below the prior close.
    """
    violations = validate_history(history)
    if violations:
        raise InvalidHistory(violations)
    entries = []
    for i in range(1, len(history.bars)):
        bar, prev = history.bars[i], history.bars[i - 1]
        cash = history.cash_on(bar.date)
        split = history.split_on(bar.date) or Decimal(1)
        sigma = _ratio_for_day(prev.close, bar.close, cash, split, bar.date)
        entries.append((bar.date, sigma))
    return GrowthSeries(tuple(entries))


def adjusted_series(
    history: PriceHistory, base_date: dt.date, base_value: Decimal
) -> AdjustedSeries:
    """Fill adjusted closing prices outward from an arbitrary anchor.

    The anchor's value is reproduced exactly; later days multiply by the
    daily ratios, earlier days divide by them.
    """
    if base_value <= 0:
        raise ValueError("base_value must be positive")
    base_index = history.index_of(base_date)
    if base_index is None:
        raise BaseDateNotInHistory(base_date)
    growth = growth_series(history)
    sigmas = [sigma for _, sigma in growth.entries]

    values: list[Decimal | None] = [None] * len(history.bars)
    values[base_index] = base_value
    for i in range(base_index + 1, len(values)):
        values[i] = values[i - 1] * sigmas[i - 1]
    for i in range(base_index - 1, -1, -1):
        values[i] = values[i + 1] / sigmas[i]

    entries = tuple((bar.date, value) for bar, value in zip(history.bars, values))
    return AdjustedSeries(entries, base_date=base_date, base_value=base_value)


def period_return(adjusted: AdjustedSeries, start: dt.date, end: dt.date) -> PeriodReturn:
    """Growth ratio x_end / x_start; independent of the series' anchor."""
    start_value = adjusted.value_on(start)
    if start_value is None:
        raise DateNotInSeries(start)
    end_value = adjusted.value_on(end)
    if end_value is None:
        raise DateNotInSeries(end)
    if start >= end:
        raise StartNotBeforeEnd(start, end)
    return PeriodReturn(start_date=start, end_date=end, growth_ratio=end_value / start_value)


def reinvestment_ledger(history: PriceHistory, initial_shares: Decimal) -> ReinvestmentLedger:
    """Share accounting with every cash distribution reinvested.

    On an ex-date the distribution buys shares at the ex-price C- - D;
    on a split day the count scales by the ratio.  When both fall on the
    same day the dividend (declared per pre-split share) is reinvested
    first and the split applied to the enlarged count.  The ``purchased``
    column records the whole increment so that shares_i = shares_{i-1} +
    purchased_i stays structurally true; ``kind`` keeps reports honest
    about which increments were actual purchases.
    """
    if initial_shares <= 0:
        raise ValueError("initial_shares must be positive")
    violations = validate_history(history)
    if violations:
        raise InvalidHistory(violations)
    if not history.bars:
        return ReinvestmentLedger((), initial_shares=initial_shares)

    entries: list[LedgerEntry] = []
    shares = initial_shares
    first = history.bars[0]
    entries.append(
        LedgerEntry(first.date, shares, Decimal(0), KIND_NONE, shares * first.close)
    )
    for i in range(1, len(history.bars)):
        bar, prev = history.bars[i], history.bars[i - 1]
        cash = history.cash_on(bar.date)
        split = history.split_on(bar.date)
        before = shares
        kind = KIND_NONE
        if cash > 0:
            ex_price = prev.close - cash
            if ex_price <= 0:
                raise NonPositiveExPrice(bar.date, prev.close, cash)
            shares += shares * cash / ex_price
            kind = KIND_REINVESTED
        if split is not None:
            shares *= split
            kind = KIND_REINVESTED_SPLIT if kind == KIND_REINVESTED else KIND_SPLIT
        entries.append(
            LedgerEntry(bar.date, shares, shares - before, kind, shares * bar.close)
        )
    return ReinvestmentLedger(tuple(entries), initial_shares=initial_shares)
