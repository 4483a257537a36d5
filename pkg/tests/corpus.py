"""Random price-history builders shared by property and acceptance tests.

A history is described by day specs ``(move_permille, dividend_tenbps,
split_ratio)`` applied to a geometric walk over consecutive weekdays:
dividends are the given multiple of 0.01% of the prior close (0 = none),
splits divide the close by the ratio (0 = none) and only fire when the
close is high enough to stay above 1 afterwards.
"""

from __future__ import annotations

import datetime as dt
import random
from dataclasses import replace
from decimal import Decimal

from hypothesis import strategies as st

from adjclose.domain import (
    CashDistribution,
    CorporateAction,
    PriceBar,
    PriceHistory,
    Split,
)

CENT = Decimal("0.01")
TENTH_BP = Decimal("0.0001")


def next_weekday(date: dt.date) -> dt.date:
    date += dt.timedelta(days=1)
    while date.weekday() >= 5:
        date += dt.timedelta(days=1)
    return date


def build_history(
    start: dt.date,
    start_cents: int,
    specs: list[tuple[int, int, int]],
    symbol: str = "GEN",
) -> PriceHistory:
    date = start if start.weekday() < 5 else next_weekday(start)
    close = Decimal(start_cents) / 100
    bars = [PriceBar(date, close)]
    actions: list[CorporateAction] = []
    for move, dividend_tenbps, split_ratio in specs:
        date = next_weekday(date)
        prev = close
        close = (prev * (1000 + move) / 1000).quantize(CENT)
        close = min(max(close, Decimal(1)), Decimal(500))
        if split_ratio and prev >= 4:
            close = (close / split_ratio).quantize(CENT)
            actions.append(CorporateAction(date, Split(Decimal(split_ratio))))
        if dividend_tenbps:
            amount = (prev * dividend_tenbps / 10000).quantize(TENTH_BP)
            if amount > 0:
                actions.append(CorporateAction(date, CashDistribution(amount)))
        bars.append(PriceBar(date, close))
    return PriceHistory(bars=tuple(bars), actions=tuple(actions), symbol=symbol)


def random_history(
    rng: random.Random,
    max_days: int = 400,
    dividend_prob: float = 0.025,
    split_prob: float = 0.02,
) -> PriceHistory:
    n = rng.randint(2, max_days)
    specs = []
    for _ in range(n - 1):
        move = rng.randint(-80, 80)
        dividend = rng.randint(10, 499) if rng.random() < dividend_prob else 0
        split = rng.choice((2, 3)) if rng.random() < split_prob else 0
        specs.append((move, dividend, split))
    start = dt.date(1995, 1, 2) + dt.timedelta(days=rng.randint(0, 9000))
    return build_history(start, rng.randint(100, 50000), specs)


@st.composite
def histories(draw, min_days: int = 2, max_days: int = 30) -> PriceHistory:
    n = draw(st.integers(min_days, max_days))
    specs = draw(
        st.lists(
            st.tuples(
                st.integers(-80, 80),
                st.one_of(st.just(0), st.integers(10, 499)),
                st.sampled_from((0, 0, 0, 0, 0, 0, 0, 0, 2, 3)),
            ),
            min_size=n - 1,
            max_size=n - 1,
        )
    )
    start = dt.date(2000, 1, 3) + dt.timedelta(days=draw(st.integers(0, 6000)))
    return build_history(start, draw(st.integers(100, 50000)), specs)


def with_provider(history: PriceHistory, values) -> PriceHistory:
    """Attach an adjusted-series iterable as the provider column."""
    return replace(history, provider_adjclose=tuple(values))


def drop_action(history: PriceHistory, action: CorporateAction) -> PriceHistory:
    remaining = tuple(a for a in history.actions if a is not action)
    return replace(history, actions=remaining)
