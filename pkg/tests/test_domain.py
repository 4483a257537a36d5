import datetime as dt
from decimal import Decimal

import pytest
from hypothesis import given
from hypothesis import strategies as st

from adjclose.domain import (
    CashDistribution,
    CorporateAction,
    PriceBar,
    PriceHistory,
    Split,
    format_trading_date,
    parse_money,
    parse_ratio,
    parse_trading_date,
    validate_history,
)

from corpus import histories


class TestTradingDate:
    def test_parses_iso(self):
        assert parse_trading_date("2007-12-14") == dt.date(2007, 12, 14)

    @pytest.mark.parametrize(
        "text",
        ["12/27/2007", "2007-1-2", "20071214", "2007-12-14T00:00", "2007-13-01", ""],
    )
    def test_rejects_everything_else(self, text):
        with pytest.raises(ValueError):
            parse_trading_date(text)

    @given(st.dates())
    def test_parse_then_format_is_identity(self, date):
        text = format_trading_date(date)
        assert format_trading_date(parse_trading_date(text)) == text


class TestMoneyParsing:
    def test_plain_and_dollar_prefixed(self):
        assert parse_money("83.12") == Decimal("83.12")
        assert parse_money("$0.2794") == Decimal("0.2794")

    def test_six_fractional_digits_survive(self):
        assert str(parse_money("0.123456")) == "0.123456"

    @pytest.mark.parametrize("text", ["1,234.50", "1e5", "-5", ".5", "5.", "", "abc"])
    def test_rejects_ambiguous_forms(self, text):
        with pytest.raises(ValueError):
            parse_money(text)

    def test_ratio_accepts_colon_notation(self):
        assert parse_ratio("3") == 3
        assert parse_ratio("3:1") == 3
        assert parse_ratio("7:2") == Decimal("3.5")

    def test_ratio_rejects_zero_denominator(self):
        with pytest.raises(ValueError):
            parse_ratio("3:0")


def bars(*pairs):
    return tuple(PriceBar(dt.date.fromisoformat(d), Decimal(c)) for d, c in pairs)


THREE_DAYS = bars(("2020-01-06", "100"), ("2020-01-07", "101"), ("2020-01-08", "102"))


class TestValidateHistory:
    def test_well_formed_history_has_no_violations(self):
        history = PriceHistory(
            bars=THREE_DAYS,
            actions=(CorporateAction(dt.date(2020, 1, 7), CashDistribution(Decimal("0.5"))),),
        )
        assert validate_history(history) == []

    def test_action_on_unknown_date(self):
        history = PriceHistory(
            bars=THREE_DAYS,
            actions=(CorporateAction(dt.date(2020, 1, 9), CashDistribution(Decimal("0.5"))),),
        )
        violations = validate_history(history)
        assert len(violations) == 1
        assert violations[0].date == dt.date(2020, 1, 9)
        assert "unknown date" in violations[0].message

    def test_duplicate_date(self):
        history = PriceHistory(bars=bars(("2020-01-06", "100"), ("2020-01-06", "100")))
        violations = validate_history(history)
        assert [v.message for v in violations] == ["duplicate date"]

    def test_unordered_dates(self):
        history = PriceHistory(bars=bars(("2020-01-08", "100"), ("2020-01-06", "101")))
        assert any("out of order" in v.message for v in validate_history(history))

    def test_action_on_first_date_needs_prior_close(self):
        history = PriceHistory(
            bars=THREE_DAYS,
            actions=(CorporateAction(dt.date(2020, 1, 6), CashDistribution(Decimal("0.5"))),),
        )
        assert any("first date" in v.message for v in validate_history(history))

    def test_non_positive_close(self):
        history = PriceHistory(bars=bars(("2020-01-06", "100"), ("2020-01-07", "0")))
        assert any("non-positive close" in v.message for v in validate_history(history))

    def test_action_amount_and_ratio_rules(self):
        day = dt.date(2020, 1, 7)
        history = PriceHistory(
            bars=THREE_DAYS,
            actions=(
                CorporateAction(day, CashDistribution(Decimal(0))),
                CorporateAction(day, Split(Decimal(1))),
            ),
        )
        messages = [v.message for v in validate_history(history)]
        assert any("non-positive distribution" in m for m in messages)
        assert any("split ratio 1" in m for m in messages)

    def test_at_most_one_of_each_kind_per_date(self):
        day = dt.date(2020, 1, 7)
        history = PriceHistory(
            bars=THREE_DAYS,
            actions=(
                CorporateAction(day, CashDistribution(Decimal("0.1"))),
                CorporateAction(day, CashDistribution(Decimal("0.2"))),
                CorporateAction(day, Split(Decimal(2))),
                CorporateAction(day, Split(Decimal(3))),
            ),
        )
        messages = [v.message for v in validate_history(history)]
        assert "more than one cash distribution" in messages
        assert "more than one split" in messages

    @given(histories())
    def test_generated_histories_are_well_formed(self, history):
        assert validate_history(history) == []

    @given(histories(min_days=3), st.integers(0, 5), st.data())
    def test_breaking_an_invariant_is_reported(self, history, mutation, data):
        """validate_history is empty iff the invariants hold: every class of
        breakage must surface at least one violation."""
        bars, actions = list(history.bars), list(history.actions)
        if mutation == 0:
            bars[1] = PriceBar(bars[0].date, bars[1].close)  # duplicate date
        elif mutation == 1:
            bars[0], bars[-1] = bars[-1], bars[0]  # out of order
        elif mutation == 2:
            index = data.draw(st.integers(0, len(bars) - 1))
            bars[index] = PriceBar(bars[index].date, Decimal(0))
        elif mutation == 3:
            alien = bars[-1].date + dt.timedelta(days=1)
            actions.append(CorporateAction(alien, CashDistribution(Decimal(1))))
        elif mutation == 4:
            actions.append(CorporateAction(bars[0].date, CashDistribution(Decimal(1))))
        else:
            actions.append(CorporateAction(bars[1].date, Split(Decimal(1))))
        mutated = PriceHistory(bars=tuple(bars), actions=tuple(actions))
        assert validate_history(mutated) != []
