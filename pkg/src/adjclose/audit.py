"""Reconcile a provider's adjusted-close series against computed ratios.

A provider series is compared ratio-by-ratio: its day-over-day ratio
should equal the growth ratio computed from closes and recorded actions.
Where they disagree beyond tolerance, solving the ex-day growth formula
for the distribution yields the amount the provider appears to have
priced in that is absent from the recorded actions.  The sign carries
direction: positive means the recorded actions are missing a
distribution the provider knows about; negative means the provider's
series is missing a recorded one.

The provider's anchor is irrelevant; only ratios are compared.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from typing import Literal

from .domain import PriceHistory, rel_diff
from .engine import growth_series
from .errors import MissingProviderColumn
from .ingest import format_display

#: Absorbs provider rounding of adjusted closes (typically 2 decimals)
#: while catching any dividend above about a basis point of price.
DEFAULT_TOLERANCE = Decimal("1e-4")

Severity = Literal["info", "discrepancy"]


@dataclass(frozen=True)
class AuditFinding:
    date: dt.date
    computed_sigma: Decimal
    provider_sigma: Decimal
    implied_missing_distribution: Decimal | None
    severity: Severity
    note: str = ""


@dataclass(frozen=True)
class MonthlyComparison:
    """Growth of one calendar month, measured month-end to month-end."""

    month: str  # YYYY-MM
    computed: Decimal
    provider: Decimal

    @property
    def sign_disagreement(self) -> bool:
        return (self.computed > 1) != (self.provider > 1)


@dataclass(frozen=True)
class AuditReport:
    findings: tuple[AuditFinding, ...]
    monthly: tuple[MonthlyComparison, ...]
    days_compared: int
    tolerance: Decimal

    @property
    def discrepancies(self) -> tuple[AuditFinding, ...]:
        return tuple(f for f in self.findings if f.severity == "discrepancy")


def audit_provider_series(
    history: PriceHistory,
    tolerance: Decimal = DEFAULT_TOLERANCE,
    include_info: bool = False,
) -> AuditReport:
    """Compare provider adjusted-close ratios against computed ratios.

    Emits one finding per day whose ratios disagree beyond ``tolerance``
    (relative to the computed ratio); ``include_info`` additionally
    emits an info finding for every agreeing day.  Requires a positive
    provider value on every bar.
    """
    provider = _provider_values(history)
    growth = growth_series(history)

    findings: list[AuditFinding] = []
    for i, (date, computed) in enumerate(growth.entries, start=1):
        provider_sigma = provider[i] / provider[i - 1]
        if rel_diff(provider_sigma, computed) > tolerance:
            findings.append(
                _discrepancy(history, i, date, computed, provider_sigma)
            )
        elif include_info:
            findings.append(
                AuditFinding(date, computed, provider_sigma, None, "info")
            )

    monthly = _monthly_comparison(history, growth, provider)
    return AuditReport(
        findings=tuple(findings),
        monthly=monthly,
        days_compared=len(growth),
        tolerance=tolerance,
    )


def _provider_values(history: PriceHistory) -> tuple[Decimal, ...]:
    values = history.provider_adjclose
    if values is None:
        raise MissingProviderColumn("history has no provider adjclose column")
    for bar, value in zip(history.bars, values):
        if value is None or value <= 0:
            raise MissingProviderColumn(
                f"provider adjclose missing or non-positive on {bar.date.isoformat()}"
            )
    return tuple(values)  # type: ignore[return-value]


def _discrepancy(
    history: PriceHistory,
    i: int,
    date: dt.date,
    computed: Decimal,
    provider_sigma: Decimal,
) -> AuditFinding:
    simple = _near_simple_ratio(computed / provider_sigma)
    if simple is not None:
        return AuditFinding(
            date,
            computed,
            provider_sigma,
            None,
            "discrepancy",
            note=f"possible split (ratio close to {simple})",
        )
    prev_close = history.bars[i - 1].close
    close = history.bars[i].close
    recorded = history.cash_on(date)
    ratio = history.split_on(date) or Decimal(1)
    # Solve sigma = a*C/(C_prev - D_total) for D_total, then subtract
    # what is already on record.
    implied = prev_close - ratio * close / provider_sigma - recorded
    return AuditFinding(date, computed, provider_sigma, implied, "discrepancy")


def _near_simple_ratio(value: Decimal) -> Fraction | None:
    """The nearest small fraction when ``value`` sits within 1% of one."""
    if value <= 0:
        return None
    exact = Fraction(value)
    candidate = exact.limit_denominator(10)
    if candidate <= 0 or candidate == 1:
        return None
    if abs(exact - candidate) <= candidate * Fraction(1, 100):
        return candidate
    return None


def _monthly_comparison(
    history: PriceHistory,
    growth,
    provider: tuple[Decimal, ...],
) -> tuple[MonthlyComparison, ...]:
    # Cumulative products form an adjusted series anchored at day 0 = 1;
    # month growth is its ratio between consecutive month-ends present
    # in the data.
    computed_level = [Decimal(1)]
    for _, sigma in growth.entries:
        computed_level.append(computed_level[-1] * sigma)

    month_end: dict[str, int] = {}
    for i, bar in enumerate(history.bars):
        month_end[f"{bar.date.year:04d}-{bar.date.month:02d}"] = i

    months = sorted(month_end)
    rows = []
    for prev_month, month in zip(months, months[1:]):
        a, b = month_end[prev_month], month_end[month]
        rows.append(
            MonthlyComparison(
                month=month,
                computed=computed_level[b] / computed_level[a],
                provider=provider[b] / provider[a],
            )
        )
    return tuple(rows)


def findings_to_csv(report: AuditReport) -> str:
    """Findings as ``date,computed_sigma,provider_sigma,implied_distribution,severity``.

    Sigmas and implied amounts carry 6 fractional digits; the default
    tolerance is well inside that resolution.
    """
    lines = ["date,computed_sigma,provider_sigma,implied_distribution,severity"]
    for f in report.findings:
        implied = (
            format_display(f.implied_missing_distribution, 6)
            if f.implied_missing_distribution is not None
            else ""
        )
        lines.append(
            ",".join(
                [
                    f.date.isoformat(),
                    format_display(f.computed_sigma, 6),
                    format_display(f.provider_sigma, 6),
                    implied,
                    f.severity,
                ]
            )
        )
    return "\n".join(lines) + "\n"


def format_summary(report: AuditReport) -> str:
    """Human-readable audit summary for the console."""
    discrepancies = report.discrepancies
    lines = [
        f"audited {report.days_compared} day-over-day ratios: "
        f"{len(discrepancies)} discrepancy(ies) at relative tolerance {report.tolerance}"
    ]
    if report.monthly:
        lines.append("monthly growth, computed vs provider:")
        for row in report.monthly:
            mark = "  ** sign disagreement" if row.sign_disagreement else ""
            lines.append(
                f"  {row.month}  computed {format_display(row.computed)}"
                f"  provider {format_display(row.provider)}{mark}"
            )
    for f in discrepancies:
        if f.note:
            detail = f.note
        else:
            implied = f.implied_missing_distribution
            side = "absent from recorded actions" if implied > 0 else "missing from provider series"
            detail = f"implied distribution {format_display(abs(implied), 6)} {side}"
        lines.append(
            f"  {f.date.isoformat()}  computed {format_display(f.computed_sigma, 6)}"
            f"  provider {format_display(f.provider_sigma, 6)}  {detail}"
        )
    return "\n".join(lines) + "\n"
