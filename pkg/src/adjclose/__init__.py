"""Adjusted closing prices, total returns, and dividend reinvestment.

Computes dividend- and split-aware growth ratios from close/distribution
history, fills adjusted closing prices from an arbitrary anchor, keeps a
reinvestment share ledger, and audits third-party adjusted series for
missing distributions.  All arithmetic is exact decimal.
"""

from .audit import (
    DEFAULT_TOLERANCE,
    AuditFinding,
    AuditReport,
    MonthlyComparison,
    audit_provider_series,
    findings_to_csv,
    format_summary,
)
from .domain import (
    REL_TOL,
    AdjustedSeries,
    CashDistribution,
    CorporateAction,
    GrowthSeries,
    LedgerEntry,
    PriceBar,
    PriceHistory,
    ReinvestmentLedger,
    Split,
    Violation,
    parse_trading_date,
    validate_history,
)
from .engine import (
    PeriodReturn,
    adjusted_series,
    daily_growth_ratio,
    growth_series,
    period_return,
    reinvestment_ledger,
    split_as_distribution,
)
from .errors import (
    AdjcloseError,
    BaseDateNotInHistory,
    DateNotInSeries,
    DomainError,
    DuplicateDate,
    EmptyFile,
    ExDateBeforeHistoryStart,
    ExDateNotTradingDay,
    InvalidHistory,
    MalformedRow,
    MissingProviderColumn,
    NonPositiveExPrice,
    ParseError,
    SinkWrite,
    StartNotBeforeEnd,
    UnknownKind,
)
from .ingest import (
    merge_actions,
    parse_distribution_csv,
    parse_price_csv,
    write_adjusted_csv,
)

__version__ = "0.1.0"
