"""Design-matrix construction: lags, leads, rolling stats, indicators.

Two variants are produced from the same panel. The baseline carries
volume, the 28-day lagged price, rolling statistics of that lagged price,
and calendar/ticker indicators. The proposed variant adds the current
macro columns plus the four forward-looking interest-rate features. Rows
with any incomplete window are dropped identically in both variants so
that model comparisons run on the same observations.
"""

from __future__ import annotations

import csv
import datetime as dt
from dataclasses import dataclass, field

import numpy as np

from .data_ingest import MacroSeries, Panel
from .errors import ArgumentError, DataValidationError

VARIANTS = ("baseline", "proposed")

MONTH_NAMES = [f"month_{m}" for m in range(1, 13)]
WEEKDAY_NAMES = ["dow_mon", "dow_tue", "dow_wed", "dow_thu", "dow_fri"]

PROPOSED_EXTRA = ["cpi", "unemp", "int_rate",
                  "lead_t7_int_rate", "lead_t14_int_rate",
                  "lead_t21_int_rate", "lead_t28_int_rate"]


@dataclass(frozen=True)
class FeatureSpec:
    lag_days: tuple[int, ...] = (28,)
    lead_days: tuple[int, ...] = (7, 14, 21, 28)
    rolling_mean_windows: tuple[int, ...] = (7, 30, 60, 90, 180)
    rolling_std_windows: tuple[int, ...] = (7, 30)
    include_month_indicators: bool = True
    include_weekday_indicators: bool = True
    include_ticker_indicators: bool = True
    lead_in_trading_days: bool = False

    def __post_init__(self):
        for w in (self.lag_days + self.lead_days
                  + self.rolling_mean_windows + self.rolling_std_windows):
            if w < 1:
                raise ArgumentError(f"window/offset must be >= 1, got {w}")


@dataclass
class FeatureFrame:
    ticker: np.ndarray          # object array, one entry per row
    date: np.ndarray            # object array of datetime.date
    y: np.ndarray               # target: same-row close price
    X: np.ndarray               # (n_rows, n_features)
    feature_names: list[str]
    variant: str
    onehot_groups: dict[str, list[str]] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.y)

    def column(self, name: str) -> np.ndarray:
        try:
            j = self.feature_names.index(name)
        except ValueError:
            raise ArgumentError(f"unknown feature {name!r}") from None
        return self.X[:, j]

    def to_csv(self, path) -> None:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["ticker", "date", "target", *self.feature_names])
            for i in range(len(self)):
                writer.writerow([self.ticker[i], self.date[i].isoformat(),
                                 repr(float(self.y[i])),
                                 *(repr(float(v)) for v in self.X[i])])


def lag_feature(panel: Panel, ticker: str, k: int) -> np.ndarray:
    """Close price k trading rows earlier; NaN for the first k rows."""
    if k < 1:
        raise ArgumentError(f"lag must be >= 1, got {k}")
    rows = panel.ticker_rows(ticker)
    closes = panel.close[rows]
    out = np.full(len(rows), np.nan)
    if k < len(rows):
        out[k:] = closes[:-k]
    return out


def lead_interest_rate(daily_rates: MacroSeries, date: dt.date,
                       k: int) -> float:
    """Realized rate k calendar days ahead; NaN when beyond coverage."""
    target = date + dt.timedelta(days=k)
    if not daily_rates.covers(target):
        return float("nan")
    return daily_rates.latest_at(target)


def rolling_stat(panel: Panel, ticker: str, window: int,
                 base_lag: int = 28, stat: str = "mean") -> np.ndarray:
    """Rolling mean/std over the base-lagged close, trailing window.

    Sample std (n-1 denominator). NaN until the window over the lagged
    series is fully populated.
    """
    if stat not in ("mean", "std"):
        raise ArgumentError(f"stat must be 'mean' or 'std', got {stat!r}")
    if window < 1 or (stat == "std" and window < 2):
        raise ArgumentError(f"window {window} too small for {stat}")
    lagged = lag_feature(panel, ticker, base_lag)
    n = len(lagged)
    out = np.full(n, np.nan)
    start = min(base_lag, n)  # lag_feature leaves NaN only at the head
    valid = lagged[start:]
    if len(valid) >= window:
        sw = np.lib.stride_tricks.sliding_window_view(valid, window)
        res = sw.mean(axis=1) if stat == "mean" else sw.std(axis=1, ddof=1)
        out[start + window - 1:] = res
    return out


def calendar_indicators(date: dt.date) -> dict[str, float]:
    """Month and trading-weekday one-hots; weekend dates are rejected."""
    wd = date.weekday()
    if wd >= 5:
        raise DataValidationError(
            f"{date} falls on a weekend; trading calendar violated")
    vec = {name: 0.0 for name in MONTH_NAMES + WEEKDAY_NAMES}
    vec[f"month_{date.month}"] = 1.0
    vec[WEEKDAY_NAMES[wd]] = 1.0
    return vec


def _lead_column(panel: Panel, rows: np.ndarray, k: int,
                 trading_days: bool) -> np.ndarray:
    out = np.full(len(rows), np.nan)
    if trading_days:
        rates = panel.int_rate[rows]
        if k < len(rows):
            out[:-k] = rates[k:]
        return out
    series = panel.rate_series
    if series is None:
        raise ArgumentError("panel carries no interest-rate series")
    for i, r in enumerate(rows):
        out[i] = lead_interest_rate(series, panel.date[r], k)
    return out


def assemble(panel: Panel, spec: FeatureSpec = FeatureSpec(),
             variant: str = "proposed") -> FeatureFrame:
    """Build one feature variant; both variants drop the same rows.

    The missing-row mask is always computed over the union of all feature
    requirements (including leads), so baseline and proposed frames share
    identical (ticker, date) keys.
    """
    if variant not in VARIANTS:
        raise ArgumentError(f"variant must be one of {VARIANTS}")
    if len(panel) == 0:
        raise DataValidationError("empty panel")

    base_lag = spec.lag_days[0]
    columns: dict[str, np.ndarray] = {}
    n = len(panel)

    columns["volume"] = panel.volume.copy()
    macro_cols = {"cpi": panel.cpi.copy(), "unemp": panel.unemp.copy(),
                  "int_rate": panel.int_rate.copy()}

    per_ticker = {t: panel.ticker_rows(t) for t in panel.tickers}

    for k in spec.lag_days:
        col = np.full(n, np.nan)
        for t, rows in per_ticker.items():
            col[rows] = lag_feature(panel, t, k)
        columns[f"lag_t{k}"] = col
    for w in spec.rolling_mean_windows:
        col = np.full(n, np.nan)
        for t, rows in per_ticker.items():
            col[rows] = rolling_stat(panel, t, w, base_lag, "mean")
        columns[f"rolling_mean_t{w}"] = col
    for w in spec.rolling_std_windows:
        col = np.full(n, np.nan)
        for t, rows in per_ticker.items():
            col[rows] = rolling_stat(panel, t, w, base_lag, "std")
        columns[f"rolling_std_t{w}"] = col

    lead_cols: dict[str, np.ndarray] = {}
    for k in spec.lead_days:
        col = np.full(n, np.nan)
        for t, rows in per_ticker.items():
            col[rows] = _lead_column(panel, rows, k,
                                     spec.lead_in_trading_days)
        lead_cols[f"lead_t{k}_int_rate"] = col

    onehot_groups: dict[str, list[str]] = {}
    indicator_cols: dict[str, np.ndarray] = {}
    if spec.include_month_indicators or spec.include_weekday_indicators:
        cal = [calendar_indicators(d) for d in panel.date]
        if spec.include_month_indicators:
            for name in MONTH_NAMES:
                indicator_cols[name] = np.array([c[name] for c in cal])
            onehot_groups["month"] = list(MONTH_NAMES)
        if spec.include_weekday_indicators:
            for name in WEEKDAY_NAMES:
                indicator_cols[name] = np.array([c[name] for c in cal])
            onehot_groups["weekday"] = list(WEEKDAY_NAMES)
    if spec.include_ticker_indicators:
        names = []
        for t in panel.tickers:
            name = f"ticker_{t}"
            indicator_cols[name] = (panel.ticker == t).astype(float)
            names.append(name)
        onehot_groups["ticker"] = names

    # Union mask across every engineered column, lead columns included,
    # regardless of variant.
    keep = np.ones(n, dtype=bool)
    for col in columns.values():
        keep &= ~np.isnan(col)
    for col in lead_cols.values():
        keep &= ~np.isnan(col)
    if not keep.any():
        raise DataValidationError(
            "all rows dropped: no row has complete lag/lead/rolling windows")

    ordered = dict(columns)
    if variant == "proposed":
        ordered.update(macro_cols)
        ordered.update(lead_cols)
    ordered.update(indicator_cols)

    names = list(ordered)
    X = np.column_stack([ordered[name][keep] for name in names])
    return FeatureFrame(
        ticker=panel.ticker[keep].copy(),
        date=panel.date[keep].copy(),
        y=panel.close[keep].copy(),
        X=X,
        feature_names=names,
        variant=variant,
        onehot_groups=onehot_groups,
    )
