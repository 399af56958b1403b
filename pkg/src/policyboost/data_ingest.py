"""CSV ingestion and panel assembly.

Reads local snapshots of daily prices (``ticker,date,close,volume``) and
macro series (``date,value``), broadcasts the macro series onto the
trading-day calendar by forward fill, and merges everything into a single
per-ticker-day panel.
"""

from __future__ import annotations

import bisect
import csv
import datetime as dt
from dataclasses import dataclass, field

import numpy as np

from .errors import ArgumentError, DataValidationError

MACRO_KINDS = ("interest_rate", "cpi", "unemployment")

PRICE_HEADER = ["ticker", "date", "close", "volume"]
MACRO_HEADER = ["date", "value"]


@dataclass(frozen=True)
class PriceBar:
    ticker: str
    date: dt.date
    close: float
    volume: int


@dataclass(frozen=True)
class MacroObservation:
    date: dt.date
    value: float
    kind: str


@dataclass
class MacroSeries:
    """Dated observations of one macro quantity, strictly increasing dates."""

    kind: str
    dates: list[dt.date]
    values: np.ndarray

    def __len__(self) -> int:
        return len(self.dates)

    def observations(self) -> list[MacroObservation]:
        return [MacroObservation(d, float(v), self.kind)
                for d, v in zip(self.dates, self.values)]

    def latest_at(self, date: dt.date) -> float:
        """Most recent value at or before ``date``.

        Raises DataValidationError when ``date`` precedes the first
        observation; returns the last value for dates past the end only if
        ``date`` <= last observation date, otherwise raises (no
        extrapolation beyond coverage is allowed for lead lookups).
        """
        i = bisect.bisect_right(self.dates, date)
        if i == 0:
            raise DataValidationError(
                f"{self.kind}: date {date} precedes first observation "
                f"{self.dates[0]}")
        return float(self.values[i - 1])

    def covers(self, date: dt.date) -> bool:
        return self.dates[0] <= date <= self.dates[-1]


@dataclass
class Panel:
    """Merged per-ticker-day table with macro columns attached.

    Row arrays are parallel and sorted by (ticker, date). ``rate_series``
    keeps the raw interest-rate observations so that downstream lead
    features can look past the panel's own calendar.
    """

    ticker: np.ndarray
    date: np.ndarray          # object array of datetime.date
    close: np.ndarray
    volume: np.ndarray
    int_rate: np.ndarray
    cpi: np.ndarray
    unemp: np.ndarray
    calendar: list[dt.date] = field(default_factory=list)
    tickers: list[str] = field(default_factory=list)
    rate_series: MacroSeries | None = None

    def __len__(self) -> int:
        return len(self.date)

    def ticker_rows(self, ticker: str) -> np.ndarray:
        """Indices of this ticker's rows, in date order."""
        if ticker not in self.tickers:
            raise ArgumentError(f"unknown ticker {ticker!r}")
        return np.flatnonzero(self.ticker == ticker)


def _parse_date(text: str, path: str, lineno: int) -> dt.date:
    try:
        return dt.date.fromisoformat(text.strip())
    except ValueError as exc:
        raise DataValidationError(
            f"{path}:{lineno}: bad date {text!r}: {exc}") from None


def load_price_csv(path: str) -> dict[str, list[PriceBar]]:
    """Parse a price snapshot into per-ticker bars sorted by date.

    Duplicate (ticker, date) pairs and non-positive closes are rejected
    with the offending line number.
    """
    by_ticker: dict[str, list[PriceBar]] = {}
    seen: set[tuple[str, dt.date]] = set()
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != PRICE_HEADER:
            raise DataValidationError(
                f"{path}: expected header {','.join(PRICE_HEADER)!r}, "
                f"got {header!r}")
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 4:
                raise DataValidationError(
                    f"{path}:{lineno}: expected 4 fields, got {len(row)}")
            ticker = row[0].strip()
            date = _parse_date(row[1], path, lineno)
            try:
                close = float(row[2])
                volume_f = float(row[3])
            except ValueError as exc:
                raise DataValidationError(
                    f"{path}:{lineno}: malformed number: {exc}") from None
            if close <= 0:
                raise DataValidationError(
                    f"{path}:{lineno}: close must be > 0, got {close}")
            if volume_f < 0 or volume_f != int(volume_f):
                raise DataValidationError(
                    f"{path}:{lineno}: volume must be a non-negative "
                    f"integer, got {row[3]}")
            key = (ticker, date)
            if key in seen:
                raise DataValidationError(
                    f"{path}:{lineno}: duplicate (ticker, date) {key}")
            seen.add(key)
            by_ticker.setdefault(ticker, []).append(
                PriceBar(ticker, date, close, int(volume_f)))
    for bars in by_ticker.values():
        bars.sort(key=lambda b: b.date)
    return by_ticker


def load_macro_csv(path: str, kind: str) -> MacroSeries:
    """Parse a two-column macro snapshot; gaps are preserved as-is."""
    if kind not in MACRO_KINDS:
        raise ArgumentError(f"unknown macro kind {kind!r}")
    dates: list[dt.date] = []
    values: list[float] = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != MACRO_HEADER:
            raise DataValidationError(
                f"{path}: expected header {','.join(MACRO_HEADER)!r}, "
                f"got {header!r}")
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 2:
                raise DataValidationError(
                    f"{path}:{lineno}: expected 2 fields, got {len(row)}")
            date = _parse_date(row[0], path, lineno)
            try:
                value = float(row[1])
            except ValueError as exc:
                raise DataValidationError(
                    f"{path}:{lineno}: malformed number: {exc}") from None
            if dates and date <= dates[-1]:
                raise DataValidationError(
                    f"{path}:{lineno}: dates must be strictly increasing "
                    f"({date} after {dates[-1]})")
            if kind == "cpi" and value <= 0:
                raise DataValidationError(
                    f"{path}:{lineno}: cpi must be > 0, got {value}")
            if kind == "unemployment" and not 0 <= value <= 100:
                raise DataValidationError(
                    f"{path}:{lineno}: unemployment must be in [0, 100], "
                    f"got {value}")
            dates.append(date)
            values.append(value)
    if not dates:
        raise DataValidationError(f"{path}: no observations")
    return MacroSeries(kind, dates, np.asarray(values, dtype=float))


def forward_fill(series: MacroSeries, calendar: list[dt.date]) -> np.ndarray:
    """Value at each calendar date = most recent observation at or before it."""
    if calendar and calendar[0] < series.dates[0]:
        raise DataValidationError(
            f"{series.kind}: calendar starts {calendar[0]}, before first "
            f"observation {series.dates[0]}")
    out = np.empty(len(calendar), dtype=float)
    for i, d in enumerate(calendar):
        j = bisect.bisect_right(series.dates, d)
        out[i] = series.values[j - 1]
    return out


def build_panel(prices: dict[str, list[PriceBar]],
                rates: MacroSeries,
                cpi: MacroSeries,
                unemp: MacroSeries,
                years: tuple[int, int] = (2017, 2019)) -> Panel:
    """Merge prices and forward-filled macros into one sorted panel.

    Rows outside the inclusive year range are dropped; one row survives
    per (ticker, trading date) where the ticker traded.
    """
    lo, hi = years
    if lo > hi:
        raise ArgumentError(f"invalid year range {years}")
    tickers = sorted(prices)
    rows: list[tuple[str, dt.date, float, int]] = []
    for t in tickers:
        for bar in prices[t]:
            if lo <= bar.date.year <= hi:
                rows.append((t, bar.date, bar.close, bar.volume))
    if not rows:
        raise DataValidationError(
            f"panel empty after filtering to years {lo}-{hi}")
    rows.sort(key=lambda r: (r[0], r[1]))
    calendar = sorted({r[1] for r in rows})
    rate_fill = forward_fill(rates, calendar)
    cpi_fill = forward_fill(cpi, calendar)
    unemp_fill = forward_fill(unemp, calendar)
    cal_index = {d: i for i, d in enumerate(calendar)}
    idx = np.array([cal_index[r[1]] for r in rows])
    present = sorted({r[0] for r in rows})
    return Panel(
        ticker=np.array([r[0] for r in rows], dtype=object),
        date=np.array([r[1] for r in rows], dtype=object),
        close=np.array([r[2] for r in rows], dtype=float),
        volume=np.array([r[3] for r in rows], dtype=float),
        int_rate=rate_fill[idx],
        cpi=cpi_fill[idx],
        unemp=unemp_fill[idx],
        calendar=calendar,
        tickers=present,
        rate_series=rates,
    )
