"""Shared test fixtures: tiny panels, frames, and CSV writers."""

import datetime as dt

import numpy as np

from policyboost.data_ingest import MacroSeries, Panel, PriceBar
from policyboost.feature_lab import FeatureFrame


def make_frame(X, names, y, groups=None, variant="baseline",
               tickers=None, dates=None):
    X = np.asarray(X, dtype=float)
    n = len(X)
    if tickers is None:
        tickers = np.array(["T"] * n, dtype=object)
    if dates is None:
        base = dt.date(2018, 1, 1)
        dates = np.array([base + dt.timedelta(days=i) for i in range(n)],
                         dtype=object)
    return FeatureFrame(ticker=np.asarray(tickers, dtype=object),
                        date=np.asarray(dates, dtype=object),
                        y=np.asarray(y, dtype=float), X=X,
                        feature_names=list(names), variant=variant,
                        onehot_groups=groups or {})


def weekday_calendar(start: dt.date, n: int):
    out = []
    d = start
    while len(out) < n:
        if d.weekday() < 5:
            out.append(d)
        d += dt.timedelta(days=1)
    return out


def make_panel(closes_by_ticker, start=dt.date(2018, 1, 1), rate=2.0):
    """Panel with constant macros and a rate series extending 40 days
    beyond the last trading date."""
    n = max(len(v) for v in closes_by_ticker.values())
    cal = weekday_calendar(start, n)
    tickers = sorted(closes_by_ticker)
    t_col, d_col, c_col, v_col = [], [], [], []
    for t in tickers:
        closes = closes_by_ticker[t]
        for i, c in enumerate(closes):
            t_col.append(t)
            d_col.append(cal[i])
            c_col.append(float(c))
            v_col.append(1000.0 + i)
    m = len(t_col)
    rate_dates = [start - dt.timedelta(days=5) + dt.timedelta(days=i)
                  for i in range((cal[n - 1] - start).days + 50)]
    series = MacroSeries("interest_rate", rate_dates,
                         np.full(len(rate_dates), rate))
    return Panel(ticker=np.array(t_col, dtype=object),
                 date=np.array(d_col, dtype=object),
                 close=np.array(c_col), volume=np.array(v_col),
                 int_rate=np.full(m, rate), cpi=np.full(m, 100.0),
                 unemp=np.full(m, 5.0),
                 calendar=sorted(set(d_col)), tickers=tickers,
                 rate_series=series)


def write_price_csv(path, rows):
    lines = ["ticker,date,close,volume"]
    for r in rows:
        lines.append(",".join(str(x) for x in r))
    path.write_text("\n".join(lines) + "\n")
    return str(path)


def write_macro_csv(path, rows):
    lines = ["date,value"]
    for d, v in rows:
        lines.append(f"{d},{v}")
    path.write_text("\n".join(lines) + "\n")
    return str(path)


def bars(ticker, start, closes, volume=100):
    cal = weekday_calendar(start, len(closes))
    return [PriceBar(ticker, cal[i], float(c), volume)
            for i, c in enumerate(closes)]
