"""Ablation orchestration: chronological split, model presets, RMSE/MAE
comparison across the with/without-proposed-features variants.

Also hosts the synthetic desk-scale data generator: AR(1) ticker price
paths whose level is shifted by the interest rate 28 calendar days ahead,
so the anticipated-policy features carry real signal.
"""

from __future__ import annotations

import csv
import datetime as dt
import hashlib
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .data_ingest import MacroSeries, Panel, build_panel, load_macro_csv, \
    load_price_csv, PriceBar
from .errors import ArgumentError
from .feature_lab import FeatureFrame, FeatureSpec, assemble
from .gbm import BoostConfig, fit_gbm, predict_ensemble
from .tree_model import RegressionTree
from .ts_stats import pacf_durbin_levinson, rank_and_select

MODEL_PRESETS = ("lgbm", "xgb", "dtree")

LEAKAGE_NOTE = ("lead interest-rate features intentionally reference "
                "realized future rates (anticipated-policy proxy); all "
                "other features are strictly backward-looking")


@dataclass
class SplitPlan:
    test_fraction: float
    boundary_date: dt.date
    train_keys: set
    test_keys: set

    def masks(self, frame: FeatureFrame):
        test = np.array([d >= self.boundary_date for d in frame.date])
        return ~test, test


@dataclass
class ComparisonReport:
    rows: list[dict]                 # {model, variant, rmse, mae, n_test}
    metadata: dict = field(default_factory=dict)


def time_split(frame: FeatureFrame, test_fraction: float) -> SplitPlan:
    """Latest ceil(test_fraction * distinct-date-count) dates become the
    test set, across all tickers."""
    if not 0 < test_fraction < 1:
        raise ArgumentError("test_fraction must be in (0, 1)")
    dates = sorted(set(frame.date))
    if len(dates) < 2:
        raise ArgumentError("frame must span at least 2 distinct dates")
    n_test = math.ceil(test_fraction * len(dates) - 1e-9)
    n_test = min(max(n_test, 1), len(dates) - 1)
    boundary = dates[len(dates) - n_test]
    keys = list(zip(frame.ticker, frame.date))
    test_keys = {k for k in keys if k[1] >= boundary}
    return SplitPlan(test_fraction=test_fraction, boundary_date=boundary,
                     train_keys=set(keys) - test_keys, test_keys=test_keys)


def rmse(actual, predicted) -> float:
    a = np.asarray(actual, dtype=float)
    p = np.asarray(predicted, dtype=float)
    if len(a) != len(p) or len(a) == 0:
        raise ArgumentError(
            f"need equal non-empty lengths, got {len(a)} and {len(p)}")
    return float(np.sqrt(np.mean((a - p) ** 2)))


def mae(actual, predicted) -> float:
    a = np.asarray(actual, dtype=float)
    p = np.asarray(predicted, dtype=float)
    if len(a) != len(p) or len(a) == 0:
        raise ArgumentError(
            f"need equal non-empty lengths, got {len(a)} and {len(p)}")
    return float(np.mean(np.abs(a - p)))


# --------------------------------------------------------------------------
# Synthetic data


def generate_synthetic_data(seed: int, n_tickers: int = 5,
                            n_days: int = 750, rate_coupling: float = 2.0,
                            noise_sd: float = 0.4, ar_coef: float = 0.9,
                            start: dt.date = dt.date(2017, 1, 2)):
    """Prices plus macro series with a future-rate term in the target.

    close_t = AR(1) level + rate_coupling * rate(t + 28 calendar days)
              + noise.
    """
    rng = np.random.default_rng(seed)
    calendar: list[dt.date] = []
    d = start
    while len(calendar) < n_days:
        if d.weekday() < 5:
            calendar.append(d)
        d += dt.timedelta(days=1)

    rate_start = start - dt.timedelta(days=10)
    rate_end = calendar[-1] + dt.timedelta(days=35)
    rate_dates = []
    d = rate_start
    while d <= rate_end:
        rate_dates.append(d)
        d += dt.timedelta(days=1)
    # piecewise-constant policy path: 25bp moves every two weeks, drifting
    # back toward a neutral level so train and test visit the same range
    level = 2.5
    rate_values = np.empty(len(rate_dates))
    for i in range(len(rate_dates)):
        if i % 14 == 0 and i > 0:
            p_up = 0.35 if level > 2.5 else 0.65
            step = 0.25 if rng.random() < p_up else -0.25
            level = float(np.clip(level + step, 0.5, 4.5))
        rate_values[i] = level
    rates = MacroSeries("interest_rate", rate_dates, rate_values)

    month_dates = []
    d = dt.date(rate_start.year, rate_start.month, 1)
    while d <= rate_end:
        month_dates.append(d)
        d = (d.replace(day=28) + dt.timedelta(days=5)).replace(day=1)
    cpi = MacroSeries(
        "cpi", month_dates,
        100.0 + np.cumsum(rng.normal(0.2, 0.1, len(month_dates))))
    unemp = MacroSeries(
        "unemployment", month_dates,
        np.clip(5.0 + np.cumsum(rng.normal(0.0, 0.08, len(month_dates))),
                1.0, 15.0))

    prices: dict[str, list[PriceBar]] = {}
    for t in range(n_tickers):
        name = f"SYN{t:02d}"
        mu = rng.uniform(30.0, 80.0)
        core = np.empty(n_days)
        core[0] = mu
        eps = rng.normal(0.0, noise_sd, n_days)
        for i in range(1, n_days):
            core[i] = mu + ar_coef * (core[i - 1] - mu) + eps[i]
        bars = []
        for i, date in enumerate(calendar):
            future = rates.latest_at(date + dt.timedelta(days=28))
            close = max(core[i] + rate_coupling * future, 1.0)
            bars.append(PriceBar(name, date, float(close),
                                 int(rng.integers(100_000, 5_000_000))))
        prices[name] = bars
    return prices, rates, cpi, unemp


def synthetic_panel(seed: int, years=(2017, 2019), **kwargs) -> Panel:
    prices, rates, cpi, unemp = generate_synthetic_data(seed, **kwargs)
    return build_panel(prices, rates, cpi, unemp, years=years)


# --------------------------------------------------------------------------
# Experiment config and pipeline


@dataclass
class ExperimentConfig:
    synthetic: bool = False
    prices_path: str | None = None
    rates_path: str | None = None
    cpi_path: str | None = None
    unemp_path: str | None = None
    years: tuple[int, int] = (2017, 2019)
    tickers: list[str] | None = None       # explicit list skips PAC ranking
    ticker_top_k: int = 10
    pac_max_lag: int = 59
    pac_abs: bool = False
    test_fraction: float = 0.2
    seed: int = 42
    models: tuple[str, ...] = MODEL_PRESETS
    feature_spec: FeatureSpec = field(default_factory=FeatureSpec)
    preset_overrides: dict = field(default_factory=dict)
    synthetic_params: dict = field(default_factory=dict)

    @classmethod
    def from_dict(cls, doc: dict) -> "ExperimentConfig":
        known = {
            "synthetic", "years", "tickers", "ticker_top_k", "pac_max_lag",
            "pac_abs", "test_fraction", "seed", "models", "data",
            "feature_spec", "presets", "synthetic_params",
        }
        unknown = set(doc) - known
        if unknown:
            raise ArgumentError(f"unknown config keys: {sorted(unknown)}")
        data = doc.get("data", {})
        try:
            spec = FeatureSpec(**{k: tuple(v) if isinstance(v, list) else v
                                  for k, v in
                                  doc.get("feature_spec", {}).items()})
        except TypeError as exc:
            raise ArgumentError(f"bad feature_spec: {exc}") from None
        return cls(
            synthetic=bool(doc.get("synthetic", False)),
            prices_path=data.get("prices"),
            rates_path=data.get("rates"),
            cpi_path=data.get("cpi"),
            unemp_path=data.get("unemp"),
            years=tuple(doc.get("years", (2017, 2019))),
            tickers=doc.get("tickers"),
            ticker_top_k=int(doc.get("ticker_top_k", 10)),
            pac_max_lag=int(doc.get("pac_max_lag", 59)),
            pac_abs=bool(doc.get("pac_abs", False)),
            test_fraction=float(doc.get("test_fraction", 0.2)),
            seed=int(doc.get("seed", 42)),
            models=tuple(doc.get("models", MODEL_PRESETS)),
            preset_overrides=doc.get("presets", {}),
            synthetic_params=doc.get("synthetic_params", {}),
        )

    @classmethod
    def from_json_file(cls, path: str) -> "ExperimentConfig":
        with open(path, encoding="utf-8") as fh:
            try:
                doc = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ArgumentError(f"{path}: invalid JSON: {exc}") from None
        return cls.from_dict(doc)


def preset_config(name: str, seed: int = 42,
                  overrides: dict | None = None) -> BoostConfig | dict:
    """Hyperparameter presets for the three compared models."""
    if name == "lgbm":
        base = dict(growth="leaf_wise", max_leaves=31, goss=(0.2, 0.1),
                    efb=0.0, n_bins=63, n_trees=70, seed=seed)
    elif name == "xgb":
        base = dict(growth="level_wise", max_depth=6, max_leaves=64,
                    goss=None, efb=None, n_bins=63, n_trees=70, seed=seed)
    elif name == "dtree":
        base = dict(max_depth=8, min_samples_leaf=20, min_samples_split=40)
    else:
        raise ArgumentError(f"unknown model preset {name!r}")
    if overrides:
        unknown = set(overrides) - (
            set(BoostConfig.__dataclass_fields__) if name != "dtree"
            else {"max_depth", "min_samples_leaf", "min_samples_split"})
        if unknown:
            raise ArgumentError(
                f"unknown {name} overrides: {sorted(unknown)}")
        over = dict(overrides)
        if over.get("goss") is not None:
            over["goss"] = tuple(over["goss"])
        base.update(over)
    if name == "dtree":
        return base
    return BoostConfig(**base)


def _fit_predict(name: str, cfg, train: FeatureFrame,
                 X_test: np.ndarray) -> np.ndarray:
    if name == "dtree":
        model = RegressionTree(**cfg).fit_frame(train)
        return model.predict(X_test)
    ensemble = fit_gbm(train, cfg)
    return predict_ensemble(ensemble, X_test,
                            feature_names=train.feature_names)


def _subset(frame: FeatureFrame, mask: np.ndarray) -> FeatureFrame:
    return FeatureFrame(ticker=frame.ticker[mask], date=frame.date[mask],
                        y=frame.y[mask], X=frame.X[mask],
                        feature_names=frame.feature_names,
                        variant=frame.variant,
                        onehot_groups=frame.onehot_groups)


def load_panel(config: ExperimentConfig) -> Panel:
    if config.synthetic:
        return synthetic_panel(config.seed, years=config.years,
                               **config.synthetic_params)
    for label, path in (("prices", config.prices_path),
                        ("rates", config.rates_path),
                        ("cpi", config.cpi_path),
                        ("unemp", config.unemp_path)):
        if path is None:
            raise ArgumentError(f"config missing data path for {label!r}")
    prices = load_price_csv(config.prices_path)
    rates = load_macro_csv(config.rates_path, "interest_rate")
    cpi = load_macro_csv(config.cpi_path, "cpi")
    unemp = load_macro_csv(config.unemp_path, "unemployment")
    return build_panel(prices, rates, cpi, unemp, years=config.years)


def select_tickers(panel: Panel, config: ExperimentConfig) -> list[str]:
    if config.tickers is not None:
        unknown = [t for t in config.tickers if t not in panel.tickers]
        if unknown:
            raise ArgumentError(f"unknown tickers in config: {unknown}")
        return list(config.tickers)
    reports = []
    for t in panel.tickers:
        closes = panel.close[panel.ticker_rows(t)]
        reports.append(pacf_durbin_levinson(closes, config.pac_max_lag,
                                            ticker=t))
    k = min(config.ticker_top_k, len(reports))
    return rank_and_select(reports, k, use_abs=config.pac_abs)


def _restrict(panel: Panel, tickers: list[str]) -> Panel:
    mask = np.isin(panel.ticker, tickers)
    return Panel(ticker=panel.ticker[mask], date=panel.date[mask],
                 close=panel.close[mask], volume=panel.volume[mask],
                 int_rate=panel.int_rate[mask], cpi=panel.cpi[mask],
                 unemp=panel.unemp[mask],
                 calendar=sorted(set(panel.date[mask])),
                 tickers=sorted(set(tickers)),
                 rate_series=panel.rate_series)


def run_ablation(config: ExperimentConfig,
                 include_timestamp: bool = False) -> ComparisonReport:
    """Full pipeline: ingest, rank tickers, build both variants, shared
    chronological split, fit every preset on each variant, score."""
    panel = load_panel(config)
    chosen = select_tickers(panel, config)
    panel = _restrict(panel, chosen)
    frames = {v: assemble(panel, config.feature_spec, v)
              for v in ("baseline", "proposed")}
    plan = time_split(frames["proposed"], config.test_fraction)
    rows = []
    for name in config.models:
        cfg = preset_config(name, seed=config.seed,
                            overrides=config.preset_overrides.get(name))
        for variant in ("baseline", "proposed"):
            frame = frames[variant]
            train_mask, test_mask = plan.masks(frame)
            train = _subset(frame, train_mask)
            test = _subset(frame, test_mask)
            pred = _fit_predict(name, cfg, train, test.X)
            rows.append({
                "model": name, "variant": variant,
                "rmse": rmse(test.y, pred), "mae": mae(test.y, pred),
                "n_test": len(test),
            })
    digest = hashlib.sha256(
        json.dumps({"seed": config.seed, "models": list(config.models),
                    "years": list(config.years),
                    "test_fraction": config.test_fraction},
                   sort_keys=True).encode()).hexdigest()[:16]
    metadata = {
        "seed": config.seed,
        "config_digest": digest,
        "date_range": [min(frames["proposed"].date).isoformat(),
                       max(frames["proposed"].date).isoformat()],
        "boundary_date": plan.boundary_date.isoformat(),
        "leakage_note": LEAKAGE_NOTE,
    }
    if include_timestamp:
        metadata["timestamp"] = dt.datetime.now().isoformat()
    return ComparisonReport(rows=rows, metadata=metadata)


# --------------------------------------------------------------------------
# Report rendering


def _row_pairs(report: ComparisonReport):
    models = []
    for r in report.rows:
        if r["model"] not in models:
            models.append(r["model"])
    by_key = {(r["model"], r["variant"]): r for r in report.rows}
    return models, by_key


def emit_report(report: ComparisonReport, format: str = "text",
                path: str | None = None) -> str:
    """Render the comparison table; text mirrors the published layout
    (model rows, without/with RMSE and MAE columns)."""
    if not report.rows:
        raise ArgumentError("empty report")
    if format == "text":
        models, by_key = _row_pairs(report)
        out = io.StringIO()
        head = (f"{'Model':<14}{'Without RMSE':>14}{'Without MAE':>13}"
                f"{'With RMSE':>12}{'With MAE':>11}")
        out.write(head + "\n")
        out.write("-" * len(head) + "\n")
        for m in models:
            wo = by_key[(m, "baseline")]
            wi = by_key[(m, "proposed")]
            out.write(f"{m:<14}{wo['rmse']:>14.3f}{wo['mae']:>13.3f}"
                      f"{wi['rmse']:>12.3f}{wi['mae']:>11.3f}\n")
        rendered = out.getvalue()
    elif format == "csv":
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["model", "variant", "rmse", "mae", "n_test"])
        for r in report.rows:
            writer.writerow([r["model"], r["variant"], repr(r["rmse"]),
                             repr(r["mae"]), r["n_test"]])
        rendered = out.getvalue()
    elif format == "json":
        rendered = json.dumps(
            {"rows": report.rows, "metadata": report.metadata}, indent=2)
    else:
        raise ArgumentError(f"unknown format {format!r}")
    if path is not None:
        try:
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(rendered)
        except OSError as exc:
            raise OSError(f"cannot write report to {path}: {exc}") from exc
    return rendered


def parse_report_csv(text: str) -> ComparisonReport:
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    rows = []
    for rec in reader:
        r = dict(zip(header, rec))
        rows.append({"model": r["model"], "variant": r["variant"],
                     "rmse": float(r["rmse"]), "mae": float(r["mae"]),
                     "n_test": int(r["n_test"])})
    return ComparisonReport(rows=rows)


def parse_report_json(text: str) -> ComparisonReport:
    doc = json.loads(text)
    return ComparisonReport(rows=doc["rows"], metadata=doc["metadata"])
