import datetime as dt
import json
import math

import numpy as np
import pytest

from policyboost.errors import ArgumentError
from policyboost.eval_harness import (ExperimentConfig, emit_report,
                                      generate_synthetic_data, mae,
                                      parse_report_csv, parse_report_json,
                                      preset_config, rmse, run_ablation,
                                      select_tickers, synthetic_panel,
                                      time_split)
from policyboost.feature_lab import FeatureSpec, assemble
from policyboost.gbm import BoostConfig

from helpers import make_frame, make_panel

SMALL_SPEC = FeatureSpec(lag_days=(3,), lead_days=(2,),
                         rolling_mean_windows=(2,), rolling_std_windows=(2,))


def test_rmse_mae_known_values():
    a = [0.0, 0.0, 0.0, 0.0]
    p = [1.0, -1.0, 1.0, -1.0]
    assert rmse(a, p) == 1.0
    assert mae(a, p) == 1.0
    assert rmse([1, 2], [1, 2]) == 0.0
    # rmse >= mae always (Jensen)
    rng = np.random.default_rng(0)
    x, y = rng.normal(size=(2, 100))
    assert rmse(x, y) >= mae(x, y)


def test_rmse_validates_lengths():
    with pytest.raises(ArgumentError):
        rmse([1.0], [1.0, 2.0])
    with pytest.raises(ArgumentError):
        mae([], [])


def _frame_with_dates(n_dates, per_date=2):
    base = dt.date(2018, 1, 1)
    dates, tickers = [], []
    for i in range(n_dates):
        for t in range(per_date):
            dates.append(base + dt.timedelta(days=i))
            tickers.append(f"T{t}")
    n = len(dates)
    return make_frame(np.arange(n, dtype=float)[:, None], ["x"],
                      np.arange(n, dtype=float),
                      tickers=tickers, dates=dates)


def test_time_split_fraction_and_boundary():
    frame = _frame_with_dates(10)
    plan = time_split(frame, 0.2)
    train, test = plan.masks(frame)
    test_dates = sorted(set(frame.date[test]))
    assert len(test_dates) == 2  # ceil(0.2 * 10)
    assert max(frame.date[train]) < min(test_dates)
    assert plan.boundary_date == test_dates[0]
    assert (train | test).all() and not (train & test).any()


def test_time_split_ceil_rounding():
    frame = _frame_with_dates(7)
    plan = time_split(frame, 0.2)  # ceil(1.4) = 2 test dates
    _, test = plan.masks(frame)
    assert len(set(frame.date[test])) == 2


def test_time_split_no_float_overcount():
    # 0.2 * 10 must give exactly 2, not 3 (0.2*10 == 2.0000000000000004)
    frame = _frame_with_dates(10)
    _, test = time_split(frame, 0.2).masks(frame)
    assert len(set(frame.date[test])) == 2


def test_time_split_bad_fraction():
    frame = _frame_with_dates(10)
    for f in (0.0, 1.0, -0.5):
        with pytest.raises(ArgumentError):
            time_split(frame, f)


def test_synthetic_generator_deterministic():
    p1 = synthetic_panel(7, n_tickers=2, n_days=120)
    p2 = synthetic_panel(7, n_tickers=2, n_days=120)
    assert np.array_equal(p1.close, p2.close)
    assert np.array_equal(p1.int_rate, p2.int_rate)
    p3 = synthetic_panel(8, n_tickers=2, n_days=120)
    assert not np.array_equal(p1.close, p3.close)


def test_synthetic_generator_shape_and_bounds():
    prices, rates, cpi, unemp = generate_synthetic_data(
        1, n_tickers=3, n_days=100)
    assert len(prices) == 3
    for bars in prices.values():
        assert len(bars) == 100
        assert all(b.close > 0 for b in bars)
        assert all(b.date.weekday() < 5 for b in bars)
    assert rates.values.min() >= 0.5 and rates.values.max() <= 4.5
    assert (cpi.values > 0).all()
    assert (unemp.values >= 1.0).all() and (unemp.values <= 15.0).all()
    # daily rate coverage extends past the last trading day by > 28 days
    last = max(b.date for b in next(iter(prices.values())))
    assert rates.covers(last + dt.timedelta(days=28))


def test_synthetic_future_rate_coupling_is_recoverable():
    prices, rates, _, _ = generate_synthetic_data(
        3, n_tickers=1, n_days=400, rate_coupling=2.0)
    bars = next(iter(prices.values()))
    closes = np.array([b.close for b in bars])
    future = np.array([rates.latest_at(b.date + dt.timedelta(days=28))
                       for b in bars])
    # both series are persistent, so the OLS slope has few effective
    # observations; pin sign and rough magnitude only
    beta = np.polyfit(future, closes, 1)[0]
    assert beta == pytest.approx(2.0, abs=1.5)
    assert np.corrcoef(future, closes)[0, 1] > 0.2


def test_preset_configs():
    lgbm = preset_config("lgbm", seed=1)
    assert isinstance(lgbm, BoostConfig)
    assert lgbm.growth == "leaf_wise" and lgbm.goss == (0.2, 0.1) \
        and lgbm.efb == 0.0 and lgbm.max_leaves == 31
    xgb = preset_config("xgb", seed=1)
    assert xgb.growth == "level_wise" and xgb.max_depth == 6 \
        and xgb.goss is None and xgb.efb is None
    dtree = preset_config("dtree")
    assert dtree["max_depth"] == 8
    with pytest.raises(ArgumentError):
        preset_config("catboost")


def test_preset_overrides():
    cfg = preset_config("lgbm", overrides={"n_trees": 5, "goss": [0.5, 0.2]})
    assert cfg.n_trees == 5 and cfg.goss == (0.5, 0.2)
    with pytest.raises(ArgumentError, match="overrides"):
        preset_config("lgbm", overrides={"n_estimators": 5})


def test_experiment_config_rejects_unknown_keys():
    with pytest.raises(ArgumentError, match="unknown config"):
        ExperimentConfig.from_dict({"synthetic": True, "bogus": 1})


def test_experiment_config_roundtrip(tmp_path):
    doc = {"synthetic": True, "seed": 9, "test_fraction": 0.25,
           "ticker_top_k": 3, "models": ["dtree"],
           "synthetic_params": {"n_tickers": 4, "n_days": 300}}
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(doc))
    cfg = ExperimentConfig.from_json_file(str(path))
    assert cfg.seed == 9 and cfg.models == ("dtree",)
    assert cfg.synthetic_params["n_tickers"] == 4


def test_experiment_config_invalid_json(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text("{not json")
    with pytest.raises(ArgumentError, match="JSON"):
        ExperimentConfig.from_json_file(str(path))


def test_select_tickers_explicit_list():
    panel = make_panel({"AAA": range(10, 40), "BBB": range(50, 80)})
    cfg = ExperimentConfig(tickers=["BBB"])
    assert select_tickers(panel, cfg) == ["BBB"]
    with pytest.raises(ArgumentError, match="unknown"):
        select_tickers(panel, ExperimentConfig(tickers=["ZZZ"]))


def test_select_tickers_pacf_ranking_prefers_persistent():
    rng = np.random.default_rng(11)
    n = 200
    persistent = np.empty(n)
    persistent[0] = 50.0
    for i in range(1, n):
        persistent[i] = 50 + 0.95 * (persistent[i - 1] - 50) \
            + rng.normal(0, 0.3)
    noisy = 50 + rng.normal(0, 3, size=n)
    noisy = np.clip(noisy, 1.0, None)
    panel = make_panel({"PERS": persistent, "NOIS": noisy})
    cfg = ExperimentConfig(ticker_top_k=1, pac_max_lag=20)
    assert select_tickers(panel, cfg) == ["PERS"]


def _tiny_config(**extra):
    doc = {"synthetic": True, "seed": 4, "ticker_top_k": 2,
           "pac_max_lag": 20, "test_fraction": 0.2,
           "synthetic_params": {"n_tickers": 2, "n_days": 330},
           "presets": {"lgbm": {"n_trees": 20},
                       "xgb": {"n_trees": 20}}}
    doc.update(extra)
    return ExperimentConfig.from_dict(doc)


def test_run_ablation_report_shape():
    report = run_ablation(_tiny_config())
    assert len(report.rows) == 6  # 3 models x 2 variants
    keys = {(r["model"], r["variant"]) for r in report.rows}
    assert keys == {(m, v) for m in ("lgbm", "xgb", "dtree")
                    for v in ("baseline", "proposed")}
    n_test = {r["n_test"] for r in report.rows}
    assert len(n_test) == 1  # both variants score the same rows
    md = report.metadata
    assert md["seed"] == 4
    assert "leakage_note" in md and "config_digest" in md
    assert md["boundary_date"] > md["date_range"][0]
    assert "timestamp" not in md


def test_run_ablation_deterministic():
    r1 = run_ablation(_tiny_config())
    r2 = run_ablation(_tiny_config())
    assert emit_report(r1, "json") == emit_report(r2, "json")


def test_run_ablation_subset_of_models():
    report = run_ablation(_tiny_config(models=["dtree"]))
    assert {r["model"] for r in report.rows} == {"dtree"}
    assert len(report.rows) == 2


def test_emit_text_layout():
    report = run_ablation(_tiny_config(models=["dtree"]))
    text = emit_report(report, "text")
    lines = text.splitlines()
    assert lines[0].split() == ["Model", "Without", "RMSE", "Without",
                                "MAE", "With", "RMSE", "With", "MAE"]
    assert lines[2].startswith("dtree")
    assert len(lines[2].split()) == 5


def test_emit_csv_roundtrip():
    report = run_ablation(_tiny_config(models=["dtree"]))
    text = emit_report(report, "csv")
    back = parse_report_csv(text)
    assert back.rows == report.rows  # repr() floats survive exactly


def test_emit_json_roundtrip():
    report = run_ablation(_tiny_config(models=["dtree"]))
    text = emit_report(report, "json")
    back = parse_report_json(text)
    assert back.rows == report.rows
    assert back.metadata == report.metadata


def test_emit_unknown_format():
    report = run_ablation(_tiny_config(models=["dtree"]))
    with pytest.raises(ArgumentError):
        emit_report(report, "xml")


def test_emit_writes_file(tmp_path):
    report = run_ablation(_tiny_config(models=["dtree"]))
    path = tmp_path / "report.csv"
    text = emit_report(report, "csv", path=str(path))
    assert path.read_text() == text
