"""Command-line entry points.

Exit codes: 0 success, 2 config/argument error, 3 data validation error,
4 numerical error.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys

from .data_ingest import load_price_csv
from .errors import ArgumentError, DataValidationError, NumericalError
from .eval_harness import ExperimentConfig, emit_report, load_panel, \
    run_ablation, select_tickers, _restrict
from .feature_lab import assemble
from .linear_model import format_report, ols_fit, significance_report
from .ts_stats import pacf_durbin_levinson, rank_and_select

TABLE2_FOCUS = ["volume", "cpi", "unemp", "int_rate",
                "lead_t7_int_rate", "lead_t14_int_rate",
                "lead_t21_int_rate", "lead_t28_int_rate"]


def _load_config(args) -> ExperimentConfig:
    if args.config:
        config = ExperimentConfig.from_json_file(args.config)
    else:
        config = ExperimentConfig()
    if getattr(args, "synthetic", False):
        config.synthetic = True
    if getattr(args, "seed", None) is not None:
        config.seed = args.seed
    if not config.synthetic and not args.config:
        raise ArgumentError("either --config or --synthetic is required")
    return config


def _write_out(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_rank_tickers(args) -> None:
    prices = load_price_csv(args.prices)
    reports = []
    for ticker in sorted(prices):
        closes = [bar.close for bar in prices[ticker]]
        reports.append(pacf_durbin_levinson(closes, args.max_lag,
                                            ticker=ticker))
    top = rank_and_select(reports, min(args.top, len(reports)),
                          use_abs=args.pac_abs)
    by_ticker = {r.ticker: r for r in reports}
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["ticker", "max_pac", "argmax_lag"])
    for t in top:
        r = by_ticker[t]
        writer.writerow([t, repr(r.max_pac), r.argmax_lag])
    _write_out(out.getvalue(), args.out)


def _build_frames(config: ExperimentConfig):
    panel = load_panel(config)
    chosen = select_tickers(panel, config)
    panel = _restrict(panel, chosen)
    return panel


def cmd_features(args) -> None:
    config = _load_config(args)
    panel = _build_frames(config)
    frame = assemble(panel, config.feature_spec, args.variant)
    frame.to_csv(args.out)


def cmd_validate(args) -> None:
    config = _load_config(args)
    panel = _build_frames(config)
    frame = assemble(panel, config.feature_spec, "proposed")
    fit = ols_fit(frame)
    rows = significance_report(fit, args.alpha, TABLE2_FOCUS)
    text = format_report(rows, args.alpha) + "\n"
    if args.csv:
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["name", "coef", "p-value", "significant"])
        for name, coef, p, sig in rows:
            writer.writerow([name, repr(coef), repr(p), int(sig)])
        _write_out(out.getvalue(), args.csv)
    sys.stdout.write(text)


def cmd_ablate(args) -> None:
    config = _load_config(args)
    report = run_ablation(config, include_timestamp=args.timestamp)
    rendered = emit_report(report, format=args.format, path=args.out)
    if not args.out:
        sys.stdout.write(rendered)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="policyboost",
        description="Stock-price forecasting with anticipated-policy "
                    "features: ticker ranking, feature export, OLS "
                    "validation, and the with/without ablation.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rank-tickers",
                       help="rank tickers by maximum partial "
                            "autocorrelation")
    p.add_argument("--prices", required=True)
    p.add_argument("--max-lag", type=int, default=59)
    p.add_argument("--top", type=int, default=10)
    p.add_argument("--pac-abs", action="store_true",
                   help="rank by |PACF| instead of the signed value")
    p.add_argument("--out")
    p.set_defaults(func=cmd_rank_tickers)

    p = sub.add_parser("features", help="materialize a feature frame CSV")
    p.add_argument("--config")
    p.add_argument("--synthetic", action="store_true")
    p.add_argument("--seed", type=int)
    p.add_argument("--variant", choices=["baseline", "proposed"],
                   default="proposed")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_features)

    p = sub.add_parser("validate",
                       help="OLS significance report on the proposed "
                            "features")
    p.add_argument("--config")
    p.add_argument("--synthetic", action="store_true")
    p.add_argument("--seed", type=int)
    p.add_argument("--alpha", type=float, default=0.10)
    p.add_argument("--csv", help="also write the report as CSV")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("ablate",
                       help="run the with/without-proposed-features "
                            "comparison")
    p.add_argument("--config")
    p.add_argument("--synthetic", action="store_true")
    p.add_argument("--seed", type=int)
    p.add_argument("--format", choices=["text", "csv", "json"],
                   default="text")
    p.add_argument("--out")
    p.add_argument("--timestamp", action="store_true",
                   help="include a wall-clock timestamp in the metadata")
    p.set_defaults(func=cmd_ablate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except ArgumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DataValidationError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 3
    except NumericalError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
