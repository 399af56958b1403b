"""Forecasting toolkit: anticipated-policy features, from-scratch tree
ensembles, and the with/without-features ablation harness."""

from .data_ingest import (MacroObservation, MacroSeries, Panel, PriceBar,
                          build_panel, forward_fill, load_macro_csv,
                          load_price_csv)
from .errors import (ArgumentError, DataValidationError, NumericalError,
                     PolicyBoostError)
from .eval_harness import (ComparisonReport, ExperimentConfig, SplitPlan,
                           emit_report, mae, rmse, run_ablation,
                           synthetic_panel, time_split)
from .feature_lab import (FeatureFrame, FeatureSpec, assemble,
                          calendar_indicators, lag_feature,
                          lead_interest_rate, rolling_stat)
from .gbm import (BoostConfig, BoostedEnsemble, FeatureBundle, GBMRegressor,
                  efb_plan, ensemble_from_json, ensemble_to_json, fit_gbm,
                  goss_sample, leaf_weight, predict_ensemble, quantile_bins,
                  split_gain)
from .linear_model import (OlsFit, ols_fit, significance_report,
                           student_t_sf)
from .tree_model import (RegressionTree, TreeNode, TreeParams, best_split,
                         fit_tree, predict_tree)
from .ts_stats import (PacfReport, pacf_durbin_levinson, rank_and_select,
                       sample_acf)

__version__ = "0.1.0"
