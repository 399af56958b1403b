"""Autocorrelation, partial autocorrelation, and PACF-based ticker ranking."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError, NumericalError

DEFAULT_MAX_LAG = 59


@dataclass(frozen=True)
class PacfReport:
    ticker: str
    pacf: np.ndarray        # lags 1..max_lag
    max_pac: float
    argmax_lag: int


def sample_acf(series, max_lag: int) -> np.ndarray:
    """Biased sample autocorrelation for lags 0..max_lag.

    acf[k] = sum_{t>k} (x_t - xbar)(x_{t-k} - xbar) / sum_t (x_t - xbar)^2.
    The divide-by-n estimator keeps the autocovariance sequence positive
    semidefinite, which the Durbin-Levinson recursion relies on.
    """
    x = np.asarray(series, dtype=float)
    n = len(x)
    if max_lag < 0:
        raise ArgumentError(f"max_lag must be >= 0, got {max_lag}")
    if n <= max_lag:
        raise ArgumentError(
            f"series length {n} must exceed max_lag {max_lag}")
    d = x - x.mean()
    denom = float(d @ d)
    if denom <= 0 or not np.isfinite(denom):
        raise NumericalError("degenerate variance: series is constant")
    acf = np.empty(max_lag + 1)
    acf[0] = 1.0
    for k in range(1, max_lag + 1):
        acf[k] = float(d[k:] @ d[:-k]) / denom
    return acf


def pacf_durbin_levinson(series, max_lag: int = DEFAULT_MAX_LAG,
                         ticker: str = "") -> PacfReport:
    """PACF via the Durbin-Levinson order recursion on the sample ACF.

    pacf[k] is the k-th reflection coefficient phi_kk; values are checked
    against the theoretical |phi_kk| <= 1 bound at every step.
    """
    if max_lag < 1:
        raise ArgumentError(f"max_lag must be >= 1, got {max_lag}")
    rho = sample_acf(series, max_lag)
    pacf = np.empty(max_lag)
    phi_prev = np.zeros(0)
    for k in range(1, max_lag + 1):
        denom = 1.0 - float(phi_prev @ rho[1:k]) if k > 1 else 1.0
        if abs(denom) <= 1e-12:
            raise NumericalError(
                f"Durbin-Levinson denominator ~0 at lag {k}")
        num = rho[k] - (float(phi_prev @ rho[1:k][::-1]) if k > 1 else 0.0)
        phi_kk = num / denom
        if abs(phi_kk) > 1.0 + 1e-9:
            raise NumericalError(
                f"reflection coefficient {phi_kk} out of [-1, 1] at lag {k}")
        phi = np.empty(k)
        phi[:k - 1] = phi_prev - phi_kk * phi_prev[::-1]
        phi[k - 1] = phi_kk
        pacf[k - 1] = phi_kk
        phi_prev = phi
    argmax = int(np.argmax(pacf))
    return PacfReport(ticker=ticker, pacf=pacf,
                      max_pac=float(pacf[argmax]), argmax_lag=argmax + 1)


def rank_and_select(reports, k: int, use_abs: bool = False) -> list[str]:
    """Top-k tickers by maximum PACF, descending; ties by symbol ascending.

    ``use_abs`` ranks by the largest absolute PACF value instead of the
    largest signed one.
    """
    reports = list(reports)
    if k <= 0:
        raise ArgumentError(f"k must be positive, got {k}")
    if k > len(reports):
        raise ArgumentError(
            f"k={k} exceeds number of reports ({len(reports)})")
    if use_abs:
        score = {r.ticker: float(np.max(np.abs(r.pacf))) for r in reports}
    else:
        score = {r.ticker: r.max_pac for r in reports}
    ordered = sorted(reports, key=lambda r: (-score[r.ticker], r.ticker))
    return [r.ticker for r in ordered[:k]]
