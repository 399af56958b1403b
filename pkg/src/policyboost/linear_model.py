"""Ordinary least squares with classical t-inference.

Used to validate feature relevance before the ablation: fit the full
design on close prices and report coefficients, standard errors, and
two-sided p-values. The solve goes through an SVD (rank-revealing
orthogonal decomposition) rather than the normal equations; singular
values below 1e-10 of the largest flag collinearity.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import betainc

from .errors import ArgumentError, NumericalError
from .feature_lab import FeatureFrame

RANK_RTOL = 1e-10


@dataclass
class OlsFit:
    names: list[str]
    coefficients: np.ndarray
    standard_errors: np.ndarray
    t_stats: np.ndarray
    p_values: np.ndarray
    n_obs: int
    n_params: int
    residual_variance: float

    def coef(self, name: str) -> float:
        return float(self.coefficients[self._idx(name)])

    def p_value(self, name: str) -> float:
        return float(self.p_values[self._idx(name)])

    def _idx(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ArgumentError(f"unknown coefficient {name!r}") from None


def student_t_sf(t: float, dof: int) -> float:
    """Upper tail P(T > t) of Student's t via the regularized incomplete
    beta function."""
    if dof < 1:
        raise ArgumentError(f"dof must be >= 1, got {dof}")
    if t == 0.0:
        return 0.5
    if t < 0:
        return 1.0 - student_t_sf(-t, dof)
    x = dof / (dof + t * t)
    return 0.5 * float(betainc(dof / 2.0, 0.5, x))


def _design(frame: FeatureFrame) -> tuple[np.ndarray, list[str]]:
    """Intercept plus features, dropping the lexicographically first
    member of each one-hot group (and members absent from this sample)
    to keep the design full rank."""
    dropped = set()
    indicator = set()
    for members in frame.onehot_groups.values():
        dropped.add(sorted(members)[0])
        indicator.update(members)
    names = ["intercept"]
    cols = [np.ones(len(frame))]
    for j, name in enumerate(frame.feature_names):
        if name in dropped:
            continue
        if name in indicator and not frame.X[:, j].any():
            continue
        names.append(name)
        cols.append(frame.X[:, j])
    return np.column_stack(cols), names


def ols_fit(frame: FeatureFrame) -> OlsFit:
    """Least-squares fit with classical standard errors and p-values."""
    X, names = _design(frame)
    y = np.asarray(frame.y, dtype=float)
    n, p = X.shape
    if n <= p:
        raise ArgumentError(
            f"insufficient data: {n} observations for {p} parameters")
    u, s, vt = np.linalg.svd(X, full_matrices=False)
    if s[0] <= 0:
        raise NumericalError("design matrix is identically zero")
    small = s < RANK_RTOL * s[0]
    if small.any():
        offenders = set()
        for row in vt[small]:
            offenders.update(np.array(names)[np.abs(row) > 1e-6])
        raise NumericalError(
            "collinear design; offending columns: "
            + ", ".join(sorted(offenders)))
    beta = vt.T @ ((u.T @ y) / s)
    resid = y - X @ beta
    rss = float(resid @ resid)
    dof = n - p
    sigma2 = rss / dof
    # diag((X'X)^-1) = sum_k v_jk^2 / s_k^2
    xtx_inv_diag = (vt.T ** 2 / s ** 2).sum(axis=1)
    se = np.sqrt(sigma2 * xtx_inv_diag)
    with np.errstate(divide="ignore", invalid="ignore"):
        t_stats = np.where(se > 0, beta / se, 0.0)
    p_values = np.array([2.0 * student_t_sf(abs(t), dof) for t in t_stats])
    return OlsFit(names=names, coefficients=beta, standard_errors=se,
                  t_stats=t_stats, p_values=np.clip(p_values, 0.0, 1.0),
                  n_obs=n, n_params=p, residual_variance=sigma2)


def significance_report(fit: OlsFit, alpha: float,
                        focus: list[str] | None = None):
    """Rows of (name, coef, p-value, significant at alpha)."""
    names = focus if focus is not None else fit.names
    rows = []
    for name in names:
        coef = fit.coef(name)
        p = fit.p_value(name)
        rows.append((name, coef, p, p <= alpha))
    return rows


def format_report(rows, alpha: float) -> str:
    width = max(len(r[0]) for r in rows)
    lines = [f"{'':{width}}  {'coef':>12}  {'p-value':>8}  sig@{alpha:g}"]
    for name, coef, p, sig in rows:
        lines.append(f"{name:{width}}  {coef:>12.4g}  {p:>8.3f}  "
                     f"{'*' if sig else ''}")
    return "\n".join(lines)
