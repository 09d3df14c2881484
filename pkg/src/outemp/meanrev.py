"""Temperature mean-reversion rate via a martingale estimating function.

One-day transitions of the de-seasonalized temperature satisfy
E[T(j) | T(j-1)] = m(j) + (T(j-1) - m(j-1)) * exp(-kappa), where m is the
seasonal mean. Weighting each transition by the inverse squared monthly
volatility of the lagged day gives an estimating equation whose exact
zero is the closed form

    kappa = -log( sum w r_{j-1} r_j / sum w r_{j-1}^2 )

with r the seasonal residuals. The estimating-function value at the
estimate is kept as a diagnostic; it must vanish up to rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import EstimationError, InputError
from .seasonal import SeasonalMeanParams, evaluate_seasonal_mean, residuals
from .series import TemperatureSeries
from .volatility import MonthlyVolatilitySeries


@dataclass(frozen=True)
class MeanReversionEstimate:
    kappa_t: float      # per day
    g_at_kappa: float   # estimating-function value at kappa_t
    n_terms: int

    @property
    def daily_adjustment_fraction(self) -> float:
        """Fraction of a deviation removed per day, 1 - exp(-kappa)."""
        return 1.0 - math.exp(-self.kappa_t)


def conditional_mean(seasonal: SeasonalMeanParams, kappa: float,
                     temp_prev: float, t_prev: int) -> float:
    """Expected temperature at day t_prev+1 given the value at t_prev."""
    if kappa < 0:
        raise InputError("kappa must be non-negative")
    m_prev = evaluate_seasonal_mean(seasonal, t_prev)
    m_next = evaluate_seasonal_mean(seasonal, t_prev + 1)
    return m_next + (temp_prev - m_prev) * math.exp(-kappa)


def estimating_function(resid: np.ndarray, weights: np.ndarray,
                        kappa: float) -> float:
    """Weighted estimating sum sum_j w_j r_{j-1} (r_j - r_{j-1} e^-kappa).

    ``weights`` has one entry per transition (length len(resid) - 1).
    """
    r_prev = resid[:-1]
    r_next = resid[1:]
    return float(np.sum(weights * r_prev * (r_next - r_prev * math.exp(-kappa))))


def estimating_terms_scale(resid: np.ndarray, weights: np.ndarray,
                           kappa: float) -> float:
    """Sum of term magnitudes of the estimating sum; tolerance scale for
    the zero check."""
    r_prev = resid[:-1]
    r_next = resid[1:]
    return float(np.sum(np.abs(weights * r_prev * (r_next - r_prev * math.exp(-kappa)))))


def transition_weights(series: TemperatureSeries,
                       vols: MonthlyVolatilitySeries) -> np.ndarray:
    """1 / sigma^2(month of day j-1) for each transition j."""
    by_month = vols.by_month()
    w = np.empty(len(series) - 1)
    for j in range(1, len(series)):
        d = series.dates[j - 1]
        sigma = by_month.get((d.year, d.month))
        if sigma is None:
            raise EstimationError(
                f"no monthly volatility for {d.year}-{d.month:02d}",
                stage="mean_reversion")
        if sigma <= 0.0:
            raise EstimationError(
                f"zero volatility in month {d.year}-{d.month:02d}; "
                "transition weights undefined", stage="mean_reversion")
        w[j - 1] = 1.0 / (sigma * sigma)
    return w


def estimate_kappa(series: TemperatureSeries, seasonal: SeasonalMeanParams,
                   vols: MonthlyVolatilitySeries) -> MeanReversionEstimate:
    """Closed-form zero of the weighted estimating equation."""
    if len(series) < 3:
        raise InputError("need at least 3 observations to estimate kappa")
    r = residuals(series, seasonal)
    w = transition_weights(series, vols)
    denom = float(np.sum(w * r[:-1] * r[:-1]))
    if denom == 0.0:
        raise EstimationError("all lagged residuals are zero",
                              stage="mean_reversion")
    ratio = float(np.sum(w * r[:-1] * r[1:])) / denom
    if ratio <= 0.0:
        raise EstimationError(
            f"residuals anti-persistent (lag-1 ratio {ratio:.6g} <= 0), "
            "log undefined", stage="mean_reversion", ratio=ratio)
    if ratio >= 1.0:
        raise EstimationError(
            f"residuals not mean-reverting (lag-1 ratio {ratio:.6g} >= 1)",
            stage="mean_reversion", ratio=ratio)
    kappa = -math.log(ratio)
    return MeanReversionEstimate(
        kappa_t=kappa,
        g_at_kappa=estimating_function(r, w, kappa),
        n_terms=w.size,
    )
