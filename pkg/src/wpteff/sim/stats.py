"""Goodness of fit, efficiency and growth-shape summaries."""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np


def ks_statistic(samples: Sequence[float], cdf: Callable) -> float:
    """One-sample Kolmogorov-Smirnov distance ``sup |F_M - F|``.

    ``samples`` must already be sorted ascending. ``cdf`` is called once on
    the whole array when it accepts one, otherwise point by point.
    """
    x = np.asarray(samples, dtype=float)
    if x.ndim != 1 or x.size == 0:
        raise ValueError("need a non-empty 1-d sample")
    if np.any(np.diff(x) < 0):
        raise ValueError("samples must be sorted ascending")
    try:
        f = np.asarray(cdf(x), dtype=float)
        if f.shape != x.shape:
            raise TypeError
    except (TypeError, ValueError):
        f = np.array([cdf(v) for v in x], dtype=float)
    m = x.size
    i = np.arange(1, m + 1)
    return float(max(np.max(np.abs(i / m - f)), np.max(np.abs((i - 1) / m - f))))


def transfer_efficiency(avg_power: float, p_erp: float) -> float:
    if not p_erp > 0:
        raise ValueError("P_erp must be positive")
    return avg_power / p_erp


def _r_squared(x: np.ndarray, y: np.ndarray) -> float:
    design = np.column_stack([np.ones_like(x), x])
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    resid = y - design @ coef
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    return 1.0 - float(resid @ resid) / ss_tot


def growth_fit(ns: Sequence[int], means: Sequence[float]) -> tuple[float, float]:
    """R^2 of least-squares fits ``a + b N`` and ``a + b ln N``.

    Returns ``(linear_r2, log_r2)``.
    """
    ns = np.asarray(ns, dtype=float)
    y = np.asarray(means, dtype=float)
    if ns.shape != y.shape or ns.size < 5:
        raise ValueError("need at least 5 (N, mean) pairs")
    if np.any(ns < 1):
        raise ValueError("N values must be >= 1")
    if np.ptp(y) == 0.0:
        raise ValueError("means are constant; growth fit is undefined")
    return _r_squared(ns, y), _r_squared(np.log(ns), y)
