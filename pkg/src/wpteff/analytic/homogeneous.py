"""Closed forms for symmetric users at a common distance ``d``.

The per-UE output power is exponential with mean ``b = c beta sigma_h2 d**-alpha``;
everything here is a function of that one scale.
"""

from __future__ import annotations

import math

import numpy as np

from ..core import SystemParams
from .evt import EvtParams
from .special import EULER_GAMMA, harmonic_number


def _check_distance(p: SystemParams, d: float) -> None:
    if not (p.r_ex <= d <= p.r_net):
        raise ValueError(f"distance {d} outside the annulus [{p.r_ex}, {p.r_net}]")


def hom_scale(p: SystemParams, d: float) -> float:
    return p.mean_gain_scale * d ** -p.alpha


def hom_power_pdf_cdf(x, p: SystemParams, d: float):
    """Density and CDF of one UE's output DC power at distance ``d``."""
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ValueError("power must be non-negative")
    rate = 1.0 / hom_scale(p, d)
    pdf = rate * np.exp(-rate * x)
    cdf = -np.expm1(-rate * x)
    if x.ndim == 0:
        return float(pdf), float(cdf)
    return pdf, cdf


def avg_rr_hom(p: SystemParams, d: float) -> float:
    """Round-robin time-average output power, ``c beta sigma_h2 d**-alpha``."""
    _check_distance(p, d)
    return hom_scale(p, d)


def gumbel_constants(p: SystemParams, d: float, n: int) -> EvtParams:
    """Position ``a1`` (the ``1 - 1/n`` quantile) and scale ``b1`` of the Gumbel limit."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    b1 = hom_scale(p, d)
    return EvtParams.gumbel(a1=b1 * math.log(n), b1=b1)


def avg_os_hom_asymptotic(p: SystemParams, d: float, n: int) -> float:
    """Large-n opportunistic average ``b1 * (ln n + gamma)``."""
    g = gumbel_constants(p, d, n)
    return g.b1 * (math.log(n) + EULER_GAMMA)


def avg_os_hom_exact(p: SystemParams, d: float, n: int) -> float:
    """Exact mean of the max of ``n`` i.i.d. exponentials: scale times ``H_n``."""
    return hom_scale(p, d) * harmonic_number(n)


def scaling_law_hom(p: SystemParams, d: float, n: int) -> float:
    """Leading term ``b1 * ln n`` (zero at n = 1)."""
    return hom_scale(p, d) * math.log(n)
