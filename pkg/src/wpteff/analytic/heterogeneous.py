"""Users spread uniformly over the annulus ``[r_ex, r_net]``.

Output power is ``K d**-alpha |h|^2`` with ``K = c beta sigma_h2``, ``|h|^2``
unit exponential and ``d`` distributed with density ``2 d / (r_net^2 - r_ex^2)``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq
from scipy.special import lambertw

from ..core import SystemParams
from .evt import EvtParams
from .special import adaptive_quad, gamma_interval


@dataclass(frozen=True)
class HetTailConstants:
    """Per-watt exponential rates at the inner and outer radius."""

    r1: float
    r2: float

    def __post_init__(self):
        if not (0 < self.r1 < self.r2):
            raise ValueError(f"need 0 < r1 < r2, got {self.r1}, {self.r2}")

    @classmethod
    def from_params(cls, p: SystemParams) -> "HetTailConstants":
        k = p.mean_gain_scale
        return cls(p.r_ex ** p.alpha / k, p.r_net ** p.alpha / k)


def _require_alpha(p: SystemParams) -> None:
    if not p.alpha > 2:
        raise ValueError(f"heterogeneous closed forms need alpha > 2, got {p.alpha}")


def _area(p: SystemParams) -> float:
    return p.r_net ** 2 - p.r_ex ** 2


def cdf_pout_het(x: float, p: SystemParams) -> float:
    """CDF of one UE's output power, evaluated term by term in its closed form.

    Loses relative accuracy deep in the upper tail (two near-equal terms
    cancel there); use :func:`sf_pout_het` for tail probabilities.
    """
    if x < 0 or math.isnan(x):
        raise ValueError(f"x must be non-negative, got {x}")
    if x == 0:
        return 0.0
    t = HetTailConstants.from_params(p)
    k = p.mean_gain_scale
    area = _area(p)
    a = 1.0 + 2.0 / p.alpha
    exp_terms = (p.r_net ** 2 * math.exp(-t.r2 * x) - p.r_ex ** 2 * math.exp(-t.r1 * x)) / area
    gamma_terms = (k / x) ** (2.0 / p.alpha) * gamma_interval(a, t.r1 * x, t.r2 * x) / area
    return 1.0 - exp_terms - gamma_terms


def sf_pout_het(x: float, p: SystemParams) -> float:
    """Survival ``1 - F(x)``.

    The recurrence ``Gamma(s+1, z) = z**s e**-z + s Gamma(s, z)`` removes the
    exponential terms exactly, leaving
    ``(2/alpha) (K/x)**(2/alpha) int_{r1 x}^{r2 x} t**(2/alpha - 1) e**-t dt / area``,
    which has no cancellation at any ``x``.
    """
    if x < 0 or math.isnan(x):
        raise ValueError(f"x must be non-negative, got {x}")
    if x == 0:
        return 1.0
    t = HetTailConstants.from_params(p)
    s = 2.0 / p.alpha
    return s * (p.mean_gain_scale / x) ** s * gamma_interval(s, t.r1 * x, t.r2 * x) / _area(p)


def pdf_pout_het(x: float, p: SystemParams) -> float:
    """Density of one UE's output power.

    Differentiating the CDF with ``d/dx Gamma(a, b x) = -b e**(-b x) (b x)**(a-1)``
    collapses to ``(2 / (alpha x area)) (K/x)**(2/alpha) int_{r1 x}^{r2 x} t**(2/alpha) e**-t dt``.
    """
    if x < 0 or math.isnan(x):
        raise ValueError(f"x must be non-negative, got {x}")
    if x == 0:
        return 1.0
    t = HetTailConstants.from_params(p)
    s = 2.0 / p.alpha
    return (2.0 / (p.alpha * x * _area(p))) * (p.mean_gain_scale / x) ** s \
        * gamma_interval(1.0 + s, t.r1 * x, t.r2 * x)


def avg_rr_het(p: SystemParams) -> float:
    """Round-robin average over the annulus."""
    _require_alpha(p)
    k = p.mean_gain_scale
    num = p.r_ex ** (2.0 - p.alpha) - p.r_net ** (2.0 - p.alpha)
    return 2.0 * k * num / ((p.alpha - 2.0) * _area(p))


def avg_rr_het_approx(p: SystemParams) -> float:
    """``r_net >> r_ex`` form: inner-ring power times ``(2/(alpha-2)) (r_ex/r_net)^2``."""
    _require_alpha(p)
    inner = p.mean_gain_scale * p.r_ex ** -p.alpha
    return inner * (2.0 / (p.alpha - 2.0)) * (p.r_ex / p.r_net) ** 2


def equivalent_distance(p: SystemParams) -> float:
    """Distance at which symmetric users match the heterogeneous round-robin average."""
    _require_alpha(p)
    return p.r_ex * (((p.alpha - 2.0) / 2.0) * (p.r_net / p.r_ex) ** 2) ** (1.0 / p.alpha)


def frechet_scale(p: SystemParams, n: int) -> EvtParams:
    """Frechet normalization with the enlarged scale ``b2 = n * avg_rr_het_approx``."""
    _require_alpha(p)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return EvtParams.frechet(b2=n * avg_rr_het_approx(p), shape=2.0 / p.alpha)


def frechet_scale_unenlarged(p: SystemParams, n: int) -> float:
    """First-order Lambert solution before enlargement; ``(alpha-2)/alpha`` of ``b2``."""
    _require_alpha(p)
    return 2.0 * n * p.mean_gain_scale / p.alpha * (p.r_ex / p.r_net) ** 2 * p.r_ex ** -p.alpha


def frechet_scale_lambert(p: SystemParams, n: int) -> float:
    """Solve ``r1 b exp(r1 b) = (2n/alpha)(r_ex/r_net)^2`` on the principal branch."""
    t = HetTailConstants.from_params(p)
    z = 2.0 * n / p.alpha * (p.r_ex / p.r_net) ** 2
    return float(lambertw(z, 0).real) / t.r1


def frechet_scale_quantile(p: SystemParams, n: int) -> float:
    """Exact ``inf{x : 1 - F(x) <= 1/n}`` by bracketing root search on the survival."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n == 1:
        return 0.0
    t = HetTailConstants.from_params(p)
    target = 1.0 / n
    hi = 1.0 / t.r1
    while sf_pout_het(hi, p) > target:
        hi *= 2.0
    return brentq(lambda x: sf_pout_het(x, p) - target, 1e-300, hi, xtol=1e-300, rtol=1e-14)


def tail_approx_het(x: float, p: SystemParams) -> float:
    """Leading asymptotic tail ``(2/alpha)(r_ex/r_net)^2 exp(-r1 x) / (r1 x)``.

    Only meaningful for ``r1 x >= 1``; outside that a RuntimeWarning is issued.
    """
    t = HetTailConstants.from_params(p)
    z = t.r1 * x
    if z < 1.0:
        warnings.warn(f"tail approximation used outside its regime (r1*x = {z:.3g} < 1)",
                      RuntimeWarning, stacklevel=2)
    return (2.0 / p.alpha) * (p.r_ex / p.r_net) ** 2 * math.exp(-z) / z


def _grid_segments(p: SystemParams, integrand):
    """Split (0, inf) for functions living on scales 1/r2 .. 1/r1 with an e^{-r1 x} tail."""
    t = HetTailConstants.from_params(p)
    x0 = 1.0 / t.r1
    edges = [0.0]
    x = 1.0 / t.r2
    while x < x0:
        edges.append(x)
        x *= 8.0
    edges.append(x0)
    segments = [(integrand, lo, hi) for lo, hi in zip(edges[:-1], edges[1:])]

    def tail(u):
        # x = x0 - ln(u)/r1 maps (0, 1] onto [x0, inf)
        xu = x0 - math.log(u) / t.r1
        return integrand(xu) / (t.r1 * u)

    segments.append((tail, 0.0, 1.0))
    return segments


def mean_os_het_numeric_many(p: SystemParams, ns, tol: float = 1e-8) -> np.ndarray:
    """Mean of the max of ``n`` i.i.d. UE powers for every ``n`` in ``ns`` at once.

    Integrates ``n x f(x) F(x)**(n-1)`` over (0, inf); one adaptive pass
    serves all ``n`` because ``F`` and ``f`` do not depend on it.
    """
    if tol < 1e-10:
        raise ValueError(f"tolerance below 1e-10 is not supported, got {tol}")
    ns = np.asarray(ns, dtype=float)
    if ns.ndim != 1 or np.any(ns < 1):
        raise ValueError("ns must be a 1-d list of counts >= 1")

    def integrand(x):
        if x <= 0.0:
            return np.zeros_like(ns)
        f = pdf_pout_het(x, p)
        if f == 0.0:
            return np.zeros_like(ns)
        cdf = min(max(cdf_pout_het(x, p), 0.0), 1.0)
        return ns * x * f * cdf ** (ns - 1.0)

    value, _ = adaptive_quad(_grid_segments(p, integrand), rtol=tol)
    return value


def mean_os_het_numeric(p: SystemParams, n: int, tol: float = 1e-8) -> float:
    """Finite-``n`` opportunistic average for heterogeneous users (quadrature)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return float(mean_os_het_numeric_many(p, [n], tol)[0])


def scaling_law_het(p: SystemParams, n: int) -> float:
    """Linear-in-n law ``n * avg_rr_het_approx``, equal to the Frechet scale."""
    return frechet_scale(p, n).b2


def incomplete_gamma_derivative(a: float, b: float, x: float) -> float:
    """``d/dx Gamma(a, b x) = -b exp(-b x) (b x)**(a - 1)``; used to cross-check densities."""
    return -b * math.exp(-b * x) * (b * x) ** (a - 1.0)

