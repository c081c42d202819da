"""Von Mises hazard diagnostics for the single-UE power distribution."""

from __future__ import annotations

import math

from ..channel import Scenario
from ..core import SystemParams
from .homogeneous import hom_power_pdf_cdf, hom_scale
from .heterogeneous import pdf_pout_het, sf_pout_het
from .special import NumericalError


def _het_density_fd(x: float, p: SystemParams) -> float:
    h = max(1e-6 * x, 1e-12)
    lo = max(x - h, 0.5 * x)
    return -(sf_pout_het(x + h, p) - sf_pout_het(lo, p)) / (x + h - lo)


def von_mises_diagnostic(p: SystemParams, scenario: Scenario, x: float) -> float:
    """Homogeneous: hazard ``f/(1-F)``. Heterogeneous: ``x f/(1-F)``.

    The heterogeneous density comes from a central difference of the
    survival function.
    """
    if not x > 0:
        raise ValueError(f"x must be positive, got {x}")
    if scenario.kind == "homogeneous":
        pdf, _ = hom_power_pdf_cdf(x, p, scenario.d_fixed)
        # survival taken directly; 1 - cdf cancels once the cdf nears 1
        sf = math.exp(-x / hom_scale(p, scenario.d_fixed))
        if sf <= 0.0 or pdf <= 0.0:
            raise NumericalError(f"survival underflowed at x={x}")
        return pdf / sf
    sf = sf_pout_het(x, p)
    f = _het_density_fd(x, p)
    if sf <= 0.0 or not f > 0.0:
        raise NumericalError(f"finite-difference density failed at x={x} (sf={sf}, f={f})")
    return x * f / sf


def von_mises_analytic(p: SystemParams, scenario: Scenario, x: float) -> float:
    """Same quantity with the closed-form density; cross-check for the finite difference."""
    if scenario.kind == "homogeneous":
        return 1.0 / hom_scale(p, scenario.d_fixed)
    return x * pdf_pout_het(x, p) / sf_pout_het(x, p)
