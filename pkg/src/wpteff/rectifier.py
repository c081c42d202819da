"""Schottky-diode rectifier: diode law, series truncation and DC extraction.

Two coefficient conventions exist for the power series of the diode law.
The physical Taylor series carries ``1/k!``; the power model used for the
DC output drops the factorials, which is what gives the DC constant
``I_s * A**2 / (rho V_T)**2``. ``truncated_series_current`` is the Taylor
reference, ``rectified_dc_current`` and ``lpf_dc_oracle`` follow the
factorial-free power-model convention (a factor 2 apart at k = 2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

POWER_MODEL_ORDER = 2


@dataclass(frozen=True)
class DiodeParams:
    i_s: float
    rho: float
    v_t: float

    def __post_init__(self):
        if not (self.i_s > 0 and self.rho >= 1 and self.v_t > 0):
            raise ValueError(f"invalid diode parameters {self}")

    @classmethod
    def from_system(cls, p) -> "DiodeParams":
        return cls(p.i_s, p.rho, p.v_t)

    @property
    def n_vt(self) -> float:
        return self.rho * self.v_t


def diode_current(v, dp: DiodeParams):
    """Shockley law ``I_s * (exp(v / (rho V_T)) - 1)``."""
    out = dp.i_s * np.expm1(np.asarray(v, dtype=float) / dp.n_vt)
    return float(out) if out.ndim == 0 else out


def _series(v, dp: DiodeParams, order: int, factorials: bool):
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    x = np.asarray(v, dtype=float) / dp.n_vt
    term = np.ones_like(x)
    total = np.zeros_like(x)
    for k in range(1, order + 1):
        term = term * x / k if factorials else term * x
        total = total + term
    out = dp.i_s * total
    return float(out) if out.ndim == 0 else out


def truncated_series_current(v, dp: DiodeParams, order: int):
    """Taylor polynomial of the diode law about zero, through ``order``."""
    return _series(v, dp, order, factorials=True)


def power_model_current(v, dp: DiodeParams, order: int):
    """Factorial-free series ``sum_k I_s (v / rho V_T)**k`` of the power model."""
    return _series(v, dp, order, factorials=False)


def rectified_dc_current(a, dp: DiodeParams):
    """DC term after the low-pass filter for the envelope ``a``, order-2 model."""
    a = np.asarray(a, dtype=float)
    if np.any(a < 0):
        raise ValueError("amplitude must be non-negative")
    out = dp.i_s * a * a / dp.n_vt ** 2
    return float(out) if out.ndim == 0 else out


def lpf_dc_oracle(a: float, dp: DiodeParams, order: int = POWER_MODEL_ORDER,
                  samples_per_period: int = 256, *, factorials: bool = False) -> float:
    """Numeric low-pass filter: average the series current over one carrier period.

    The input is ``sqrt(2) * a * cos(theta)`` on an equispaced grid; the
    trapezoid rule on a full period is exact for trigonometric polynomials
    of degree below ``samples_per_period``.
    """
    if samples_per_period < 64:
        raise ValueError("need at least 64 samples per period")
    theta = 2.0 * math.pi * np.arange(samples_per_period) / samples_per_period
    v = math.sqrt(2.0) * a * np.cos(theta)
    current = _series(v, dp, order, factorials=factorials)
    return float(np.mean(current))


def output_dc_power(i_dc, xi: float):
    """Stored power ``xi * i_dc``; watt-valued by the model's convention."""
    if not (0 < xi <= 1):
        raise ValueError(f"xi must be in (0, 1], got {xi}")
    i_dc = np.asarray(i_dc, dtype=float)
    if np.any(i_dc < 0):
        raise ValueError("DC current must be non-negative")
    out = xi * i_dc
    return float(out) if out.ndim == 0 else out
