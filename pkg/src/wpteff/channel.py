"""Fading, user placement and the instantaneous received DC power.

All randomness comes in as explicit uniform draws so the callers control
the stream. Functions accept scalars or numpy arrays.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np

HOMOGENEOUS = "homogeneous"
HETEROGENEOUS = "heterogeneous"


@dataclass(frozen=True)
class Scenario:
    """Homogeneous users sit at one fixed distance; heterogeneous users are
    redrawn uniformly over the annulus every slot."""

    kind: Literal["homogeneous", "heterogeneous"]
    d_fixed: Optional[float] = None

    def __post_init__(self):
        if self.kind == HOMOGENEOUS:
            if self.d_fixed is None or not self.d_fixed > 0:
                raise ValueError("homogeneous scenario needs a positive d_fixed")
        elif self.kind == HETEROGENEOUS:
            if self.d_fixed is not None:
                raise ValueError("heterogeneous scenario carries no fixed distance")
        else:
            raise ValueError(f"unknown scenario kind {self.kind!r}")

    @classmethod
    def homogeneous(cls, d: float) -> "Scenario":
        return cls(HOMOGENEOUS, float(d))

    @classmethod
    def heterogeneous(cls) -> "Scenario":
        return cls(HETEROGENEOUS)

    @property
    def short(self) -> str:
        return "hom" if self.kind == HOMOGENEOUS else "het"

    def check_geometry(self, r_ex: float, r_net: float) -> list[str]:
        if self.kind == HOMOGENEOUS and not (r_ex <= self.d_fixed <= r_net):
            return [f"d_fixed: require r_ex <= d <= r_net (got d={self.d_fixed}, "
                    f"annulus [{r_ex}, {r_net}])"]
        return []


def sample_fading_gain(uniform_draw, sigma_h2: float):
    """Rayleigh power gain |h|^2 by inverse CDF: ``-sigma_h2 * ln(1 - u)``."""
    u = np.asarray(uniform_draw, dtype=float)
    if np.any((u <= 0.0) | (u >= 1.0)):
        raise ValueError("uniform draw must lie in the open interval (0, 1)")
    out = -sigma_h2 * np.log1p(-u)
    return float(out) if out.ndim == 0 else out


def sample_distance_annulus(uniform_draw, r_ex: float, r_net: float):
    """Distance of a point uniform over the annulus ``[r_ex, r_net]``."""
    if not (0 < r_ex < r_net):
        raise ValueError(f"require 0 < r_ex < r_net, got r_ex={r_ex}, r_net={r_net}")
    u = np.asarray(uniform_draw, dtype=float)
    if np.any((u < 0.0) | (u > 1.0)):
        raise ValueError("uniform draw must lie in [0, 1]")
    out = np.sqrt(r_ex * r_ex + u * (r_net * r_net - r_ex * r_ex))
    return float(out) if out.ndim == 0 else out


def annulus_cdf(x, r_ex: float, r_net: float):
    x = np.asarray(x, dtype=float)
    out = np.clip((x * x - r_ex * r_ex) / (r_net * r_net - r_ex * r_ex), 0.0, 1.0)
    return float(out) if out.ndim == 0 else out


def channel_gain(beta: float, d, alpha: float, h2):
    """Multiplicative gain ``beta * d**-alpha * |h|^2``."""
    d = np.asarray(d, dtype=float)
    if np.any(d <= 0):
        raise ValueError("distance must be positive")
    out = beta * d ** -alpha * np.asarray(h2, dtype=float)
    return float(out) if out.ndim == 0 else out


def instantaneous_dc_power(c: float, beta: float, d, alpha: float, h2):
    """Output DC power of one UE in one slot: ``c * beta * d**-alpha * |h|^2``."""
    return c * channel_gain(beta, d, alpha, h2)


def receive_amplitude(p_erp: float, g):
    """Envelope of the received carrier, ``sqrt(P_erp * G)``.

    The channel phase and the baseband phase only rotate the I/Q pair, so
    they never reach the amplitude.
    """
    out = np.sqrt(p_erp * np.asarray(g, dtype=float))
    return float(out) if out.ndim == 0 else out


def iq_components(p_erp: float, g, phase):
    """In-phase and quadrature parts for a total phase ``theta + arg(x)``."""
    amp = np.sqrt(p_erp * np.asarray(g, dtype=float))
    return amp * np.cos(phase), amp * np.sin(phase)
