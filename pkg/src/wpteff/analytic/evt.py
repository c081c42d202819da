"""Limiting laws for the maximum output power: Gumbel and Frechet."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np

from .special import EULER_GAMMA


@dataclass(frozen=True)
class EvtParams:
    kind: Literal["gumbel", "frechet"]
    a1: Optional[float] = None
    b1: Optional[float] = None
    b2: Optional[float] = None
    shape: Optional[float] = None

    def __post_init__(self):
        if self.kind == "gumbel":
            if self.a1 is None or self.b1 is None or not self.b1 > 0:
                raise ValueError("gumbel needs a1 and b1 > 0")
        elif self.kind == "frechet":
            if self.b2 is None or not self.b2 > 0 or self.shape is None or not self.shape > 0:
                raise ValueError("frechet needs b2 > 0 and shape > 0")
        else:
            raise ValueError(f"unknown limit kind {self.kind!r}")

    @classmethod
    def gumbel(cls, a1: float, b1: float) -> "EvtParams":
        return cls("gumbel", a1=a1, b1=b1)

    @classmethod
    def frechet(cls, b2: float, shape: float) -> "EvtParams":
        return cls("frechet", b2=b2, shape=shape)

    def normalize(self, x):
        """Map raw maxima onto the standard limit's scale."""
        x = np.asarray(x, dtype=float)
        if self.kind == "gumbel":
            return (x - self.a1) / self.b1
        return x / self.b2


def standard_gumbel_cdf(z):
    return np.exp(-np.exp(-np.asarray(z, dtype=float)))


def standard_frechet_cdf(z, shape: float):
    z = np.asarray(z, dtype=float)
    out = np.zeros_like(z)
    pos = z > 0
    out[pos] = np.exp(-z[pos] ** -shape)
    return out


def limiting_cdf(params: EvtParams, x):
    """CDF of the un-normalized limiting law; Frechet is 0 for ``x <= 0``."""
    z = params.normalize(x)
    if params.kind == "gumbel":
        out = standard_gumbel_cdf(z)
    else:
        out = standard_frechet_cdf(np.atleast_1d(z), params.shape).reshape(np.shape(z))
    return float(out) if np.ndim(out) == 0 else out


def limiting_mean(params: EvtParams) -> float:
    """Gumbel mean ``a1 + gamma b1``; the Frechet mean is infinite for shape <= 1."""
    if params.kind == "gumbel":
        return params.a1 + EULER_GAMMA * params.b1
    if params.shape <= 1:
        return float("inf")
    return params.b2 * math.gamma(1.0 - 1.0 / params.shape)
