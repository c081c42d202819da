"""System parameters, unit conversions and derived constants.

Everything inside the package is SI (W, m, V, A). dBm only shows up at the
CLI boundary. Distances enter ``d ** -alpha`` as plain numbers of metres;
the channel scale ``beta`` absorbs the reference-distance constant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace

# Default deployment: geometry, channel and rectifier constants.
REFERENCE_PARAMS = {
    "r_ex": 2.0,
    "r_net": 30.0,
    "alpha": 4.0,
    "beta": 1.0,
    "sigma_h2": 1.0,
    "xi": 0.85,
    "i_s": 1e-3,
    "rho": 1.0,
    "v_t": 28.85e-3,
}

# IEEE C95.1-2005 public exposure limit, 2-100 GHz.
EXPOSURE_LIMIT_W_M2 = 10.0


class ConfigError(ValueError):
    """Invalid parameter set. ``violations`` lists every failed constraint."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


@dataclass(frozen=True)
class SystemParams:
    r_ex: float
    r_net: float
    alpha: float
    beta: float
    sigma_h2: float
    xi: float
    i_s: float
    rho: float
    v_t: float
    p_erp: float

    def __post_init__(self):
        problems = check_params(**{f.name: getattr(self, f.name) for f in fields(self)})
        if problems:
            raise ConfigError(problems)

    @classmethod
    def reference(cls, p_dbm: float = 50.0, **overrides) -> "SystemParams":
        values = dict(REFERENCE_PARAMS, p_erp=dbm_to_watts(p_dbm))
        values.update(overrides)
        return cls(**values)

    def with_p_erp(self, p_erp: float) -> "SystemParams":
        return replace(self, p_erp=p_erp)

    @property
    def c(self) -> float:
        return rectifier_constant(self)

    @property
    def mean_gain_scale(self) -> float:
        """c * beta * sigma_h2, the scale every average power is built on."""
        return self.c * self.beta * self.sigma_h2


def check_params(**values) -> list[str]:
    """Return every violated constraint (empty list when valid)."""
    out = []

    def finite(name):
        v = values.get(name)
        if v is None or not isinstance(v, (int, float)) or not math.isfinite(v):
            out.append(f"{name}: must be a finite number (got {v!r})")
            return False
        return True

    ok = {name: finite(name) for name in
          ("r_ex", "r_net", "alpha", "beta", "sigma_h2", "xi", "i_s", "rho", "v_t", "p_erp")}
    v = values
    if ok["r_ex"] and ok["r_net"] and not (0 < v["r_ex"] < v["r_net"]):
        out.append(f"r_ex/r_net: require 0 < r_ex < r_net (got r_ex={v['r_ex']}, r_net={v['r_net']})")
    if ok["alpha"] and not v["alpha"] > 2:
        out.append(f"alpha: require alpha > 2; the (alpha - 2) factor of the "
                   f"heterogeneous average is singular at 2 (got {v['alpha']})")
    for name in ("beta", "sigma_h2", "i_s", "v_t", "p_erp"):
        if ok[name] and not v[name] > 0:
            out.append(f"{name}: require {name} > 0 (got {v[name]})")
    if ok["xi"] and not (0 < v["xi"] <= 1):
        out.append(f"xi: require 0 < xi <= 1 (got {v['xi']})")
    if ok["rho"] and not v["rho"] >= 1:
        out.append(f"rho: require rho >= 1 (got {v['rho']})")
    return out


def dbm_to_watts(p_dbm: float) -> float:
    return 10.0 ** ((p_dbm - 30.0) / 10.0)


def watts_to_dbm(p_w: float) -> float:
    return 10.0 * math.log10(p_w) + 30.0


def rectifier_constant(p: SystemParams) -> float:
    """Conversion constant ``c = xi * I_s * P_erp / (rho * V_T)**2``.

    Units are loose: the result behaves as watts only because distances are
    dimensionless multiples of one metre.
    """
    return p.xi * p.i_s * p.p_erp / (p.rho * p.v_t) ** 2


def power_density(p_erp: float, d: float) -> float:
    """Isotropic far-field power density ``P_erp / (4 pi d^2)`` in W/m^2."""
    if not d > 0:
        raise ValueError(f"distance must be positive, got {d}")
    return p_erp / (4.0 * math.pi * d * d)
