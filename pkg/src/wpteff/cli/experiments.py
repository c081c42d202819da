"""Experiment definitions: figures 5-8, EVT goodness of fit and von Mises sweeps.

Each experiment returns an :class:`ExperimentResult` holding CSV records,
plot series (one per curve), manifest entries and named threshold checks.
All simulations of one experiment share the configured seed, so curves at
different transmit powers or user counts use common random numbers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .. import analytic as an
from ..channel import Scenario
from ..core import watts_to_dbm
from ..sim import (OPPORTUNISTIC, ROUND_ROBIN, SimConfig, SimStats, ks_statistic, run_simulation,
                   transfer_efficiency)
from .config import ExperimentConfig
from .records import ExperimentRecord

SHORT = {ROUND_ROBIN: "rr", OPPORTUNISTIC: "os"}

# Efficiency levels quoted for the reference efficiency plot; not derivable from the defaults.
REFERENCE_EFFICIENCY = {"rr_hom_percent": 0.013, "rr_het_percent": 0.18, "os_het_crossing_n_above": 35}


@dataclass
class Check:
    name: str
    passed: bool
    detail: str


@dataclass
class ExperimentResult:
    name: str
    records: list[ExperimentRecord] = field(default_factory=list)
    series: dict = field(default_factory=dict)
    manifest: dict = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)
    slot_counts: dict = field(default_factory=dict)

    def add_series(self, curve: str, xs, ys, header: str = "") -> None:
        self.series[curve] = ([float(x) for x in xs], [float(y) for y in ys], header)

    def check(self, name: str, passed: bool, detail: str) -> None:
        self.checks.append(Check(name, bool(passed), detail))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


class Runner:
    """Runs (and memoizes) simulations for one experiment config."""

    def __init__(self, cfg: ExperimentConfig):
        self.cfg = cfg
        self.seed = cfg.run["seed"]
        self.slots = cfg.run["slots"]
        self.threads = cfg.run["threads"]
        self._cache: dict = {}

    def sim_config(self, scheduler, scenario, n_ues, p_dbm, n_slots=None, collect=False) -> SimConfig:
        return SimConfig(self.cfg.system_params(p_dbm), scenario, scheduler, n_ues,
                         n_slots or self.slots, self.seed, collect_samples=collect)

    def run(self, sc: SimConfig) -> SimStats:
        if sc not in self._cache:
            self._cache[sc] = run_simulation(sc, threads=self.threads)
        return self._cache[sc]


def _record(exp, sc: SimConfig, sim_value, analytic_value, seed) -> ExperimentRecord:
    scen = sc.scenario
    return ExperimentRecord(
        experiment=exp,
        scheduler=SHORT[sc.scheduler],
        scenario=scen.short,
        n_ues=sc.n_ues,
        p_dbm=round(watts_to_dbm(sc.params.p_erp), 9),
        d_m=scen.d_fixed,
        sim_value_w=float(sim_value),
        analytic_value_w=None if analytic_value is None else float(analytic_value),
        seed=seed,
    )


def _within(stats: SimStats, analytic: float, rel_tol: float, n_se: float = 4.0) -> bool:
    """Pass when within ``rel_tol`` or within ``n_se`` Monte Carlo standard errors."""
    err = abs(stats.avg_delivered_power - analytic)
    return err <= max(rel_tol * abs(analytic), n_se * stats.std_error)


def _common_manifest(cfg: ExperimentConfig) -> dict:
    p = cfg.system_params(cfg.grid["ref_p_dbm"])
    return {"equivalent_distance_m": an.equivalent_distance(p)}


# -- figure 5: round robin, output power versus transmit power ------------------------

def _fig5_configs(r: Runner):
    g = r.cfg.grid
    p_ref = r.cfg.system_params(g["ref_p_dbm"])
    d_bar = an.equivalent_distance(p_ref)
    out = []
    for p_dbm in g["p_dbm"]:
        for d in g["d_m"]:
            out.append(("fig5", r.sim_config(ROUND_ROBIN, Scenario.homogeneous(d), g["rr_n_ues"], p_dbm)))
        out.append(("fig5", r.sim_config(ROUND_ROBIN, Scenario.heterogeneous(), g["rr_n_ues"], p_dbm)))
        out.append(("fig5/dbar", r.sim_config(ROUND_ROBIN, Scenario.homogeneous(d_bar), g["rr_n_ues"], p_dbm)))
    return out


def fig5(r: Runner) -> ExperimentResult:
    res = ExperimentResult("fig5")
    curves: dict = {}
    for label, sc in _fig5_configs(r):
        stats = r.run(sc)
        p = sc.params
        if sc.scenario.kind == "heterogeneous":
            analytic, tol, key = an.avg_rr_het(p), 0.03, "het"
        elif label == "fig5/dbar":
            analytic, tol, key = an.avg_rr_het_approx(p), 0.01, "hom_dbar"
        else:
            analytic, tol, key = an.avg_rr_hom(p, sc.scenario.d_fixed), 0.01, f"hom_d{sc.scenario.d_fixed:g}"
        rec = _record(label, sc, stats.avg_delivered_power, analytic, r.seed)
        res.records.append(rec)
        res.check(f"{label} {key} P={rec.p_dbm:g}dBm", _within(stats, analytic, tol),
                  f"rel_err={rec.rel_err:.3g} (tol {tol:g}, se={stats.std_error:.3g} W)")
        xs, sim, ana = curves.setdefault(key, ([], [], []))
        xs.append(rec.p_dbm)
        sim.append(watts_to_dbm(stats.avg_delivered_power))
        ana.append(watts_to_dbm(analytic))
        res.slot_counts[f"{label}:{key}"] = sc.n_slots
    for key, (xs, sim, ana) in curves.items():
        res.add_series(f"{key}_sim", xs, sim, "transmit power [dBm]  average output DC power [dBm]")
        res.add_series(f"{key}_analytic", xs, ana, "transmit power [dBm]  average output DC power [dBm]")
    return res


# -- figure 6: opportunistic, homogeneous ---------------------------------------------

def _fig6_configs(r: Runner):
    g = r.cfg.grid
    scen = Scenario.homogeneous(g["typical_d_m"])
    return [("fig6", r.sim_config(OPPORTUNISTIC, scen, n, g["ref_p_dbm"])) for n in g["n_ues"]]


def fig6(r: Runner) -> ExperimentResult:
    res = ExperimentResult("fig6")
    ns, sims, asym, exact, law = [], [], [], [], []
    for _, sc in _fig6_configs(r):
        stats = r.run(sc)
        n, d, p = sc.n_ues, sc.scenario.d_fixed, sc.params
        a28 = an.avg_os_hom_asymptotic(p, d, n)
        ahn = an.avg_os_hom_exact(p, d, n)
        # the ln N law vanishes at N = 1, where the curve falls back to the Euler-corrected form
        alaw = an.scaling_law_hom(p, d, n) if n > 1 else a28
        res.records.append(_record("fig6/asymptotic", sc, stats.avg_delivered_power, a28, r.seed))
        rec = _record("fig6/harmonic", sc, stats.avg_delivered_power, ahn, r.seed)
        res.records.append(rec)
        res.check(f"fig6 harmonic N={n}", _within(stats, ahn, 0.01),
                  f"rel_err={rec.rel_err:.3g} (tol 0.01)")
        ns.append(n)
        sims.append(stats.avg_delivered_power * 1e3)
        asym.append(a28 * 1e3)
        exact.append(ahn * 1e3)
        law.append(alaw * 1e3)
        res.slot_counts[f"fig6:N{n}"] = sc.n_slots
    hdr = "number of UEs  average output DC power [mW]"
    res.add_series("sim", ns, sims, hdr)
    res.add_series("asymptotic", ns, asym, hdr)
    res.add_series("harmonic", ns, exact, hdr)
    res.add_series("scaling_law", ns, law, hdr)
    if 50 in ns:
        i = ns.index(50)
        gap = abs(asym[i] - exact[i]) / exact[i]
        res.check("fig6 asymptote at N=50", gap < 0.003, f"|asymptotic - H_N|/H_N = {gap:.3g}")
    return res


# -- figure 7: opportunistic, heterogeneous --------------------------------------------

def _fig7_configs(r: Runner):
    g = r.cfg.grid
    return [("fig7", r.sim_config(OPPORTUNISTIC, Scenario.heterogeneous(), n, p_dbm))
            for p_dbm in g["compare_p_dbm"] for n in g["n_ues"]]


def fig7(r: Runner) -> ExperimentResult:
    res = ExperimentResult("fig7")
    tol = r.cfg.run["quad_tol"]
    ns = r.cfg.grid["n_ues"]
    quad = {}
    for p_dbm in r.cfg.grid["compare_p_dbm"]:
        quad[p_dbm] = dict(zip(ns, an.mean_os_het_numeric_many(r.cfg.system_params(p_dbm), ns, tol)))
    by_power: dict = {}
    for _, sc in _fig7_configs(r):
        stats = r.run(sc)
        p_dbm = round(watts_to_dbm(sc.params.p_erp), 9)
        n = sc.n_ues
        law = an.scaling_law_het(sc.params, n)
        q = quad[_match(p_dbm, quad)][n]
        res.records.append(_record("fig7/law", sc, stats.avg_delivered_power, law, r.seed))
        rec = _record("fig7/quadrature", sc, stats.avg_delivered_power, q, r.seed)
        res.records.append(rec)
        res.check(f"fig7 quadrature P={p_dbm:g} N={n}", _within(stats, q, 0.03),
                  f"rel_err={rec.rel_err:.3g} (tol 0.03, se={stats.std_error:.3g} W)")
        by_power.setdefault(p_dbm, []).append((n, stats.avg_delivered_power, law, q))
        res.slot_counts[f"fig7:P{p_dbm:g}:N{n}"] = sc.n_slots
    hdr = "number of UEs  average output DC power [mW]"
    for p_dbm, rows in by_power.items():
        xs = [row[0] for row in rows]
        res.add_series(f"P{p_dbm:g}_sim", xs, [row[1] * 1e3 for row in rows], hdr)
        res.add_series(f"P{p_dbm:g}_law", xs, [row[2] * 1e3 for row in rows], hdr)
        res.add_series(f"P{p_dbm:g}_quadrature", xs, [row[3] * 1e3 for row in rows], hdr)
    powers = sorted(by_power)
    if len(powers) >= 2:
        lo, hi = powers[0], powers[-1]
        expected = 10 ** ((hi - lo) / 10)
        ratios = [h[1] / l[1] for l, h in zip(by_power[lo], by_power[hi])]
        worst = max(abs(x / expected - 1) for x in ratios)
        offsets_db = [10 * math.log10(x) for x in ratios]
        res.manifest["power_offset_db"] = {"expected": hi - lo, "min": min(offsets_db), "max": max(offsets_db)}
        res.check(f"fig7 {hi:g} vs {lo:g} dBm offset", worst < 0.02,
                  f"max |ratio/10^{(hi - lo) / 10:g} - 1| = {worst:.3g}")
    return res


def _match(p_dbm: float, table: dict) -> float:
    return min(table, key=lambda k: abs(k - p_dbm))


# -- figure 8: efficiency ---------------------------------------------------------------

def _fig8_configs(r: Runner):
    g = r.cfg.grid
    hom = Scenario.homogeneous(g["typical_d_m"])
    het = Scenario.heterogeneous()
    p = g["ref_p_dbm"]
    out = [("fig8/rr", r.sim_config(ROUND_ROBIN, hom, g["rr_n_ues"], p)),
           ("fig8/rr", r.sim_config(ROUND_ROBIN, het, g["rr_n_ues"], p))]
    for scen in (hom, het):
        out += [("fig8/os", r.sim_config(OPPORTUNISTIC, scen, n, p)) for n in g["n_ues"]]
    return out


def fig8(r: Runner) -> ExperimentResult:
    res = ExperimentResult("fig8")
    effs: dict = {}
    for label, sc in _fig8_configs(r):
        stats = r.run(sc)
        p = sc.params
        hom = sc.scenario.kind == "homogeneous"
        if label == "fig8/rr":
            analytic = an.avg_rr_hom(p, sc.scenario.d_fixed) if hom else an.avg_rr_het(p)
            tol = 0.01 if hom else 0.03
            rec = _record(label, sc, stats.avg_delivered_power, analytic, r.seed)
            res.check(f"{label} {sc.scenario.short}", _within(stats, analytic, tol),
                      f"rel_err={rec.rel_err:.3g} (tol {tol:g})")
        else:
            if hom:
                analytic = an.avg_os_hom_asymptotic(p, sc.scenario.d_fixed, sc.n_ues)
            else:
                analytic = an.scaling_law_het(p, sc.n_ues)
            rec = _record(label, sc, stats.avg_delivered_power, analytic, r.seed)
        res.records.append(rec)
        key = f"{SHORT[sc.scheduler]}_{sc.scenario.short}"
        effs.setdefault(key, []).append((sc.n_ues, transfer_efficiency(stats.avg_delivered_power, p.p_erp),
                                         transfer_efficiency(analytic, p.p_erp)))
        res.slot_counts[f"{label}:{sc.scenario.short}:N{sc.n_ues}"] = sc.n_slots

    ns = r.cfg.grid["n_ues"]
    hdr = "number of UEs  power transfer efficiency [%]"
    for key, rows in effs.items():
        if key.startswith("rr"):
            # round robin does not depend on N; drawn flat across the N axis
            _, e_sim, e_ana = rows[0]
            res.add_series(f"{key}_sim", ns, [100 * e_sim] * len(ns), hdr)
            res.add_series(f"{key}_analytic", ns, [100 * e_ana] * len(ns), hdr)
            res.manifest[f"{key}_efficiency_percent"] = {"sim": 100 * e_sim, "analytic": 100 * e_ana}
        else:
            res.add_series(f"{key}_sim", [x[0] for x in rows], [100 * x[1] for x in rows], hdr)
            res.add_series(f"{key}_analytic", [x[0] for x in rows], [100 * x[2] for x in rows], hdr)

    het_os = effs.get("os_het", [])
    res.manifest["os_het_first_n_above_1pct"] = {
        "sim": next((n for n, e, _ in het_os if e > 0.01), None),
        "scaling_law": next((n for n, _, e in het_os if e > 0.01), None),
    }
    res.manifest["reference_efficiency_note"] = (
        "Reference round-robin efficiencies (about 0.013% homogeneous at 10 m and 0.18% heterogeneous) "
        "do not follow from the default constants with efficiency = average power / P_erp; "
        "the values above are reported, not asserted.")
    res.manifest["reference_efficiency_values"] = REFERENCE_EFFICIENCY
    return res


# -- extreme value goodness of fit ---------------------------------------------------------

def _gof_configs(r: Runner, scen: Scenario):
    g = r.cfg.grid
    return [("gof", r.sim_config(OPPORTUNISTIC, scen, n, g["ref_p_dbm"], n_slots=g["gof_samples"], collect=True))
            for n in g["gof_n_ues"]]


def _exact_max_cdf(sf: Callable[[float], float], n: int):
    def cdf(x):
        return np.array([(1.0 - sf(v)) ** n if v > 0 else 0.0 for v in np.atleast_1d(x)])
    return cdf


def _gof(r: Runner, name: str, scen: Scenario) -> ExperimentResult:
    res = ExperimentResult(name)
    ks_limit, ks_exact, ns = [], [], []
    for _, sc in _gof_configs(r, scen):
        stats = r.run(sc)
        p, n = sc.params, sc.n_ues
        samples = np.sort(stats.scheduled_samples)
        m = samples.size
        if scen.kind == "homogeneous":
            evt = an.gumbel_constants(p, scen.d_fixed, n)
            analytic = an.limiting_mean(evt)
            b = an.hom_scale(p, scen.d_fixed)
            exact_cdf = lambda x, b=b, n=n: (-np.expm1(-np.maximum(x, 0) / b)) ** n
        else:
            evt = an.frechet_scale(p, n)
            analytic = an.mean_os_het_numeric(p, n, r.cfg.run["quad_tol"])
            exact_cdf = _exact_max_cdf(lambda v, p=p: an.sf_pout_het(v, p), n)
        z = np.sort(evt.normalize(samples))
        if evt.kind == "gumbel":
            d_limit = ks_statistic(z, an.standard_gumbel_cdf)
        else:
            d_limit = ks_statistic(z, lambda v, s=evt.shape: an.standard_frechet_cdf(v, s))
        d_exact = ks_statistic(samples, exact_cdf)
        if evt.kind == "frechet" and n > 1:
            # same limit law, scale chosen so a single UE exceeds it with probability 1/N
            bq = an.frechet_scale_quantile(p, n)
            res.manifest.setdefault("ks_limit_quantile_scale", {})[str(n)] = ks_statistic(
                samples / bq, lambda v, s=evt.shape: an.standard_frechet_cdf(v, s))
        crit = 1.63 / math.sqrt(m)
        res.records.append(_record(name, sc, float(np.mean(samples)), analytic, r.seed))
        res.check(f"{name} exact finite-N law N={n}", d_exact < crit,
                  f"KS to F^N = {d_exact:.4f} (1% critical {crit:.4f})")
        if evt.kind == "gumbel" and n >= 100:
            res.check(f"{name} Gumbel limit N={n}", d_limit < 0.03, f"KS = {d_limit:.4f} (tol 0.03)")
        ns.append(n)
        ks_limit.append(d_limit)
        ks_exact.append(d_exact)
        res.add_series(f"ecdf_N{n}", z, (np.arange(1, m + 1)) / m, "normalized maximum  empirical CDF")
        res.slot_counts[f"{name}:N{n}"] = sc.n_slots
    res.add_series("ks_limit", ns, ks_limit, "number of UEs  KS distance to the limiting law")
    res.add_series("ks_exact", ns, ks_exact, "number of UEs  KS distance to the exact F^N")
    res.manifest["ks"] = {str(n): {"limit": a, "exact": b} for n, a, b in zip(ns, ks_limit, ks_exact)}
    grid = np.linspace(-3, 8, 221) if scen.kind == "homogeneous" else np.logspace(-3, 3, 241)
    if scen.kind == "homogeneous":
        res.add_series("limit_cdf", grid, an.standard_gumbel_cdf(grid), "z  exp(-exp(-z))")
    else:
        shape = 2.0 / r.cfg.params["alpha"]
        res.add_series("limit_cdf", grid, an.standard_frechet_cdf(grid, shape), "z  exp(-z^(-2/alpha))")
    return res


def gof_gumbel(r: Runner) -> ExperimentResult:
    return _gof(r, "gof_gumbel", Scenario.homogeneous(r.cfg.grid["typical_d_m"]))


def gof_frechet(r: Runner) -> ExperimentResult:
    return _gof(r, "gof_frechet", Scenario.heterogeneous())


# -- von Mises sweeps ------------------------------------------------------------------------

def vonmises(r: Runner) -> ExperimentResult:
    res = ExperimentResult("vonmises")
    g = r.cfg.grid
    p = r.cfg.system_params(g["ref_p_dbm"])
    k = g["vonmises_points"]
    hom = Scenario.homogeneous(g["typical_d_m"])
    het = Scenario.heterogeneous()

    b = an.hom_scale(p, hom.d_fixed)
    xs = np.geomspace(0.1 * b, 20 * b, k)
    hom_vals = [an.von_mises_diagnostic(p, hom, x) for x in xs]
    target = 1.0 / b
    worst = max(abs(v / target - 1) for v in hom_vals)
    res.check("vonmises homogeneous hazard constant", worst < 1e-9, f"max rel dev {worst:.3g}")
    res.add_series("hom_hazard", xs, hom_vals, "x [W]  f/(1-F) [1/W]")

    t = an.HetTailConstants.from_params(p)
    xs_het = np.geomspace(0.1 / t.r2, 50.0 / t.r1, k)
    fd = [an.von_mises_diagnostic(p, het, x) for x in xs_het]
    exact = [an.von_mises_analytic(p, het, x) for x in xs_het]
    worst_fd = max(abs(a / e - 1) for a, e in zip(fd, exact))
    res.check("vonmises heterogeneous finite difference vs closed-form density", worst_fd < 1e-5,
              f"max rel dev {worst_fd:.3g}")
    res.add_series("het_xf_over_sf", xs_het, fd, "x [W]  x f/(1-F)")
    res.add_series("het_xf_over_sf_closed_form", xs_het, exact, "x [W]  x f/(1-F)")
    res.add_series("het_r1x_reference", xs_het, t.r1 * xs_het, "x [W]  r1 x")

    zeta = 2.0 / p.alpha
    closest = int(np.argmin([abs(v - zeta) for v in fd]))
    res.manifest["vonmises"] = {
        "homogeneous_hazard_per_w": target,
        "heterogeneous_claimed_limit": zeta,
        "heterogeneous_closest_x_w": float(xs_het[closest]),
        "heterogeneous_closest_value": float(fd[closest]),
        "heterogeneous_value_at_largest_x": float(fd[-1]),
        "heterogeneous_r1x_at_largest_x": float(t.r1 * xs_het[-1]),
        "finding": ("x f/(1-F) stays near 2/alpha only on an intermediate range and grows like r1 x "
                    "for large x, since the single-UE tail is exponential times 1/x."),
    }
    n1 = r.sim_config(ROUND_ROBIN, hom, 1, g["ref_p_dbm"])
    res.records.append(_record("vonmises", n1, hom_vals[-1], target, r.seed))
    het_sc = r.sim_config(ROUND_ROBIN, het, 1, g["ref_p_dbm"])
    res.records.append(_record("vonmises", het_sc, fd[-1], zeta, r.seed))
    return res


EXPERIMENTS: dict[str, Callable[[Runner], ExperimentResult]] = {
    "fig5": fig5,
    "fig6": fig6,
    "fig7": fig7,
    "fig8": fig8,
    "gof_gumbel": gof_gumbel,
    "gof_frechet": gof_frechet,
    "vonmises": vonmises,
}


def plan(name: str, cfg: ExperimentConfig) -> list[SimConfig]:
    """Simulation grid an experiment will run, with every default filled in."""
    r = Runner(cfg)
    g = cfg.grid
    configs = {
        "fig5": lambda: _fig5_configs(r),
        "fig6": lambda: _fig6_configs(r),
        "fig7": lambda: _fig7_configs(r),
        "fig8": lambda: _fig8_configs(r),
        "gof_gumbel": lambda: _gof_configs(r, Scenario.homogeneous(g["typical_d_m"])),
        "gof_frechet": lambda: _gof_configs(r, Scenario.heterogeneous()),
        "vonmises": lambda: [],
    }
    if name not in configs:
        raise KeyError(name)
    return [sc for _, sc in configs[name]()]


def run_experiment(name: str, cfg: ExperimentConfig) -> ExperimentResult:
    if name not in EXPERIMENTS:
        raise KeyError(name)
    res = EXPERIMENTS[name](Runner(cfg))
    res.manifest.update(_common_manifest(cfg))
    return res
