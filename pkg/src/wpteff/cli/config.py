"""JSON experiment configuration: ``{"params": ..., "grid": ..., "run": ...}``.

Missing keys fall back to the reference deployment; unknown keys are errors.
Validation collects every violation before failing.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional

from ..core import REFERENCE_PARAMS, ConfigError, SystemParams, check_params, dbm_to_watts

PARAM_DEFAULTS = dict(REFERENCE_PARAMS)

GRID_DEFAULTS = {
    "n_ues": list(range(1, 51)),
    "p_dbm": [float(p) for p in range(43, 54)],
    "d_m": [2.0, 10.0, 30.0],
    "typical_d_m": 10.0,
    "ref_p_dbm": 50.0,
    "compare_p_dbm": [43.0, 50.0],
    "rr_n_ues": 10,
    "gof_n_ues": [10, 50, 100],
    "gof_samples": 5000,
    "vonmises_points": 25,
}

RUN_DEFAULTS = {
    "seed": 20150327,
    "slots": 1_000_000,
    "threads": None,
    "quad_tol": 1e-8,
}

SECTIONS = ("params", "grid", "run")


@dataclass(frozen=True)
class ExperimentConfig:
    params: dict
    grid: dict
    run: dict
    source: Optional[str] = field(default=None, compare=False)

    def system_params(self, p_dbm: float) -> SystemParams:
        return SystemParams(**self.params, p_erp=dbm_to_watts(p_dbm))

    def canonical_json(self) -> str:
        return json.dumps({"params": self.params, "grid": self.grid, "run": self.run},
                          sort_keys=True, separators=(",", ":"))

    def digest(self) -> str:
        return hashlib.sha256(self.canonical_json().encode()).hexdigest()

    def with_run(self, **overrides) -> "ExperimentConfig":
        run = dict(self.run)
        run.update({k: v for k, v in overrides.items() if v is not None})
        cfg = ExperimentConfig(self.params, self.grid, run, self.source)
        problems = _check_run(run)
        if problems:
            raise ConfigError(problems)
        return cfg

    def as_dict(self) -> dict:
        d = asdict(self)
        d.pop("source")
        return d


def _is_number(v) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool) and math.isfinite(v)


def _is_count(v, minimum=1) -> bool:
    return isinstance(v, int) and not isinstance(v, bool) and v >= minimum


def _check_grid(grid: dict, params: dict) -> list[str]:
    out = []
    r_ex, r_net = params.get("r_ex"), params.get("r_net")
    geometry_ok = _is_number(r_ex) and _is_number(r_net) and 0 < r_ex < r_net

    def count_list(name):
        v = grid[name]
        if not (isinstance(v, list) and v and all(_is_count(n) for n in v)):
            out.append(f"grid.{name}: require a non-empty list of integers >= 1 (got {v!r})")

    def number_list(name):
        v = grid[name]
        if not (isinstance(v, list) and v and all(_is_number(x) for x in v)):
            out.append(f"grid.{name}: require a non-empty list of finite numbers (got {v!r})")
            return False
        return True

    count_list("n_ues")
    count_list("gof_n_ues")
    number_list("p_dbm")
    number_list("compare_p_dbm")
    if number_list("d_m") and geometry_ok:
        for d in grid["d_m"]:
            if not r_ex <= d <= r_net:
                out.append(f"grid.d_m: distance {d} outside the annulus [{r_ex}, {r_net}]")
    d = grid["typical_d_m"]
    if not _is_number(d):
        out.append(f"grid.typical_d_m: require a finite number (got {d!r})")
    elif geometry_ok and not r_ex <= d <= r_net:
        out.append(f"grid.typical_d_m: distance {d} outside the annulus [{r_ex}, {r_net}]")
    if not _is_number(grid["ref_p_dbm"]):
        out.append(f"grid.ref_p_dbm: require a finite number (got {grid['ref_p_dbm']!r})")
    for name, minimum in (("rr_n_ues", 1), ("gof_samples", 10), ("vonmises_points", 2)):
        if not _is_count(grid[name], minimum):
            out.append(f"grid.{name}: require an integer >= {minimum} (got {grid[name]!r})")
    return out


def _check_run(run: dict) -> list[str]:
    out = []
    seed = run["seed"]
    if not (isinstance(seed, int) and not isinstance(seed, bool) and 0 <= seed < 2 ** 64):
        out.append(f"run.seed: require an unsigned 64-bit integer (got {seed!r})")
    if not _is_count(run["slots"]):
        out.append(f"run.slots: require an integer >= 1 (got {run['slots']!r})")
    threads = run["threads"]
    if threads is not None and not _is_count(threads):
        out.append(f"run.threads: require null or an integer >= 1 (got {threads!r})")
    tol = run["quad_tol"]
    if not (_is_number(tol) and 1e-10 <= tol < 1):
        out.append(f"run.quad_tol: require 1e-10 <= tol < 1 (got {tol!r})")
    return out


def normalize_config(doc: dict, source: Optional[str] = None) -> ExperimentConfig:
    if not isinstance(doc, dict):
        raise ConfigError([f"config root must be a JSON object (got {type(doc).__name__})"])
    problems = [f"unknown section {k!r}; expected one of {SECTIONS}" for k in doc if k not in SECTIONS]
    merged = {}
    for name, defaults in (("params", PARAM_DEFAULTS), ("grid", GRID_DEFAULTS), ("run", RUN_DEFAULTS)):
        section = doc.get(name, {})
        if not isinstance(section, dict):
            problems.append(f"{name}: must be a JSON object")
            section = {}
        problems += [f"{name}.{k}: unknown key" for k in section if k not in defaults]
        values = dict(defaults)
        values.update({k: v for k, v in section.items() if k in defaults})
        merged[name] = values

    # p_erp is swept through the grid, so check params at a placeholder power
    problems += [f"params.{msg}" for msg in check_params(**merged["params"], p_erp=1.0)]
    problems += _check_grid(merged["grid"], merged["params"])
    problems += _check_run(merged["run"])
    if problems:
        raise ConfigError(problems)
    grid = dict(merged["grid"])
    for key in ("p_dbm", "d_m", "compare_p_dbm"):
        grid[key] = [float(v) for v in grid[key]]
    for key in ("typical_d_m", "ref_p_dbm"):
        grid[key] = float(grid[key])
    params = {k: float(v) for k, v in merged["params"].items()}
    return ExperimentConfig(params, grid, merged["run"], source)


def validate_config(config_path) -> ExperimentConfig:
    """Load and normalize a config file. An empty file means all defaults.

    Raises ``ConfigError`` listing every rejected field, ``OSError`` when the
    file cannot be read.
    """
    path = Path(config_path)
    text = path.read_text()
    if not text.strip():
        doc = {}
    else:
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError([f"{path}: not valid JSON ({exc})"]) from exc
    return normalize_config(doc, str(path))
