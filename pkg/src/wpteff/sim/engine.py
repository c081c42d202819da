"""Slotted Monte Carlo engine.

Every slot each UE gets a fresh fading draw (and, for heterogeneous users,
a fresh distance); the scheduler picks one UE and only that UE collects
energy. Slots are processed in fixed-size blocks that can run on a thread
pool; block partials are reduced in block order, so results are bit-exact
for any thread count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Literal, Optional

import numpy as np

from ..channel import HETEROGENEOUS, Scenario, channel_gain, sample_distance_annulus, sample_fading_gain
from ..core import ConfigError, SystemParams
from . import rng

ROUND_ROBIN = "round_robin"
OPPORTUNISTIC = "opportunistic"
SCHEDULERS = (ROUND_ROBIN, OPPORTUNISTIC)

BLOCK_SLOTS = 16384
THREADS_ENV = "WPTEFF_THREADS"


@dataclass(frozen=True)
class SimConfig:
    params: SystemParams
    scenario: Scenario
    scheduler: Literal["round_robin", "opportunistic"]
    n_ues: int
    n_slots: int
    seed: int
    collect_samples: bool = False
    replication: int = 0

    def __post_init__(self):
        problems = self.problems()
        if problems:
            raise ConfigError(problems)

    def problems(self) -> list[str]:
        out = []
        if self.scheduler not in SCHEDULERS:
            out.append(f"scheduler: must be one of {SCHEDULERS} (got {self.scheduler!r})")
        if not (isinstance(self.n_ues, (int, np.integer)) and self.n_ues >= 1):
            out.append(f"n_ues: require an integer >= 1 (got {self.n_ues!r})")
        if not (isinstance(self.n_slots, (int, np.integer)) and self.n_slots >= 1):
            out.append(f"n_slots: require an integer >= 1 (got {self.n_slots!r})")
        if not (isinstance(self.seed, (int, np.integer)) and 0 <= self.seed < 2 ** 64):
            out.append(f"seed: require an unsigned 64-bit integer (got {self.seed!r})")
        if not (isinstance(self.replication, (int, np.integer)) and self.replication >= 0):
            out.append(f"replication: require an integer >= 0 (got {self.replication!r})")
        out.extend(self.scenario.check_geometry(self.params.r_ex, self.params.r_net))
        return out


@dataclass
class SimStats:
    avg_delivered_power: float
    per_ue_slot_counts: np.ndarray
    per_ue_avg_power: np.ndarray
    n_slots_run: int
    total_delivered: float
    sum_sq_delivered: float
    scheduled_samples: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def std_error(self) -> float:
        """Standard error of ``avg_delivered_power`` treating slots as independent."""
        n = self.n_slots_run
        if n < 2:
            return float("nan")
        var = (self.sum_sq_delivered - self.total_delivered ** 2 / n) / (n - 1)
        return float(np.sqrt(max(var, 0.0) / n))


def select_round_robin(slot_index: int, n_ues: int) -> int:
    if n_ues < 1:
        raise ValueError("need at least one UE")
    return slot_index % n_ues


def select_opportunistic(powers) -> int:
    """Index of the largest power; ties go to the lowest index."""
    powers = np.asarray(powers, dtype=float)
    if powers.size == 0:
        raise ValueError("cannot schedule among zero UEs")
    return int(np.argmax(powers))


def resolve_threads(threads: Optional[int] = None) -> int:
    if threads is None:
        env = os.environ.get(THREADS_ENV)
        threads = int(env) if env else min(os.cpu_count() or 1, 8)
    return max(1, int(threads))


def slot_powers(cfg: SimConfig, start: int, count: int) -> np.ndarray:
    """Per-UE output power for a slot range, shape ``(n_ues, count)``."""
    p = cfg.params
    h2 = np.empty((cfg.n_ues, count))
    for ue in range(cfg.n_ues):
        u = rng.open_uniforms(cfg.seed, cfg.replication, rng.FADING, ue, start, count)
        h2[ue] = sample_fading_gain(u, p.sigma_h2)
    if cfg.scenario.kind == HETEROGENEOUS:
        d = np.empty_like(h2)
        for ue in range(cfg.n_ues):
            u = rng.open_uniforms(cfg.seed, cfg.replication, rng.DISTANCE, ue, start, count)
            d[ue] = sample_distance_annulus(u, p.r_ex, p.r_net)
    else:
        d = cfg.scenario.d_fixed
    return p.c * channel_gain(p.beta, d, p.alpha, h2)


def _run_block(cfg: SimConfig, block: int):
    start = block * BLOCK_SLOTS
    count = min(BLOCK_SLOTS, cfg.n_slots - start)
    powers = slot_powers(cfg, start, count)
    if cfg.scheduler == ROUND_ROBIN:
        chosen = (start + np.arange(count)) % cfg.n_ues
    else:
        chosen = np.argmax(powers, axis=0)
    delivered = powers[chosen, np.arange(count)]
    return (
        float(np.sum(delivered)),
        float(np.dot(delivered, delivered)),
        np.bincount(chosen, minlength=cfg.n_ues),
        np.bincount(chosen, weights=delivered, minlength=cfg.n_ues),
        delivered if cfg.collect_samples else None,
    )


def run_simulation(cfg: SimConfig, threads: Optional[int] = None) -> SimStats:
    n_blocks = -(-cfg.n_slots // BLOCK_SLOTS)
    workers = min(resolve_threads(threads), n_blocks)
    if workers == 1:
        parts = [_run_block(cfg, b) for b in range(n_blocks)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda b: _run_block(cfg, b), range(n_blocks)))

    total = 0.0
    sum_sq = 0.0
    counts = np.zeros(cfg.n_ues, dtype=np.int64)
    per_ue = np.zeros(cfg.n_ues)
    for s, sq, cnt, ue_sum, _ in parts:
        total += s
        sum_sq += sq
        counts += cnt
        per_ue += ue_sum
    samples = np.concatenate([part[4] for part in parts]) if cfg.collect_samples else None
    return SimStats(
        avg_delivered_power=total / cfg.n_slots,
        per_ue_slot_counts=counts,
        per_ue_avg_power=per_ue / cfg.n_slots,
        n_slots_run=cfg.n_slots,
        total_delivered=total,
        sum_sq_delivered=sum_sq,
        scheduled_samples=samples,
    )
