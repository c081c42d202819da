"""CSV rows and plot-data files written by the experiment runner."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Sequence

CSV_FIELDS = ("experiment", "scheduler", "scenario", "n_ues", "p_dbm", "d_m",
              "sim_value_w", "analytic_value_w", "rel_err", "seed")
BLANKABLE = {"d_m", "analytic_value_w", "rel_err"}


def fmt(value: float) -> str:
    """Nine significant digits, plain decimal point, no grouping."""
    return format(float(value), ".9g")


@dataclass(frozen=True)
class ExperimentRecord:
    experiment: str
    scheduler: str
    scenario: str
    n_ues: int
    p_dbm: float
    d_m: Optional[float]
    sim_value_w: float
    analytic_value_w: Optional[float]
    seed: int

    @property
    def rel_err(self) -> Optional[float]:
        if self.analytic_value_w is None:
            return None
        return abs(self.sim_value_w - self.analytic_value_w) / abs(self.analytic_value_w)

    def row(self) -> dict:
        sim = fmt(self.sim_value_w)
        ana = "" if self.analytic_value_w is None else fmt(self.analytic_value_w)
        # rel_err from the rounded columns so every written row is self-consistent
        rel = "" if not ana else fmt(abs(float(sim) - float(ana)) / abs(float(ana)))
        return {
            "experiment": self.experiment,
            "scheduler": self.scheduler,
            "scenario": self.scenario,
            "n_ues": str(self.n_ues),
            "p_dbm": fmt(self.p_dbm),
            "d_m": "" if self.d_m is None else fmt(self.d_m),
            "sim_value_w": sim,
            "analytic_value_w": ana,
            "rel_err": rel,
            "seed": str(self.seed),
        }


def render_csv(records: Iterable[ExperimentRecord]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for rec in records:
        writer.writerow(rec.row())
    return buf.getvalue()


def write_csv(path: Path, records: Iterable[ExperimentRecord]) -> None:
    Path(path).write_text(render_csv(records))


def read_csv(path: Path) -> list[dict]:
    """Parse a results CSV back, checking the header and every row invariant."""
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != CSV_FIELDS:
            raise ValueError(f"unexpected header {reader.fieldnames}")
        rows = []
        for lineno, raw in enumerate(reader, start=2):
            for key, value in raw.items():
                if value == "" and key not in BLANKABLE:
                    raise ValueError(f"line {lineno}: empty {key}")
            row = {
                "experiment": raw["experiment"],
                "scheduler": raw["scheduler"],
                "scenario": raw["scenario"],
                "n_ues": int(raw["n_ues"]),
                "p_dbm": float(raw["p_dbm"]),
                "d_m": float(raw["d_m"]) if raw["d_m"] else None,
                "sim_value_w": float(raw["sim_value_w"]),
                "analytic_value_w": float(raw["analytic_value_w"]) if raw["analytic_value_w"] else None,
                "rel_err": float(raw["rel_err"]) if raw["rel_err"] else None,
                "seed": int(raw["seed"]),
            }
            if (row["analytic_value_w"] is None) != (row["rel_err"] is None):
                raise ValueError(f"line {lineno}: rel_err present iff analytic value present")
            if row["analytic_value_w"] is not None:
                expect = abs(row["sim_value_w"] - row["analytic_value_w"]) / abs(row["analytic_value_w"])
                if not math.isclose(expect, row["rel_err"], rel_tol=1e-8, abs_tol=1e-15):
                    raise ValueError(f"line {lineno}: rel_err {row['rel_err']} != {expect}")
            rows.append(row)
    return rows


def write_series(path: Path, xs: Sequence[float], ys: Sequence[float], header: str = "") -> None:
    """Two whitespace-separated columns, optional ``#`` comment line first."""
    lines = [f"# {header}"] if header else []
    lines += [f"{fmt(x)} {fmt(y)}" for x, y in zip(xs, ys)]
    Path(path).write_text("\n".join(lines) + "\n")


def read_series(path: Path) -> tuple[list[float], list[float]]:
    xs, ys = [], []
    for line in Path(path).read_text().splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        x, y = line.split()
        xs.append(float(x))
        ys.append(float(y))
    return xs, ys

