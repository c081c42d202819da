"""Experiment runner and its file formats."""

from .config import ExperimentConfig, normalize_config, validate_config
from .experiments import EXPERIMENTS, ExperimentResult, plan, run_experiment
from .records import CSV_FIELDS, ExperimentRecord, read_csv, read_series, render_csv, write_csv
