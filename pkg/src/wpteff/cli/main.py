"""Command line: ``wpteff run <experiment> --config <path> --out <dir>``.

Exit codes: 0 success, 1 usage error or unknown experiment, 2 config error,
3 I/O error, 4 a threshold check failed (only with ``--check``).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .. import __version__
from ..core import ConfigError
from .config import validate_config
from .experiments import EXPERIMENTS, ExperimentResult, run_experiment
from .records import render_csv, write_series

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CONFIG = 2
EXIT_IO = 3
EXIT_CHECK = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _u64(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError(f"seed must fit in an unsigned 64-bit integer (got {text})")
    return value


def _positive(text: str) -> int:
    value = int(text, 0)
    if value < 1:
        raise argparse.ArgumentTypeError(f"slot count must be >= 1 (got {text})")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="wpteff", description="Wireless power transfer scheduling experiments.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    run = sub.add_parser("run", help="run one experiment and write CSV, plot data and a manifest")
    # validated by hand so an unknown name gets its own message rather than argparse's choices dump
    run.add_argument("experiment", help="one of: " + ", ".join(EXPERIMENTS))
    run.add_argument("--config", required=True, type=Path, help="JSON config; an empty file means defaults")
    run.add_argument("--out", required=True, type=Path, help="output directory (created if missing)")
    run.add_argument("--seed", type=_u64, help="override run.seed")
    run.add_argument("--slots", type=_positive, help="override run.slots")
    run.add_argument("--threads", type=_positive, help="worker threads (default: WPTEFF_THREADS or cpu count)")
    run.add_argument("--check", action="store_true", help="exit 4 if any threshold check fails")
    return parser


def manifest_for(name: str, cfg, result: ExperimentResult, files: list[str]) -> dict:
    return {
        "tool": "wpteff",
        "version": __version__,
        "experiment": name,
        "config_sha256": cfg.digest(),
        "config": cfg.as_dict(),
        "seed": cfg.run["seed"],
        "slots": cfg.run["slots"],
        "slot_counts": result.slot_counts,
        "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in result.checks],
        "all_checks_passed": result.passed,
        "files": files,
        **result.manifest,
    }


def write_outputs(out_dir: Path, name: str, cfg, result: ExperimentResult) -> list[str]:
    out_dir.mkdir(parents=True, exist_ok=True)
    plots = out_dir / "plots"
    plots.mkdir(exist_ok=True)
    csv_name = f"{name}.csv"
    (out_dir / csv_name).write_text(render_csv(result.records))
    files = [csv_name]
    for curve, (xs, ys, header) in result.series.items():
        rel = f"plots/{name}__{curve}.dat"
        write_series(out_dir / rel, xs, ys, header)
        files.append(rel)
    manifest_name = f"{name}_manifest.json"
    manifest = manifest_for(name, cfg, result, files)
    (out_dir / manifest_name).write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return files + [manifest_name]


def cmd_run(args) -> int:
    if args.experiment not in EXPERIMENTS:
        print(f"wpteff: unknown experiment {args.experiment!r}; choose from {', '.join(EXPERIMENTS)}",
              file=sys.stderr)
        return EXIT_USAGE
    try:
        cfg = validate_config(args.config).with_run(seed=args.seed, slots=args.slots, threads=args.threads)
    except ConfigError as exc:
        print("wpteff: invalid config:", file=sys.stderr)
        for problem in exc.violations:
            print(f"  - {problem}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"wpteff: cannot read config: {exc}", file=sys.stderr)
        return EXIT_IO

    result = run_experiment(args.experiment, cfg)
    try:
        write_outputs(args.out, args.experiment, cfg, result)
    except OSError as exc:
        print(f"wpteff: cannot write outputs: {exc}", file=sys.stderr)
        return EXIT_IO

    failed = [c for c in result.checks if not c.passed]
    print(f"{args.experiment}: {len(result.records)} rows, {len(result.checks) - len(failed)}/"
          f"{len(result.checks)} checks passed -> {args.out}")
    for c in failed:
        print(f"  FAIL {c.name}: {c.detail}")
    if args.check and failed:
        return EXIT_CHECK
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return cmd_run(args)


if __name__ == "__main__":
    sys.exit(main())
