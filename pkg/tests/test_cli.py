import json
import subprocess
import sys

import pytest

from wpteff.cli import read_csv, read_series
from wpteff.cli.main import EXIT_CHECK, EXIT_CONFIG, EXIT_IO, EXIT_OK, EXIT_USAGE, main

SMALL = {"grid": {"n_ues": [1, 2, 3], "p_dbm": [43, 50], "gof_n_ues": [10], "gof_samples": 500,
                  "vonmises_points": 8},
         "run": {"slots": 20000}}


@pytest.fixture
def small_config(tmp_path):
    path = tmp_path / "small.json"
    path.write_text(json.dumps(SMALL))
    return path


@pytest.mark.parametrize("name", ["fig5", "fig6", "fig7", "fig8", "gof_gumbel", "gof_frechet", "vonmises"])
def test_every_experiment_runs_and_reparses(tmp_path, small_config, name):
    out = tmp_path / "out"
    assert main(["run", name, "--config", str(small_config), "--out", str(out), "--check"]) == EXIT_OK
    rows = read_csv(out / f"{name}.csv")
    assert rows and all(r["seed"] == 20150327 for r in rows)
    manifest = json.loads((out / f"{name}_manifest.json").read_text())
    assert manifest["experiment"] == name
    assert len(manifest["config_sha256"]) == 64
    assert manifest["seed"] == 20150327 and manifest["version"]
    assert round(manifest["equivalent_distance_m"], 5) == 7.74597
    for rel in manifest["files"][1:]:
        xs, ys = read_series(out / rel)
        assert len(xs) == len(ys) > 0


def test_same_seed_gives_identical_bytes(tmp_path, small_config):
    a, b = tmp_path / "a", tmp_path / "b"
    for out, threads in ((a, "1"), (b, "4")):
        assert main(["run", "fig7", "--config", str(small_config), "--out", str(out), "--threads", threads]) == 0
    assert (a / "fig7.csv").read_bytes() == (b / "fig7.csv").read_bytes()
    assert (a / "fig7_manifest.json").read_bytes() != b""
    for name in json.loads((a / "fig7_manifest.json").read_text())["files"]:
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_seed_and_slot_overrides(tmp_path, small_config):
    out = tmp_path / "o"
    assert main(["run", "fig6", "--config", str(small_config), "--out", str(out), "--seed", "7",
                 "--slots", "1000"]) == 0
    manifest = json.loads((out / "fig6_manifest.json").read_text())
    assert manifest["seed"] == 7 and manifest["slots"] == 1000
    assert {r["seed"] for r in read_csv(out / "fig6.csv")} == {7}


def test_fig5_reference_row(tmp_path, small_config):
    out = tmp_path / "o"
    main(["run", "fig5", "--config", str(small_config), "--out", str(out), "--slots", "200000"])
    row = next(r for r in read_csv(out / "fig5.csv")
               if r["experiment"] == "fig5" and r["scenario"] == "hom" and r["d_m"] == 10 and r["p_dbm"] == 50)
    assert row["scheduler"] == "rr" and row["rel_err"] < 0.01


def test_unknown_experiment(tmp_path, small_config, capsys):
    assert main(["run", "fig9", "--config", str(small_config), "--out", str(tmp_path)]) == EXIT_USAGE
    assert "unknown experiment" in capsys.readouterr().err


def test_usage_error_exit_code(tmp_path):
    with pytest.raises(SystemExit) as info:
        main(["run", "fig5"])
    assert info.value.code == EXIT_USAGE
    with pytest.raises(SystemExit) as info:
        main(["run", "fig5", "--config", "x", "--out", "y", "--seed", "-3"])
    assert info.value.code == EXIT_USAGE


def test_config_errors(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"params": {"r_ex": 40, "alpha": 2}}))
    assert main(["run", "fig5", "--config", str(bad), "--out", str(tmp_path / "o")]) == EXIT_CONFIG
    err = capsys.readouterr().err
    assert "0 < r_ex < r_net" in err and "(alpha - 2)" in err
    bad.write_text("{")
    assert main(["run", "fig5", "--config", str(bad), "--out", str(tmp_path / "o")]) == EXIT_CONFIG


def test_io_errors(tmp_path, small_config):
    assert main(["run", "fig5", "--config", str(tmp_path / "nope.json"), "--out", str(tmp_path)]) == EXIT_IO
    blocker = tmp_path / "file"
    blocker.write_text("")
    assert main(["run", "vonmises", "--config", str(small_config), "--out", str(blocker)]) == EXIT_IO


def test_check_failure_exit_code(tmp_path):
    # 20 maxima are far too few for the limiting-law KS threshold at N = 100
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"grid": {"gof_n_ues": [100], "gof_samples": 20}}))
    args = ["run", "gof_gumbel", "--config", str(path), "--out", str(tmp_path / "o")]
    assert main(args) == EXIT_OK
    assert main(args + ["--check"]) == EXIT_CHECK


def test_module_entry_point(tmp_path, small_config):
    proc = subprocess.run([sys.executable, "-m", "wpteff", "run", "vonmises", "--config", str(small_config),
                           "--out", str(tmp_path)], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert "vonmises" in proc.stdout
