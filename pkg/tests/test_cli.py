import json

import numpy as np
import pytest

from tscausal import pipeline
from tscausal.cli import build_parser, main

TINY = {
    "master_seed": 7,
    "model": "fft",
    "test_recipes": ["shift-I"],
    "n_train_per_class": 12,
    "n_test_per_class": 6,
    "length": 128,
}


@pytest.fixture
def tiny_config_path(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps(TINY))
    return path


def run_chain(tmp_path, config_path, capsys):
    run = tmp_path / "run"
    for argv in (
        ["generate", "--config", str(config_path), "--out", str(run)],
        ["featurize", str(run)],
        ["train", str(run)],
        ["evaluate", str(run)],
    ):
        assert main(argv) == 0, capsys.readouterr().err
    return run


# ---------------------------------------------------------------------------
# help and usage


def test_top_level_help_lists_subcommands(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--help"])
    assert exc.value.code == 0
    out = capsys.readouterr().out
    for cmd in ("generate", "featurize", "train", "evaluate", "reproduce", "plot"):
        assert cmd in out


@pytest.mark.parametrize("cmd", ["generate", "featurize", "train", "evaluate",
                                 "reproduce", "plot"])
def test_subcommand_help_exits_zero(cmd, capsys):
    with pytest.raises(SystemExit) as exc:
        main([cmd, "--help"])
    assert exc.value.code == 0
    assert f"usage: tscausal {cmd}" in capsys.readouterr().out


def test_missing_subcommand_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2


def test_unknown_table_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["reproduce", "table9"])
    assert exc.value.code == 2


# ---------------------------------------------------------------------------
# config errors


def test_missing_config_file(tmp_path, capsys):
    assert main(["generate", "--config", str(tmp_path / "nope.json"),
                 "--out", str(tmp_path / "run")]) == 2
    assert "config file not found" in capsys.readouterr().err


def test_invalid_json_reports_position(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"model": "fft",\n  "length": }\n')
    assert main(["generate", "--config", str(bad),
                 "--out", str(tmp_path / "run")]) == 2
    err = capsys.readouterr().err
    assert "line 2" in err and "column" in err


def test_unknown_config_key_is_config_error(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"modle": "fft"}))
    assert main(["generate", "--config", str(bad),
                 "--out", str(tmp_path / "run")]) == 2
    assert "unknown config key" in capsys.readouterr().err


def test_featurize_before_generate_fails_cleanly(tmp_path, tiny_config_path, capsys):
    run = tmp_path / "run"
    run.mkdir()
    (run / "config.json").write_text(tiny_config_path.read_text())
    assert main(["featurize", str(run)]) == 1
    assert "run `generate` first" in capsys.readouterr().err


def test_evaluate_before_train_fails_cleanly(tmp_path, tiny_config_path, capsys):
    run = tmp_path / "run"
    assert main(["generate", "--config", str(tiny_config_path), "--out", str(run)]) == 0
    assert main(["featurize", str(run)]) == 0
    capsys.readouterr()
    assert main(["evaluate", str(run)]) == 1
    assert "run `train` first" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# chained workflow


def test_chain_produces_expected_layout(tmp_path, tiny_config_path, capsys):
    run = run_chain(tmp_path, tiny_config_path, capsys)
    assert (run / "config.json").is_file()
    assert (run / "datasets" / "AR-train" / "values.csv").is_file()
    assert (run / "datasets" / "shift-I" / "manifest.json").is_file()
    manifest = json.loads((run / "features" / "manifest.json").read_text())
    assert [s["dir"] for s in manifest["sets"]] == ["train-split", "held-out", "shift-I"]
    assert (run / "model.json").is_file()
    assert (run / "report.json").is_file()
    assert (run / "report.txt").is_file()


def test_chain_matches_in_process_run(tmp_path, tiny_config_path, capsys):
    run = run_chain(tmp_path, tiny_config_path, capsys)
    chained = json.loads((run / "report.json").read_text())
    config = pipeline.config_from_dict(json.loads(tiny_config_path.read_text()))
    direct = pipeline.report_to_dict(pipeline.run_experiment(config))
    assert chained == direct


def test_seed_override_changes_generated_data(tmp_path, tiny_config_path, capsys):
    run_a = tmp_path / "a"
    run_b = tmp_path / "b"
    assert main(["generate", "--config", str(tiny_config_path), "--out", str(run_a)]) == 0
    assert main(["generate", "--config", str(tiny_config_path), "--seed", "99",
                 "--out", str(run_b)]) == 0
    echo = json.loads((run_b / "config.json").read_text())
    assert echo["master_seed"] == 99
    a = (run_a / "datasets" / "AR-train" / "values.csv").read_text()
    b = (run_b / "datasets" / "AR-train" / "values.csv").read_text()
    assert a != b


def test_model_override_at_featurize(tmp_path, tiny_config_path, capsys):
    run = tmp_path / "run"
    assert main(["generate", "--config", str(tiny_config_path), "--out", str(run)]) == 0
    assert main(["featurize", str(run), "--model", "raw"]) == 0
    manifest = json.loads((run / "features" / "manifest.json").read_text())
    assert manifest["model"] == "raw"
    features = np.loadtxt(run / "features" / "train-split" / "features.csv",
                          delimiter=",", ndmin=2)
    assert features.shape[1] == TINY["length"]


def test_evaluate_is_byte_identical_across_runs(tmp_path, tiny_config_path, capsys):
    run = run_chain(tmp_path, tiny_config_path, capsys)
    first = (run / "report.json").read_bytes()
    out2 = tmp_path / "second"
    assert main(["evaluate", str(run), "--out", str(out2)]) == 0
    assert (out2 / "report.json").read_bytes() == first


# ---------------------------------------------------------------------------
# reproduce and plot


def test_reproduce_writes_report_and_echo(tmp_path, capsys, monkeypatch):
    out = tmp_path / "rep"
    monkeypatch.setattr(pipeline, "DESK_TRAIN_PER_CLASS", 10)
    monkeypatch.setattr(pipeline, "DESK_TEST_PER_CLASS", 5)
    assert main(["reproduce", "table1-lr", "--out", str(out)]) == 0
    stdout = capsys.readouterr().out
    assert "AR-train (train split)" in stdout
    echo = json.loads((out / "config.json").read_text())
    assert echo["model"] == "raw"
    assert echo["n_train_per_class"] == 10
    report = json.loads((out / "report.json").read_text())
    assert {r["dataset"] for r in report["rows"]} == {
        "AR-train (train split)", "AR-train (held-out)", "shift-I", "shift-II",
    }


def test_plot_emits_expected_panels(tmp_path, capsys):
    out = tmp_path / "plots"
    assert main(["plot", "--out", str(out)]) == 0
    spectra = {p.name for p in out.glob("spectrum-*.dat")}
    curves = {p.name for p in out.glob("ttss-*.dat")}
    assert spectra == {"spectrum-ar15.dat", "spectrum-noise-normal.dat",
                       "spectrum-noise-uniform.dat"}
    assert curves == {"ttss-ar15.dat", "ttss-ar100.dat", "ttss-arma.dat",
                      "ttss-arfima.dat", "ttss-noise-normal.dat",
                      "ttss-noise-uniform.dat"}
    sample = (out / "ttss-ar15.dat").read_text().splitlines()
    assert len(sample) == 1001
    idx, val = sample[500].split()
    assert idx == "500"
    assert 0.0 <= float(val) <= 1.0


def test_parser_prog_name():
    assert build_parser().prog == "tscausal"
