import json
from dataclasses import replace

import pandas as pd
import pytest

from bergmanlab._core import (
    ConfigError,
    ExperimentConfig,
    OutputError,
    PipelineError,
)
from bergmanlab.runner import RunManifest, run_experiment, write_outputs

BASE = """
[experiment]
name = "{name}"
output_dir = "{output_dir}"
seed = 3
n_points = {n_points}

[model]
kind = "{kind}"

[hamiltonian]
label = "{label}"

[spectrum]
E = {E}
ks = {ks}
{extra}
"""


def _config(
    tmp_path,
    name,
    kind="BargmannFock",
    label="bf_radial",
    E="1.0",
    ks="[10, 20]",
    n_points=5,
    extra="",
    out="out",
):
    fp = tmp_path / "{0}.toml".format(out)
    fp.write_text(
        BASE.format(
            name=name,
            output_dir=tmp_path / out,
            n_points=n_points,
            kind=kind,
            label=label,
            E=E,
            ks=ks,
            extra=extra,
        )
    )
    return fp


def _oracle(tmp_path, out="out"):
    return _config(
        tmp_path,
        "oracle",
        E="[0.5, 1.0]",
        ks="[20, 40]",
        extra="truncation = 200",
        out=out,
    )


def test_oracle_experiment(tmp_path):
    manifest = run_experiment(_oracle(tmp_path))
    table = pd.read_csv(tmp_path / "out" / "oracle_vs_pipeline.csv")
    assert len(table) == 2 * 2 * 5
    assert table["abs_deviation"].max() <= 1e-8
    assert (tmp_path / "out" / "bergmanlab.log").exists()
    saved = json.loads((tmp_path / "out" / "manifest.json").read_text())
    assert saved["config"]["experiment"] == "oracle"
    assert {f["name"] for f in manifest.files} == {
        "oracle_vs_pipeline.csv",
        "manifest.json",
    }
    assert "quantize k=40" in saved["wall_times"]


def test_runs_are_deterministic(tmp_path):
    run_experiment(_oracle(tmp_path, out="first"))
    run_experiment(_oracle(tmp_path, out="second"))
    first = (tmp_path / "first" / "oracle_vs_pipeline.csv").read_bytes()
    second = (tmp_path / "second" / "oracle_vs_pipeline.csv").read_bytes()
    assert first == second


def test_oracle_needs_radial_bargmann_fock(tmp_path):
    fp = _config(tmp_path, "oracle", kind="FubiniStudyCP1", label="fs_height", E="0.5")
    with pytest.raises(ConfigError):
        run_experiment(fp)


def test_interface_experiment_warns_without_rate_fit(tmp_path):
    cfg = ExperimentConfig.from_file(_config(tmp_path, "interface"))
    manifest = run_experiment(cfg)
    table = pd.read_csv(tmp_path / "out" / "interface_profile.csv")
    assert set(table["k"]) == {10, 20}
    assert len(table) == 2 * 21
    assert any("Rate fit skipped" in w for w in manifest.warnings)
    assert not (tmp_path / "out" / "rate_fit.json").exists()


def test_bulk_experiment(tmp_path):
    run_experiment(_config(tmp_path, "bulk", n_points=12))
    table = pd.read_csv(tmp_path / "out" / "bulk.csv")
    assert list(table.columns) == ["k", "re_z", "im_z", "H", "ratio", "region"]
    assert len(table) == 24


def test_measures_experiment(tmp_path):
    fp = _config(
        tmp_path,
        "measures",
        kind="FubiniStudyCP1",
        label="fs_height",
        E="0.5",
        ks="[8, 16]",
    )
    run_experiment(fp)
    out = tmp_path / "out"
    measures = pd.read_csv(out / "measures.csv")
    assert set(measures["scaling"]) == {"Unscaled", "CLT", "Energy"}
    assert len(measures) == 3 * 17
    tauberian = pd.read_csv(out / "tauberian.csv")
    assert list(tauberian.columns) == ["k", "x", "sharp", "smoothed", "target"]
    gaps = json.loads((out / "tauberian_gap.json").read_text())
    assert set(gaps) == {"8", "16"}


def test_propagator_and_localization_experiments(tmp_path):
    fp = _config(tmp_path, "propagator", label="bf_linear", E="0.0", out="prop")
    run_experiment(fp)
    table = pd.read_csv(tmp_path / "prop" / "propagator.csv")
    assert list(table.columns) == ["k", "tau", "modulus", "predicted", "rel_error"]
    run_experiment(_config(tmp_path, "localization", out="loc"))
    table = pd.read_csv(tmp_path / "loc" / "localization.csv")
    assert len(table) == 2 * 5
    assert (table["measured"] > 0).all()


def test_decay_experiment(tmp_path):
    run_experiment(_config(tmp_path, "decay", ks="[10, 20, 40]"))
    fit = json.loads((tmp_path / "out" / "decay_fit.json").read_text())
    assert fit["beta_hat"] > 0
    rows = pd.read_csv(tmp_path / "out" / "decay.csv")
    assert rows["dist"].between(0.1, 1.0).all()


def test_stage_failures_are_wrapped(tmp_path):
    fp = _config(
        tmp_path,
        "measures",
        kind="FubiniStudyCP1",
        label="fs_height",
        E="0.5",
        ks="[8]",
        extra="\n[quadrature]\nn_angular = 10",
    )
    with pytest.raises(PipelineError) as info:
        run_experiment(fp)
    assert info.value.stage == "quantize k=8"


def test_output_dir_that_is_a_file(tmp_path):
    blocker = tmp_path / "blocker"
    blocker.write_text("")
    cfg = replace(ExperimentConfig.from_file(_oracle(tmp_path)), output_dir=blocker)
    with pytest.raises(OutputError, match="output directory"):
        run_experiment(cfg)


def test_write_outputs(tmp_path):
    manifest = write_outputs(
        {"empty.csv": pd.DataFrame(columns=["a"]), "fit.json": {"slope": -0.5}},
        tmp_path / "results",
        RunManifest(),
    )
    assert (tmp_path / "results" / "empty.csv").read_text().strip() == "a"
    saved = json.loads((tmp_path / "results" / "fit.json").read_text())
    assert saved == {"slope": -0.5}
    assert manifest.files[0] == {"name": "empty.csv", "non_empty": False}
    assert any("empty" in w for w in manifest.warnings)
