import json
from pathlib import Path

import pytest

from equiloc.cli import main


def run(args, tmp):
    return main(args + ["--out", str(tmp)])


def latest_report(tmp):
    runs = sorted(Path(tmp).glob("run-*/report.json"))
    assert runs
    return json.loads(runs[-1].read_text())


def test_dh_command(tmp_path):
    assert run(["dh", "--model", "sphere"], tmp_path) == 0
    rep = latest_report(tmp_path)
    assert rep["passed"]
    assert rep["results"]["mass"] == pytest.approx(4 * 3.141592653589793)
    run_dir = next(Path(tmp_path).glob("run-*"))
    assert (run_dir / "density.csv").exists()
    assert (run_dir / "timings.json").exists()


def test_localize_command_and_reproducibility(tmp_path):
    a = tmp_path / "a"
    b = tmp_path / "b"
    assert run(["localize", "--model", "sphere"], a) == 0
    assert run(["localize", "--model", "sphere"], b) == 0
    ra = next(Path(a).glob("run-*/report.json")).read_bytes()
    rb = next(Path(b).glob("run-*/report.json")).read_bytes()
    assert ra == rb


def test_invalid_config_exit_code(tmp_path):
    cfg = tmp_path / "bad.json"
    cfg.write_text(json.dumps({
        "model": {"kind": "linear-cotangent", "n": 2,
                  "generators": [[[0, 1], [1, 0]]]}}))
    code = main(["singular", "--config", str(cfg), "--out",
                 str(tmp_path)])
    assert code == 4


def test_unknown_model_kind(tmp_path):
    cfg = tmp_path / "bad2.json"
    cfg.write_text(json.dumps({"model": {"kind": "donut"}}))
    assert main(["dh", "--config", str(cfg), "--out",
                 str(tmp_path)]) == 4


def test_budget_exceeded_exit_code(tmp_path):
    # the 2-D saddle at tiny mu overruns the tensor-grid budget
    code = main(["spexpand", "--model", "saddle", "--mu-sweep",
                 "1e-4:1e-5:2", "--out", str(tmp_path)])
    assert code == 3


def test_resolve_verify_command(tmp_path):
    assert run(["resolve-verify", "--model", "linrot2"], tmp_path) == 0
    rep = latest_report(tmp_path)
    assert rep["results"]["factorization_max_err"] <= 1e-12
    assert rep["results"]["crit_mismatches"] == 0
    assert rep["results"]["rel_gap"] <= 0.01


def test_singular_command_report_schema(tmp_path):
    assert run(["singular", "--model", "cotangent-circle", "--mu-sweep",
                "1e-2:1e-4:5"], tmp_path) == 0
    rep = latest_report(tmp_path)
    assert {"rows", "leading", "kappa", "lambda", "fit",
            "fit_scaled"} <= set(rep["results"].keys())
    run_dir = next(Path(tmp_path).glob("run-*"))
    header = (run_dir / "singular.csv").read_text().splitlines()[0]
    assert header == "mu,oracle,scaled,leading,remainder"


def test_spexpand_cotangent_route(tmp_path):
    assert run(["spexpand", "--model", "cotangent-circle", "--mu-sweep",
                "1e-2:1e-4:5"], tmp_path) == 0
    rep = latest_report(tmp_path)
    assert rep["results"]["fit"]["exponent"] == pytest.approx(2.0,
                                                              abs=0.15)
