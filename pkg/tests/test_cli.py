import json

import pytest
from click.testing import CliRunner

from solvable1d.cli import main


@pytest.fixture()
def runner():
    return CliRunner()


def test_list_models_text_and_json(runner):
    res = runner.invoke(main, ["list-models"])
    assert res.exit_code == 0
    assert "morse" in res.output and "eckart" in res.output
    res = runner.invoke(main, ["list-models", "--format", "json"])
    names = [row["name"] for row in json.loads(res.output)]
    assert len(names) == 10
    assert names[0] == "shifted-oscillator"


def test_spectrum_json_and_csv(runner):
    res = runner.invoke(main, ["spectrum", "--model", "morse"])
    assert res.exit_code == 0
    rows = json.loads(res.output)
    assert [r["energy"] for r in rows] == [0.0, 7.0, 12.0, 15.0]
    res = runner.invoke(main, ["spectrum", "--model", "morse", "--format", "csv"])
    assert res.output.splitlines()[0] == "model,n,energy,energy_telescoped"
    assert len(res.output.splitlines()) == 5


def test_spectrum_all_models(runner):
    res = runner.invoke(main, ["spectrum", "--model", "all", "--nmax", "0"])
    rows = json.loads(res.output)
    assert len(rows) == 10


def test_spectrum_inline_model(runner):
    inline = '{"family":"sinusoidal","a":2.0,"b":0.0,"gamma":1.0,"name":"wide"}'
    res = runner.invoke(main, ["spectrum", "--model", inline, "--nmax", "2"])
    rows = json.loads(res.output)
    assert [r["energy"] for r in rows] == [0.0, 4.0, 8.0]
    assert rows[0]["model"] == "wide"


def test_bae_reports_roots(runner):
    res = runner.invoke(main, ["bae", "--model", "3d-oscillator", "--nmax", "2", "--format", "csv"])
    assert res.exit_code == 0
    lines = res.output.splitlines()
    assert lines[0] == "model,n,k,root,residual,iterations,strategy"
    assert len(lines) == 4  # one root at n=1, two at n=2


def test_all_clamps_nmax_to_each_window(runner):
    # a named model is strict about its window, 'all' caps per model instead
    res = runner.invoke(main, ["spectrum", "--model", "all", "--nmax", "2", "--format", "csv"])
    assert res.exit_code == 0
    rows = [ln.split(",") for ln in res.output.splitlines()[1:]]
    per_model = {}
    for r in rows:
        per_model[r[0]] = max(per_model.get(r[0], 0), int(r[1]))
    assert per_model["eckart"] == 0
    assert per_model["rosen-morse2"] == 1
    assert per_model["morse"] == 2
    assert runner.invoke(main, ["verify", "--model", "all", "--nmax", "2"]).exit_code == 0


def test_usage_errors_exit_2(runner):
    assert runner.invoke(main, ["spectrum", "--model", "nope"]).exit_code == 2
    assert runner.invoke(main, ["spectrum", "--model", "morse", "--nmax", "9"]).exit_code == 2
    assert runner.invoke(main, ["spectrum"]).exit_code == 2
    bad_inline = '{"family":"sinusoidal","a":1.0,"b":0.0,"gamma":1.0,"zap":1}'
    assert runner.invoke(main, ["spectrum", "--model", bad_inline]).exit_code == 2
    res = runner.invoke(main, ["verify", "--model", '{"family":"sinusoidal","a":1,"b":0,"gamma":1}'])
    assert res.exit_code == 2  # inline verification needs explicit bounds


def test_numeric_errors_exit_3(runner):
    res = runner.invoke(main, ["verify", "--model", "morse", "--grid-points", "30"])
    assert res.exit_code == 3


def test_config_defaults_and_unknown_keys(runner, tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text('{"model": "morse", "nmax": 1, "format": "csv"}')
    res = runner.invoke(main, ["spectrum", "--config", str(cfg)])
    assert res.exit_code == 0
    assert len(res.output.splitlines()) == 3
    # explicit flags beat config values
    res = runner.invoke(main, ["spectrum", "--config", str(cfg), "--nmax", "0"])
    assert len(res.output.splitlines()) == 2
    cfg.write_text('{"model": "morse", "mystery": 1}')
    assert runner.invoke(main, ["spectrum", "--config", str(cfg)]).exit_code == 2
    cfg.write_text("not json")
    assert runner.invoke(main, ["spectrum", "--config", str(cfg)]).exit_code == 2


def test_verify_single_model(runner, tmp_path):
    out = tmp_path / "report.json"
    res = runner.invoke(main, ["verify", "--model", "rosen-morse2", "--out", str(out)])
    assert res.exit_code == 0
    assert "rosen-morse2: PASS" in res.output
    doc = json.loads(out.read_text())
    assert doc["passed"] is True
    assert doc["reports"][0]["checks"]["fd_max_error"] < 2e-3


def test_verify_exit_1_on_failing_check(runner):
    res = runner.invoke(main, ["verify", "--model", "morse", "--fd-tol", "1e-12"])
    assert res.exit_code == 1
    assert "morse: FAIL" in res.output


def test_verify_output_is_byte_stable(runner):
    args = ["verify", "--model", "eckart"]
    out1 = runner.invoke(main, args).output
    out2 = runner.invoke(main, args).output
    assert out1 == out2


def test_verify_parallel_matches_serial(runner, tmp_path):
    f1, f2 = tmp_path / "a.json", tmp_path / "b.json"
    r1 = runner.invoke(main, ["verify", "--model", "all", "--nmax", "0", "--out", str(f1)])
    r2 = runner.invoke(
        main, ["verify", "--model", "all", "--nmax", "0", "--parallel", "--out", str(f2)]
    )
    assert r1.exit_code == 0 and r2.exit_code == 0
    assert f1.read_text() == f2.read_text()


def test_verify_csv_format(runner):
    res = runner.invoke(main, ["verify", "--model", "eckart", "--format", "csv"])
    assert res.exit_code == 0
    data_lines = [l for l in res.output.splitlines() if l.startswith("eckart,")]
    assert len(data_lines) == 1


def test_plot_data_columns(runner):
    res = runner.invoke(
        main,
        ["plot-data", "--model", "scarf1", "--nmax", "1", "--grid-points", "40"],
    )
    assert res.exit_code == 0
    lines = res.output.splitlines()
    assert lines[0] == "x,potential,psi_0,psi_1"
    assert len(lines) == 41
    res = runner.invoke(main, ["plot-data", "--model", "all"])
    assert res.exit_code == 2
