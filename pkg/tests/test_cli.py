import csv
import json

import pytest

from artifact.cli_reporting import (SCHEMA_VERSION, SUITES, ConfigError, RunConfig, emit_report, main, run_suite,
                                    worker_count)


def write(tmp_path, data, name="cfg.json"):
    p = tmp_path / name
    p.write_text(json.dumps(data))
    return str(p)


def test_list_suites(capsys):
    assert main(["--list-suites"]) == 0
    assert capsys.readouterr().out.split() == list(SUITES)


def test_verify_ybe_passes_and_writes_report(tmp_path, capsys):
    cfg = write(tmp_path, {"seed": 3})
    out = tmp_path / "r.json"
    assert main(["verify", "--config", cfg, "--suite", "ybe", "--report", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["schema_version"] == SCHEMA_VERSION
    assert [s["name"] for s in rep["suites"]] == ["ybe"]
    ybe = next(c for c in rep["suites"][0]["checks"] if c["name"] == "ybe.ybe")
    assert ybe["max_residual"] <= 1e-10 and ybe["verdict"] == "pass" and ybe["samples_used"] == 100
    assert list(ybe) == ["name", "equation", "kind", "samples_used", "max_residual", "min_residual", "tolerance", "verdict"]
    assert "ybe.ybe" in capsys.readouterr().out


def test_report_roundtrip_and_text():
    rep = run_suite(RunConfig(suites=["algebra"], seed=1))
    assert json.loads(emit_report(rep)) == rep
    text = emit_report(rep, "text")
    assert "L(u) L~(u) = rho(u) I" in text and text.strip().endswith("errors)")


def test_same_seed_same_report_different_seed_differs():
    a = emit_report(run_suite(RunConfig(suites=["rll", "onsager"], seed=5, n_sites=3)))
    b = emit_report(run_suite(RunConfig(suites=["onsager", "rll"][::-1], seed=5, n_sites=3), workers=3))
    c = emit_report(run_suite(RunConfig(suites=["rll", "onsager"], seed=6, n_sites=3)))
    assert a == b and a != c


def test_suite_results_independent_of_selection():
    alone = run_suite(RunConfig(suites=["transfer"], seed=9, n_sites=3))["suites"][0]
    both = run_suite(RunConfig(suites=["ybe", "transfer"], seed=9, n_sites=3))["suites"][1]
    assert alone == both


def test_nothing_run(tmp_path, capsys):
    cfg = write(tmp_path, {"suites": []})
    assert main(["verify", "--config", cfg]) == 1
    rep = run_suite(RunConfig(suites=[]))
    assert rep["summary"]["checks"] == 0 and rep["summary"]["verdict"] == "nothing-run"


def test_degenerate_hamiltonian_is_structured_error(tmp_path):
    b = {"eps_plus": 1, "eps_minus": -1, "k_plus": 0.5, "k_minus": 0.7, "kappa": 1, "kappa_star": 0.3,
         "kappa_plus": 0.2, "kappa_minus": 0.4}
    rep = run_suite(RunConfig(suites=["hamiltonian"], boundary=b, n_sites=2))
    errs = [c for c in rep["suites"][0]["checks"] if c["verdict"] == "error"]
    assert errs and all("eps_plus + eps_minus = 0" in c["error"]["message"] for c in errs)
    assert rep["summary"]["verdict"] == "error"
    assert main(["verify", "--config", write(tmp_path, {"suites": ["hamiltonian"], "boundary": b, "n_sites": 2})]) == 1


def test_tolerance_override_forces_failure(tmp_path):
    cfg = write(tmp_path, {"suites": ["ybe"], "tolerance_overrides": {"ybe.ybe": 1e-30}})
    assert main(["verify", "--config", cfg]) == 1


def test_flags_override_file(tmp_path):
    cfg = write(tmp_path, {"seed": 1, "n_sites": 6, "suites": ["ybe"]})
    out = tmp_path / "r.json"
    main(["verify", "--config", cfg, "--seed", "2", "--sites", "2", "--suite", "rll", "--report", str(out), "--format", "json"])
    rep = json.loads(out.read_text())
    assert rep["config"]["seed"] == 2 and rep["config"]["n_sites"] == 2 and rep["config"]["suites"] == ["rll"]


@pytest.mark.parametrize("bad", [{"foo": 1}, {"suites": ["nope"]}, {"n_sites": 0}, {"twist_mode": "weird"},
                                 {"boundary": {"eps": 1}}, {"q_sampling": {"lo": 2, "hi": 1}}, {"seed": -1}])
def test_bad_config(tmp_path, bad, capsys):
    with pytest.raises(ConfigError):
        RunConfig.from_dict(bad)
    assert main(["verify", "--config", write(tmp_path, bad)]) == 2


def test_missing_config_file(tmp_path):
    assert main(["verify", "--config", str(tmp_path / "none.json")]) == 2


def test_fixed_lists_and_q(tmp_path):
    cfg = {"q_sampling": {"value": [0.9, 0.3], "count": 4}, "twist_mode": [[1, 0], [0, 1], [0.6, 0.8]],
           "inhomogeneity_mode": "ones", "n_sites": 3, "suites": ["transfer", "hamiltonian"]}
    rep = run_suite(RunConfig.from_dict(cfg))
    assert rep["summary"]["verdict"] == "pass"
    assert rep["config"]["q_sampling"]["value"] == [0.9, 0.3]
    short = dict(cfg, n_sites=4)
    rep = run_suite(RunConfig.from_dict(short))
    assert rep["summary"]["errors"] > 0


def test_spectrum_csv(tmp_path, capsys):
    cfg = write(tmp_path, {"n_sites": 3, "seed": 4})
    out = tmp_path / "spec.csv"
    assert main(["spectrum", "--config", cfg, "--out", str(out)]) == 0
    rows = list(csv.reader(out.open()))
    assert rows[0] == ["index", "re", "im"] and len(rows) == 9
    vals = [(float(r[1]), float(r[2])) for r in rows[1:]]
    assert vals == sorted(vals)


def test_worker_env(monkeypatch):
    monkeypatch.setenv("ARTIFACT_WORKERS", "3")
    assert worker_count() == 3
    monkeypatch.setenv("ARTIFACT_WORKERS", "x")
    with pytest.raises(ConfigError):
        worker_count()


def test_no_command_is_usage_error():
    assert main([]) == 2
