import pytest

from symkdv.cli import main


def test_run_prints_errors(capsys):
    assert main(["run", "--scheme", "lagrangian", "--steps", "3"]) == 0
    out = capsys.readouterr().out
    assert "final linf error" in out and out.count("layer") == 4


def test_run_reports_failure(capsys):
    assert main(["run", "--scheme", "uniform-evolutive", "--t0", "-0.25", "--steps", "5"]) == 1


def test_sweep_prints_slope(capsys, tmp_path):
    rc = main(["sweep", "--scheme", "uniform-orthogonal", "--sweep", "tau",
               "--values", "0.1,0.05,0.025,0.0125", "--out", str(tmp_path / "s")])
    assert rc == 0
    out = capsys.readouterr().out
    slope = float(out.split("log-log slope")[1].split()[0])
    assert 0.9 <= slope <= 1.1
    assert (tmp_path / "s_sweep.csv").exists()


def test_sweep_argument_errors(capsys):
    assert main(["sweep", "--values", "0.1,0.2,0.3"]) == 2
    assert main(["sweep", "--sweep", "tau", "--values", "0.1"]) == 2


def test_verify_passes(capsys):
    assert main(["verify", "--seed", "3"]) == 0
    out = capsys.readouterr().out
    assert out.count("PASS") == 6 and "FAIL" not in out


def test_count_invariants(capsys):
    assert main(["count-invariants", "--seed", "1"]) == 0
    assert "alpha  = 10" in capsys.readouterr().out
    zeros = ",".join(["0"] * 14)
    assert main(["count-invariants", f"--stencil={zeros}"]) == 1
    out = capsys.readouterr().out
    assert "rank Z = 3" in out and "non-generic" in out
    assert main(["count-invariants", "--stencil", "1,2,3"]) == 2


def test_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# study\nscheme = uniform-orthogonal\ntau = 0.05\nnewton-tol = 1e-11\nsteps = 4\n")
    assert main(["run", "--config", str(cfg)]) == 0
    assert capsys.readouterr().out.count("layer") == 5
    assert main(["run", "--config", str(cfg), "--steps", "2"]) == 0
    assert capsys.readouterr().out.count("layer") == 3


def test_config_rejects_unknown_key(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("colour = blue\n")
    with pytest.raises(SystemExit):
        main(["run", "--config", str(cfg)])
