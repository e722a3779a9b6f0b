import numpy as np
import pytest

from symkdv.errors import SingularTime
from symkdv.experiments import RunSpec, exact_solution, linf_error, run, sweep
from symkdv.schemes import SchemeKind


def test_exact_solution_values():
    assert exact_solution(0.0, 1.0) == 0
    assert exact_solution(1.0, 1.0) == -1
    assert exact_solution(2.0, -4.0) == 0.5
    with pytest.raises(SingularTime):
        exact_solution(1.0, 0.0)


def test_linf_error():
    x = np.linspace(-1, 1, 11)
    u = exact_solution(x, 2.0)
    assert linf_error(u, x, 2.0) == 0
    v = u.copy()
    v[3] += 1e-3
    assert linf_error(v, x, 2.0) == pytest.approx(1e-3, rel=1e-12)
    v[7] -= 4e-3
    assert linf_error(v, x, 2.0) == pytest.approx(4e-3, rel=1e-12)


def test_runspec_validation():
    with pytest.raises(ValueError):
        RunSpec(t0=0.0)
    with pytest.raises(ValueError):
        RunSpec(sweep="nodes")
    assert RunSpec(scheme="lagrangian").scheme is SchemeKind.LAGRANGIAN


def test_lagrangian_run_exact():
    rep = run(RunSpec(scheme=SchemeKind.LAGRANGIAN))
    assert rep.failure is None
    assert len(rep.errors) == 11
    assert rep.final_error <= 1e-9


def test_orthogonal_much_worse_than_invariant():
    lag = run(RunSpec(scheme=SchemeKind.LAGRANGIAN)).final_error
    ortho = run(RunSpec(scheme=SchemeKind.UNIFORM_ORTHOGONAL)).final_error
    assert ortho >= 10 * lag
    assert ortho > 1e-5


def test_orthogonal_tau_sweep_first_order():
    rep = sweep(RunSpec(scheme=SchemeKind.UNIFORM_ORTHOGONAL, sweep="tau",
                        values=(0.1, 0.05, 0.025, 0.0125)))
    assert 0.9 <= rep.slope <= 1.1
    errs = [e for _, e, _ in rep.table]
    assert all(b <= a for a, b in zip(errs, errs[1:]))


def test_evolutive_sweep_exact_regime():
    rep = sweep(RunSpec(scheme=SchemeKind.UNIFORM_EVOLUTIVE, sweep="h0",
                        values=(0.2, 0.1, 0.05)))
    assert rep.exact_regime and rep.slope is None
    assert all(e <= 1e-8 for _, e, _ in rep.table)


def test_sweep_needs_three_values():
    with pytest.raises(ValueError):
        sweep(RunSpec(sweep="tau", values=(0.1,)))
    with pytest.raises(ValueError):
        sweep(RunSpec())


def test_sweep_records_failures_and_continues():
    # final time -0.05; the single step of size 0.4 from -0.35 jumps across t = 0
    rep = sweep(RunSpec(t0=-0.35, steps=3, sweep="tau", values=(0.1, 0.05, 0.4)))
    assert rep.table[0][2] is None and rep.table[1][2] is None
    assert "SingularTime" in rep.table[2][2] and rep.failure


def test_h0_sweep_keeps_domain():
    from symkdv.experiments import member_spec
    spec = RunSpec(sweep="h0", values=(0.05, 0.1, 0.2))
    m = member_spec(spec, 0.05, 0)
    assert m.nodes == 41 and m.h0 == 0.05
    t = member_spec(RunSpec(sweep="tau", values=(0.05, 0.1, 0.2)), 0.025, 0)
    assert t.steps == 40


def test_output_files(tmp_path):
    prefix = tmp_path / "out" / "evo"
    rep = run(RunSpec(out=str(prefix)))
    names = sorted(p.split("/")[-1] for p in rep.files)
    assert names == ["evo_error.csv", "evo_mesh.csv", "evo_plot.gp", "evo_solution.csv"]
    sol = (tmp_path / "out" / "evo_solution.csv").read_text().splitlines()
    assert sol[0] == "m,n,t,x,u,u_exact,abs_err"
    assert len(sol) == 1 + 11 * 21
    mesh = (tmp_path / "out" / "evo_mesh.csv").read_text().splitlines()
    assert mesh[0] == "m,n,t,x"
    err = (tmp_path / "out" / "evo_error.csv").read_text().splitlines()
    assert err[0] == "param_value,final_linf,slope_window"
    assert "evo_solution.csv" in (tmp_path / "out" / "evo_plot.gp").read_text()


def test_output_is_bit_identical(tmp_path):
    for d in ("a", "b"):
        run(RunSpec(scheme=SchemeKind.UNIFORM_ORTHOGONAL, out=str(tmp_path / d / "r")))
        sweep(RunSpec(scheme=SchemeKind.UNIFORM_ORTHOGONAL, sweep="tau",
                      values=(0.1, 0.05, 0.025), out=str(tmp_path / d / "s")))
    files = sorted(p.name for p in (tmp_path / "a").iterdir())
    assert "s_sweep.csv" in files and "s_sweep.gp" in files
    for name in files:
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_sweep_csv_has_window_slopes(tmp_path):
    sweep(RunSpec(scheme=SchemeKind.UNIFORM_ORTHOGONAL, sweep="tau",
                  values=(0.1, 0.05, 0.025), out=str(tmp_path / "s")))
    rows = (tmp_path / "s_sweep.csv").read_text().splitlines()
    assert rows[0] == "param_value,final_linf,slope_window"
    assert rows[1].endswith(",")
    assert 0.9 <= float(rows[2].split(",")[2]) <= 1.1
