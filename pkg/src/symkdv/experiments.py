"""Error study on the similarity solution ``u = -x/t``: runs, sweeps and file output.

Output files share a prefix. A run writes ``PREFIX_solution.csv``,
``PREFIX_mesh.csv``, ``PREFIX_error.csv`` and a gnuplot script
``PREFIX_plot.gp``; a sweep writes ``PREFIX_sweep.csv`` and
``PREFIX_sweep.gp`` in addition to the files of each member run.
"""

from __future__ import annotations

import csv
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .errors import SingularTime
from .schemes import SchemeKind
from .solver import ExactBoundary, StepConfig, Trajectory, integrate

EXACT_REGIME = 1e-8


def exact_solution(x, t):
    if np.any(np.asarray(t) == 0):
        raise SingularTime("u = -x/t is undefined at t = 0")
    return -np.asarray(x, dtype=float) / t


def linf_error(u, x, t) -> float:
    return float(np.max(np.abs(np.asarray(u, dtype=float) - exact_solution(x, t))))


@dataclass
class RunSpec:
    scheme: SchemeKind = SchemeKind.UNIFORM_EVOLUTIVE
    t0: float = 1.0
    tau: float = 0.1
    h0: float = 0.1
    x0: float = -1.0
    nodes: int = 21
    steps: int = 10
    sweep: str | None = None
    values: tuple = ()
    out: str | None = None
    newton_tol: float = 1e-12

    def __post_init__(self):
        self.scheme = SchemeKind(self.scheme)
        if self.t0 == 0:
            raise ValueError("t0 must be nonzero")
        if not (self.tau > 0 and self.h0 > 0):
            raise ValueError("tau and h0 must be positive")
        if self.steps < 0 or self.nodes < 5:
            raise ValueError("steps must be >= 0 and nodes >= 5")
        if self.sweep not in (None, "tau", "h0"):
            raise ValueError("sweep parameter must be 'tau' or 'h0'")
        self.values = tuple(float(v) for v in self.values)


@dataclass
class ErrorReport:
    errors: list = field(default_factory=list)
    final_error: float = float("nan")
    newton_iterations: list = field(default_factory=list)
    failure: str | None = None
    slope: float | None = None
    exact_regime: bool = False
    table: list = field(default_factory=list)
    files: list = field(default_factory=list)
    trajectory: Trajectory | None = None


def _fmt(v) -> str:
    return repr(float(v))


def _write_rows(path: Path, header, rows) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow(row)


def write_run_files(prefix: str, spec: RunSpec, traj: Trajectory, report: ErrorReport) -> list:
    prefix = Path(prefix)
    prefix.parent.mkdir(parents=True, exist_ok=True)
    sol = prefix.with_name(prefix.name + "_solution.csv")
    mesh = prefix.with_name(prefix.name + "_mesh.csv")
    err = prefix.with_name(prefix.name + "_error.csv")
    plot = prefix.with_name(prefix.name + "_plot.gp")
    sol_rows, mesh_rows = [], []
    for m, (t, x, u) in enumerate(zip(traj.times, traj.xs, traj.us)):
        ue = exact_solution(x, t)
        for n in range(len(x)):
            sol_rows.append((m, n, _fmt(t), _fmt(x[n]), _fmt(u[n]), _fmt(ue[n]),
                             _fmt(abs(u[n] - ue[n]))))
            mesh_rows.append((m, n, _fmt(t), _fmt(x[n])))
    _write_rows(sol, ("m", "n", "t", "x", "u", "u_exact", "abs_err"), sol_rows)
    _write_rows(mesh, ("m", "n", "t", "x"), mesh_rows)
    _write_rows(err, ("param_value", "final_linf", "slope_window"),
                [(_fmt(spec.tau), _fmt(report.final_error), "")])
    plot.write_text(
        "set datafile separator ','\n"
        f"set title '{spec.scheme.value}: numerical solution'\n"
        "set xlabel 'x'\nset ylabel 't'\nset zlabel 'u'\n"
        f"splot '{sol.name}' every ::1 using 4:3:5 with points pt 7 ps 0.5 title 'u', \\\n"
        f"      '{sol.name}' every ::1 using 4:3:6 with lines title 'exact'\n"
        "pause -1\n"
        f"set title '{spec.scheme.value}: lattice'\n"
        "set xlabel 'x'\nset ylabel 't'\n"
        f"plot '{mesh.name}' every ::1 using 4:3 with points pt 7 ps 0.5 notitle\n"
        "pause -1\n"
    )
    return [str(sol), str(mesh), str(err), str(plot)]


def run(spec: RunSpec) -> ErrorReport:
    """Integrate the similarity solution from ``t0`` and record l-infinity errors."""
    cfg = StepConfig(spec.tau, spec.scheme, newton_tol=spec.newton_tol)
    traj = integrate(exact_solution, spec.x0, spec.h0, spec.nodes, spec.t0, spec.steps,
                     cfg, ExactBoundary(exact_solution))
    errors = [linf_error(u, x, t) for t, x, u in zip(traj.times, traj.xs, traj.us)]
    report = ErrorReport(
        errors=errors,
        final_error=errors[-1],
        newton_iterations=traj.newton_iterations,
        failure=traj.error,
        trajectory=traj,
    )
    if spec.out:
        report.files = write_run_files(spec.out, spec, traj, report)
    return report


def loglog_slope(params, errors) -> float:
    p = np.log(np.asarray(params, dtype=float))
    e = np.log(np.asarray(errors, dtype=float))
    return float(np.polyfit(p, e, 1)[0])


def member_spec(spec: RunSpec, value: float, index: int) -> RunSpec:
    """Sweep member: ``tau`` sweeps keep the final time, ``h0`` sweeps keep the domain."""
    out = f"{spec.out}_{spec.sweep}{index}" if spec.out else None
    if spec.sweep == "tau":
        steps = round(spec.steps * spec.tau / value)
        return replace(spec, tau=value, steps=steps, sweep=None, values=(), out=out)
    nodes = round((spec.nodes - 1) * spec.h0 / value) + 1
    return replace(spec, h0=value, nodes=nodes, sweep=None, values=(), out=out)


def sweep(spec: RunSpec, workers: int | None = None) -> ErrorReport:
    """One run per value of the swept parameter, with a fitted log-log slope."""
    if spec.sweep is None:
        raise ValueError("RunSpec.sweep is not set")
    if len(spec.values) < 3:
        raise ValueError("a sweep needs at least three values")
    members = [member_spec(spec, v, i) for i, v in enumerate(spec.values)]
    with ThreadPoolExecutor(max_workers=workers or min(len(members), os.cpu_count() or 1)) as pool:
        reports = list(pool.map(run, members))

    table = [(v, r.final_error, r.failure) for v, r in zip(spec.values, reports)]
    ok = [(v, e) for v, e, f in table if f is None and e > 0 and math.isfinite(e)]
    report = ErrorReport(table=table, failure="; ".join(f for *_, f in table if f) or None)
    report.exact_regime = all(f is None and e <= EXACT_REGIME for _, e, f in table)
    if not report.exact_regime and len(ok) >= 2:
        report.slope = loglog_slope(*zip(*ok))
    report.final_error = max((e for _, e, _ in table), default=float("nan"))
    for r in reports:
        report.files.extend(r.files)

    if spec.out:
        prefix = Path(spec.out)
        rows = []
        for i, (v, e, _) in enumerate(table):
            window = ""
            if i > 0 and e > 0 and table[i - 1][1] > 0:
                window = _fmt(loglog_slope([table[i - 1][0], v], [table[i - 1][1], e]))
            rows.append((_fmt(v), _fmt(e), window))
        data = prefix.with_name(prefix.name + "_sweep.csv")
        _write_rows(data, ("param_value", "final_linf", "slope_window"), rows)
        script = prefix.with_name(prefix.name + "_sweep.gp")
        script.write_text(
            "set datafile separator ','\nset logscale xy\n"
            f"set xlabel '{spec.sweep}'\nset ylabel 'l-infinity error'\n"
            f"plot '{data.name}' every ::1 using 1:2 with linespoints "
            f"title '{spec.scheme.value}'\npause -1\n"
        )
        report.files += [str(data), str(script)]
    return report
