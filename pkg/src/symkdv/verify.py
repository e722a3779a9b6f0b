"""Numerical certification of invariance, invariant counts and scheme exactness.

Each check returns a :class:`Check`; :func:`certify` runs them all. These back
the ``verify`` command of the CLI.
"""

from __future__ import annotations

import itertools
from typing import NamedTuple

import numpy as np

from .experiments import RunSpec, exact_solution, linf_error, run
from .schemes import SchemeKind, residual_invariant_form, residual_uniform, uniform_term_scale
from .stencil import invariants, random_stencils, take
from .symmetry import (
    Generator, GroupElement, apply_group, invariant_count, strong_invariance_defect,
    transform_stencil,
)


class Check(NamedTuple):
    name: str
    passed: bool
    detail: str


def finite_invariance(n: int = 1000, seed: int = 0, rtol: float = 1e-9) -> Check:
    rng = np.random.default_rng(seed)
    z = random_stencils(rng, n)
    base = np.array(invariants(z))
    worst = 0.0
    for l in Generator:
        for e in rng.uniform(-1, 1, 3):
            moved = np.array(invariants(transform_stencil(GroupElement(l, e), z)))
            worst = max(worst, float(np.max(np.abs(moved - base) / (1 + np.abs(base)))))
    return Check("finite invariance I1..I10", worst <= rtol, f"max scaled defect {worst:.2e}")


def infinitesimal_invariance(n: int = 1000, seed: int = 0, step: float = 1e-4,
                             atol: float = 1e-6) -> Check:
    rng = np.random.default_rng(seed)
    z = random_stencils(rng, n)
    worst = 0.0
    for l in Generator:
        d = strong_invariance_defect(lambda s: np.array(invariants(s)), l, z, step)
        worst = max(worst, float(np.max(np.abs(d))))
    return Check("infinitesimal invariance pr V_l I_k", worst <= atol, f"max defect {worst:.2e}")


def count_check(n: int = 100, seed: int = 0) -> Check:
    rng = np.random.default_rng(seed)
    z = random_stencils(rng, n)
    counts = {invariant_count(take(z, i)) for i in range(n)}
    ok = counts == {(10, 4, True)}
    return Check("rank Z = 4, alpha = 10", ok, f"observed {sorted(counts)}")


def equivalence_check(n: int = 1000, seed: int = 0, rtol: float = 1e-12) -> Check:
    rng = np.random.default_rng(seed)
    z = random_stencils(rng, n, uniform=True)
    a = residual_invariant_form(invariants(z))
    h = (z.xh_pp - z.xh_mm) / 4
    scaled = h**2 * (z.th - z.t)
    b = scaled * residual_uniform(z)
    worst = float(np.max(np.abs(a - b) / np.maximum(np.abs(b), scaled * uniform_term_scale(z))))
    return Check("invariant form == h^2 tau * expanded form", worst <= rtol,
                 f"max relative gap {worst:.2e}")


def exactness_check(atol: float = 1e-9, agree: float = 1e-10) -> Check:
    lag = run(RunSpec(scheme=SchemeKind.LAGRANGIAN)).trajectory
    evo = run(RunSpec(scheme=SchemeKind.UNIFORM_EVOLUTIVE)).trajectory
    err = max(linf_error(lag.us[-1], lag.xs[-1], lag.times[-1]),
              linf_error(evo.us[-1], evo.xs[-1], evo.times[-1]))
    gap = max(max(np.max(np.abs(a - b)) for a, b in zip(lag.us, evo.us)),
              max(np.max(np.abs(a - b)) for a, b in zip(lag.xs, evo.xs)))
    ok = err <= atol and gap <= agree and lag.error is None and evo.error is None
    return Check("u = -x/t exact on invariant schemes", ok,
                 f"final error {err:.2e}, trajectory gap {gap:.2e}")


def flat_layer_check() -> Check:
    ok = True
    for kind in SchemeKind:
        traj = run(RunSpec(scheme=kind)).trajectory
        for t, x in zip(traj.times, traj.xs):
            for l, e in itertools.product(Generator, (-1.0, -0.1, 0.1, 1.0)):
                _, tg, _ = apply_group(GroupElement(l, e), (x, np.full_like(x, t), exact_solution(x, t)))
                ok &= bool(np.all(tg == tg[0]))
    return Check("flat time layers preserved", ok, "all rules x all flows")


def certify(seed: int = 0) -> list[Check]:
    return [
        finite_invariance(seed=seed),
        infinitesimal_invariance(seed=seed),
        count_check(seed=seed),
        equivalence_check(seed=seed),
        exactness_check(),
        flat_layer_check(),
    ]
