"""The invariant schemes reproduce u = -x/t exactly; the fixed-mesh scheme does not."""

import numpy as np

from symkdv import ExactBoundary, SchemeKind, StepConfig, exact_solution, integrate

bc = ExactBoundary(exact_solution)

runs = {
    kind: integrate(exact_solution, -1.0, 0.1, 21, 1.0, 10, StepConfig(0.1, kind), bc)
    for kind in SchemeKind
}

print(f"{'t':>5}" + "".join(f"{k.value:>22}" for k in SchemeKind))
for m in range(11):
    row = []
    for kind, traj in runs.items():
        x, t, u = traj.xs[m], traj.times[m], traj.us[m]
        row.append(np.max(np.abs(u - exact_solution(x, t))))
    print(f"{runs[SchemeKind.LAGRANGIAN].times[m]:5.2f}" + "".join(f"{e:22.3e}" for e in row))

# %% the moving lattices: evolutive nodes spread as x t / t0, Lagrangian nodes follow u
evo, lag = runs[SchemeKind.UNIFORM_EVOLUTIVE], runs[SchemeKind.LAGRANGIAN]
print("\nright end node:", [f"{x[-1]:.3f}" for x in evo.xs])
print("evolutive vs Lagrangian node gap:",
      f"{max(np.max(np.abs(a - b)) for a, b in zip(evo.xs, lag.xs)):.1e}")
print("Newton iterations per step (orthogonal):",
      runs[SchemeKind.UNIFORM_ORTHOGONAL].newton_iterations)
