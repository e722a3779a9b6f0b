"""Difference invariants of the six-point stencil and how the group moves a stencil."""

import numpy as np

from symkdv import (
    Generator, GroupElement, invariant_count, invariants, random_stencils, take,
    transform_stencil, z_matrix,
)

rng = np.random.default_rng(7)

# %% one random stencil: lower point plus five upper points at a shared time
z = take(random_stencils(rng, 1), 0)
for name, value in z._asdict().items():
    print(f"{name:>6} = {value: .4f}")

I = invariants(z)
print("\ninvariants:")
for k, v in enumerate(I, 1):
    print(f"  I{k:<2} = {v: .6f}")

# %% push the stencil along each one-parameter flow; the invariants do not move
for l in Generator:
    moved = invariants(transform_stencil(GroupElement(l, 0.7), z))
    print(f"{l.name}: max |I(g z) - I(z)| = {np.max(np.abs(np.subtract(moved, I))):.2e}")

# %% the 4 x 14 matrix of prolonged generators has full rank, leaving 14 - 4 = 10 invariants
np.set_printoptions(precision=3, suppress=True, linewidth=150)
print(z_matrix(z))
print(invariant_count(z))

# at the origin the dilation row vanishes and one more invariant appears
print(invariant_count(type(z)(*[0.0] * 14)))
