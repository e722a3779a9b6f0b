"""Point symmetries of the KdV equation ``u_t = u u_x + u_xxx`` acting on stencils.

The symmetry algebra is spanned by

    V1 = d/dx,  V2 = d/dt,  V3 = t d/dx - d/du,  V4 = x d/dx + 3t d/dt - 2u d/du.

Finite transformations are the closed-form flows of these fields.
"""

from __future__ import annotations

import enum
import itertools
import warnings
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .errors import NonMonotoneStencil, RankDeficientWarning
from .stencil import COORDINATES, Stencil

#: Number of coordinates on the six-point stencil (the upper time is shared).
DIM_M = len(COORDINATES)

_RANK_RTOL = 1e-10


class Generator(enum.IntEnum):
    V1 = 1
    V2 = 2
    V3 = 3
    V4 = 4


class TangentVector(NamedTuple):
    xi: float
    tau_coef: float
    phi: float


@dataclass(frozen=True)
class GroupElement:
    """``exp(parameter * V_generator)``; the parameter is the dilation exponent for V4."""

    generator: Generator
    parameter: float

    def __post_init__(self):
        if not np.isfinite(self.parameter):
            raise ValueError("group parameter must be finite")
        object.__setattr__(self, "generator", Generator(self.generator))

    def inverse(self) -> "GroupElement":
        return GroupElement(self.generator, -self.parameter)


def generator_at(l: Generator, p) -> TangentVector:
    x, t, u = p
    l = Generator(l)
    if l is Generator.V1:
        return TangentVector(1.0, 0.0, 0.0)
    if l is Generator.V2:
        return TangentVector(0.0, 1.0, 0.0)
    if l is Generator.V3:
        return TangentVector(t, 0.0, -1.0)
    return TangentVector(x, 3.0 * t, -2.0 * u)


def apply_group(g: GroupElement, p):
    """Image of the point ``p = (x, t, u)`` under ``g``. Works element-wise on arrays."""
    x, t, u = p
    e = g.parameter
    if g.generator is Generator.V1:
        return x + e, t, u
    if g.generator is Generator.V2:
        return x, t + e, u
    if g.generator is Generator.V3:
        return x + e * t, t, u - e
    return np.exp(e) * x, np.exp(3 * e) * t, np.exp(-2 * e) * u


def transform_stencil(g: GroupElement, z: Stencil) -> Stencil:
    """Apply ``g`` pointwise to all six stencil points."""
    x, t, u = apply_group(g, (z.x, z.t, z.u))
    xs, us = [], []
    th = None
    for xk, uk in zip(z.upper_x, z.upper_u):
        xk, th, uk = apply_group(g, (xk, z.th, uk))
        xs.append(xk)
        us.append(uk)
    out = Stencil(x, t, u, *xs, th, *us)
    if not all(np.all(np.asarray(b) > np.asarray(a)) for a, b in itertools.pairwise(xs)):
        raise NonMonotoneStencil("transformed stencil lost its spatial ordering")
    return out


def prolonged_action(l: Generator, z: Stencil) -> np.ndarray:
    """Coefficients of the prolonged generator at each coordinate, in canonical order."""
    lo = generator_at(l, (z.x, z.t, z.u))
    ups = [generator_at(l, (xk, z.th, uk)) for xk, uk in zip(z.upper_x, z.upper_u)]
    row = [lo.xi, lo.tau_coef, lo.phi]
    row += [v.xi for v in ups]
    row.append(ups[0].tau_coef)
    row += [v.phi for v in ups]
    return np.array([float(c) for c in row])


def strong_invariance_defect(
    func: Callable[[Stencil], float], l: Generator, z: Stencil, step: float = 1e-4
):
    """Central-difference estimate of ``d/de func(exp(e V_l) z)`` at ``e = 0``."""
    fp = func(transform_stencil(GroupElement(l, step), z))
    fm = func(transform_stencil(GroupElement(l, -step), z))
    return (np.asarray(fp) - np.asarray(fm)) / (2 * step)


def z_matrix(z: Stencil) -> np.ndarray:
    """The 4 x 14 matrix whose rows are the prolonged generators at ``z``."""
    return np.vstack([prolonged_action(l, z) for l in Generator])


def matrix_rank(a: np.ndarray, rtol: float = _RANK_RTOL) -> int:
    """Rank by Gaussian elimination with partial (row) pivoting.

    A pivot counts as nonzero when it exceeds ``rtol`` times the largest row
    magnitude of the input.
    """
    a = np.array(a, dtype=float)
    if a.size == 0:
        return 0
    tol = rtol * np.max(np.abs(a).sum(axis=1))
    if tol == 0:
        return 0
    rows, cols = a.shape
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        p = rank + int(np.argmax(np.abs(a[rank:, c])))
        if abs(a[p, c]) <= tol:
            continue
        a[[rank, p]] = a[[p, rank]]
        a[rank + 1:] -= np.outer(a[rank + 1:, c] / a[rank, c], a[rank])
        rank += 1
    return rank


class InvariantCount(NamedTuple):
    alpha: int
    rank: int
    generic: bool


def invariant_count(z: Stencil) -> InvariantCount:
    """Number of functionally independent invariants, ``dim M - rank Z``.

    ``generic`` is False (and a :class:`RankDeficientWarning` is issued) when
    the rank falls below the number of generators.
    """
    r = matrix_rank(z_matrix(z))
    generic = r == len(Generator)
    if not generic:
        warnings.warn(f"rank(Z) = {r} < {len(Generator)} at a non-generic stencil",
                      RankDeficientWarning, stacklevel=2)
    return InvariantCount(DIM_M - r, r, generic)


def weak_invariance_check_flat_layers(p, q, params=(-1.0, -0.1, 0.1, 1.0),
                                      atol: float = 0.0) -> bool:
    """Check that ``T+ = t_q - t_p = 0`` is preserved by every one-parameter flow.

    ``p`` and ``q`` are neighbouring points ``(x, t, u)`` on the same lattice
    row. Only the solution set matters: if ``T+ != 0`` initially there is
    nothing to preserve and the check passes.
    """
    if abs(q[1] - p[1]) > atol:
        return True
    for l in Generator:
        for e in params:
            g = GroupElement(l, e)
            tp = apply_group(g, p)[1]
            tq = apply_group(g, q)[1]
            if abs(tq - tp) > atol:
                return False
    return True
