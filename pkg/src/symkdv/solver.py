"""Implicit time stepping: banded linear algebra, Newton iteration, trajectories.

Each interior node ``n = 2 .. N-3`` carries one scheme equation coupling the
five upper values ``uh[n-2 .. n+2]``; the two outermost nodes on each side
are supplied by a boundary closure. The resulting systems are pentadiagonal
and stored in LAPACK band layout ``ab[2 + i - j, j] = A[i, j]``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np
import scipy.linalg

from . import lattice
from .errors import NewtonDiverged, SchemeError, SingularSystem, TooFewPoints
from .schemes import SchemeKind, lagrangian_rhs, scheme_residual
from .stencil import Stencil
from .symmetry import GroupElement, apply_group

logger = logging.getLogger(__name__)

BANDWIDTH = 2


@dataclass
class BandedSystem:
    """Pentadiagonal system in LAPACK band storage (shape ``(5, N)``)."""

    bands: np.ndarray
    rhs: np.ndarray

    @property
    def size(self) -> int:
        return self.bands.shape[1]

    @classmethod
    def from_dense(cls, a, rhs) -> "BandedSystem":
        a = np.asarray(a, dtype=float)
        n = a.shape[0]
        ab = np.zeros((2 * BANDWIDTH + 1, n))
        for i in range(n):
            for j in range(max(0, i - BANDWIDTH), min(n, i + BANDWIDTH + 1)):
                ab[BANDWIDTH + i - j, j] = a[i, j]
        return cls(ab, np.asarray(rhs, dtype=float))

    def to_dense(self) -> np.ndarray:
        n = self.size
        a = np.zeros((n, n))
        for i in range(n):
            for j in range(max(0, i - BANDWIDTH), min(n, i + BANDWIDTH + 1)):
                a[i, j] = self.bands[BANDWIDTH + i - j, j]
        return a

    def matvec(self, v) -> np.ndarray:
        return self.to_dense() @ v


def solve_banded(sys: BandedSystem) -> np.ndarray:
    """Solve by banded LU with partial pivoting.

    Raises
    ------
    SingularSystem
        If a zero pivot is met or the solution is not finite.
    """
    try:
        sol = scipy.linalg.solve_banded((BANDWIDTH, BANDWIDTH), sys.bands, sys.rhs,
                                        check_finite=True)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise SingularSystem(str(exc)) from exc
    if not np.all(np.isfinite(sol)):
        raise SingularSystem("non-finite solution")
    return sol


# --------------------------------------------------------------------------
# boundary closures

BoundaryClosure = Callable[[np.ndarray, float], tuple]


class ExactBoundary:
    """Closure taking the two outer values per side from a known solution ``u(x, t)``."""

    def __init__(self, u_fn: Callable):
        self.u_fn = u_fn

    def __call__(self, xh, th):
        xh = np.asarray(xh)
        return self.u_fn(xh[:2], th), self.u_fn(xh[-2:], th)


class ConstantBoundary:
    def __init__(self, value: float = 0.0):
        self.value = value

    def __call__(self, xh, th):
        return np.full(2, self.value), np.full(2, self.value)


def transformed_boundary(bc: BoundaryClosure, g: GroupElement) -> BoundaryClosure:
    """Closure for the transformed problem: pull nodes back by ``g^-1``, push values by ``g``."""
    ginv = g.inverse()

    def closure(xh, th):
        xh = np.asarray(xh, dtype=float)
        xb, tb, _ = apply_group(ginv, (xh, th, np.zeros_like(xh)))
        left, right = bc(xb, tb)
        pts = np.concatenate([xb[:2], xb[-2:]])
        _, _, v = apply_group(g, (pts, tb, np.concatenate([left, right])))
        return v[:2], v[2:]

    return closure


# --------------------------------------------------------------------------
# per-step assembly


@dataclass
class StepConfig:
    tau: float
    scheme: SchemeKind
    newton_tol: float = 1e-12
    newton_max_iters: int = 25

    def __post_init__(self):
        self.scheme = SchemeKind(self.scheme)
        if not self.tau > 0:
            raise ValueError("tau must be positive")
        if not self.newton_tol > 0:
            raise ValueError("newton_tol must be positive")


def layer_stencils(x, t, u, xh, th, uh) -> Stencil:
    """Batched stencils centred on every interior node of a layer pair."""
    n = len(x)
    c = slice(2, n - 2)
    return Stencil(
        x[c], t, u[c],
        xh[0:n - 4], xh[1:n - 3], xh[2:n - 2], xh[3:n - 1], xh[4:n],
        th,
        uh[0:n - 4], uh[1:n - 3], uh[2:n - 2], uh[3:n - 1], uh[4:n],
    )


def interior_residual(kind: SchemeKind, x, t, u, xh, th, uh) -> np.ndarray:
    return np.asarray(scheme_residual(kind, layer_stencils(x, t, u, xh, th, uh)), dtype=float)


def _boundary_rows(ab, rhs, n, left, right):
    for i, val in zip((0, 1, n - 2, n - 1), (*left, *right)):
        ab[BANDWIDTH, i] = 1.0
        rhs[i] = val


def uniform_jacobian(x, t, u, xh, th, uh) -> np.ndarray:
    """Band storage of d(interior residual)/d(uh) for the uniform scheme; boundary rows identity."""
    n = len(x)
    tau = th - t
    h = (xh[4:] - xh[:-4]) / 4.0
    sigma = xh[2:-2] - x[2:-2]
    c = uh[2:-2] + sigma / tau
    d1 = (uh[3:-1] - uh[1:-3]) / (2 * h)
    idx = np.arange(2, n - 2)
    ab = np.zeros((2 * BANDWIDTH + 1, n))
    coeffs = {
        -2: 1.0 / (2 * h**3),
        -1: c / (2 * h) - 1.0 / h**3,
        0: 1.0 / tau - d1,
        1: -c / (2 * h) + 1.0 / h**3,
        2: -1.0 / (2 * h**3),
    }
    for k, v in coeffs.items():
        ab[BANDWIDTH - k, idx + k] = v
    for i in (0, 1, n - 2, n - 1):
        ab[BANDWIDTH, i] = 1.0
    return ab


def lagrangian_system(x, t, u, xh, th, left, right) -> BandedSystem:
    """Linear system for the upper layer of the solution-dependent scheme."""
    n = len(x)
    tau = th - t
    ab = np.zeros((2 * BANDWIDTH + 1, n))
    rhs = np.zeros(n)
    idx = np.arange(2, n - 2)
    # columns of the (linear) right-hand side, probed with unit vectors
    for k in range(-2, 3):
        e = [np.zeros(n - 4) for _ in range(5)]
        e[k + 2] = np.ones(n - 4)
        s = Stencil(x[2:-2], t, u[2:-2], xh[0:n - 4], xh[1:n - 3], xh[2:n - 2], xh[3:n - 1],
                    xh[4:n], th, *e)
        ab[BANDWIDTH - k, idx + k] = -lagrangian_rhs(s)
    ab[BANDWIDTH, idx] += 1.0 / tau
    rhs[idx] = u[2:-2] / tau
    _boundary_rows(ab, rhs, n, left, right)
    return BandedSystem(ab, rhs)


def _roundoff_floor(x, t, u, xh, th, uh) -> float:
    """Size of the residual attainable in floating point at the current iterate."""
    tau = th - t
    h = np.min(np.diff(xh))
    sigma = np.max(np.abs(xh - x))
    scale = np.max(np.abs(uh)) + np.max(np.abs(u)) + sigma / tau
    return 4 * np.finfo(float).eps * scale * (1 / tau + np.max(np.abs(uh)) / h + 3 / h**3)


class StepResult(NamedTuple):
    x: np.ndarray
    u: np.ndarray
    newton_iterations: int


def advance_nodes(kind: SchemeKind, x, t, u, tau):
    if kind is SchemeKind.UNIFORM_EVOLUTIVE:
        return lattice.advance_evolutive(x, t, tau)
    if kind is SchemeKind.UNIFORM_ORTHOGONAL:
        return lattice.advance_orthogonal(x)
    return lattice.advance_lagrangian(x, u, tau)


def step(x, t: float, u, cfg: StepConfig, bc: BoundaryClosure) -> StepResult:
    """Advance one layer: move the nodes, then solve the scheme for the new values."""
    x = np.asarray(x, dtype=float)
    u = np.asarray(u, dtype=float)
    n = len(x)
    if n < lattice.MIN_NODES:
        raise TooFewPoints(f"need at least {lattice.MIN_NODES} nodes")
    tau = cfg.tau
    th = t + tau
    xh = advance_nodes(cfg.scheme, x, t, u, tau)
    left, right = bc(xh, th)

    if cfg.scheme is SchemeKind.LAGRANGIAN:
        uh = solve_banded(lagrangian_system(x, t, u, xh, th, left, right))
        return StepResult(xh, uh, 0)

    uh = u.copy()
    uh[:2], uh[-2:] = left, right
    for it in range(cfg.newton_max_iters + 1):
        r = interior_residual(cfg.scheme, x, t, u, xh, th, uh)
        norm = np.max(np.abs(r))
        logger.debug("newton iteration %d: |r| = %.3e", it, norm)
        if not np.isfinite(norm):
            break
        if norm <= max(cfg.newton_tol, _roundoff_floor(x, t, u, xh, th, uh)):
            return StepResult(xh, uh, it)
        if it == cfg.newton_max_iters:
            break
        rhs = np.zeros(n)
        rhs[2:-2] = -r
        uh = uh + solve_banded(BandedSystem(uniform_jacobian(x, t, u, xh, th, uh), rhs))
    raise NewtonDiverged(f"no convergence to {cfg.newton_tol:g} in {cfg.newton_max_iters} iterations")


# --------------------------------------------------------------------------
# trajectories


@dataclass
class Trajectory:
    times: list = field(default_factory=list)
    xs: list = field(default_factory=list)
    us: list = field(default_factory=list)
    newton_iterations: list = field(default_factory=list)
    error: str | None = None

    def __len__(self) -> int:
        return len(self.times)

    def mesh(self) -> lattice.Mesh:
        m = lattice.Mesh()
        for t, x in zip(self.times, self.xs):
            m.append(t, x)
        return m


def integrate(u0: Callable, x0: float, h0: float, n_nodes: int, t0: float, steps: int,
              cfg: StepConfig, bc: BoundaryClosure) -> Trajectory:
    """Integrate from the uniform layer ``x0 + k*h0`` at ``t0`` for ``steps`` steps.

    ``u0(x, t)`` gives the initial values. A failing step ends the run; the
    layers computed so far are returned with ``error`` set.
    """
    if t0 == 0:
        raise lattice.SingularTime("t0 must be nonzero")
    x = lattice.build_layer(x0, h0, n_nodes)
    u = np.asarray(u0(x, t0), dtype=float) * np.ones_like(x)
    traj = Trajectory([t0], [x], [u])
    t = t0
    for m in range(steps):
        try:
            res = step(x, t, u, cfg, bc)
        except SchemeError as exc:
            traj.error = f"{type(exc).__name__}: {exc}"
            logger.warning("step %d failed: %s", m, traj.error)
            break
        x, u = res.x, res.u
        t = t + cfg.tau
        traj.times.append(t)
        traj.xs.append(x)
        traj.us.append(u)
        traj.newton_iterations.append(res.newton_iterations)
    return traj


def transform_trajectory(traj: Trajectory, g: GroupElement) -> Trajectory:
    out = Trajectory(error=traj.error, newton_iterations=list(traj.newton_iterations))
    for t, x, u in zip(traj.times, traj.xs, traj.us):
        xg, tg, ug = apply_group(g, (x, t, u))
        out.times.append(tg)
        out.xs.append(xg)
        out.us.append(ug)
    return out
