"""Flat-time-layer meshes and the three node-advancement rules."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import MeshTangled, NonPositiveTimeStep, SingularTime, TooFewPoints

MIN_NODES = 5


@dataclass
class Mesh:
    """Sequence of flat layers: layer ``m`` has the single time ``times[m]``."""

    times: list = field(default_factory=list)
    layers: list = field(default_factory=list)

    def append(self, t: float, x) -> None:
        x = np.asarray(x, dtype=float)
        if self.times and not t > self.times[-1]:
            raise NonPositiveTimeStep("mesh times must increase")
        if np.any(np.diff(x) <= 0):
            raise MeshTangled("layer abscissas must be strictly increasing")
        self.times.append(float(t))
        self.layers.append(x)

    def __len__(self) -> int:
        return len(self.times)

    def points(self):
        """Node coordinates as two ``(layers, nodes)`` arrays ``(x, t)``; needs equal layer sizes."""
        x = np.vstack(self.layers)
        t = np.repeat(np.asarray(self.times)[:, None], x.shape[1], axis=1)
        return x, t


def build_layer(x0: float, h0: float, n: int) -> np.ndarray:
    """Uniform abscissas ``x0 + k*h0`` for ``k = 0..n-1``."""
    if not h0 > 0:
        raise ValueError("h0 must be positive")
    if n < MIN_NODES:
        raise TooFewPoints(f"need at least {MIN_NODES} nodes, got {n}")
    return x0 + h0 * np.arange(n)


def _check_step(t: float, tau: float) -> None:
    if not tau > 0:
        raise NonPositiveTimeStep("tau must be positive")
    if t == 0 or t + tau == 0 or (t < 0 < t + tau):
        raise SingularTime(f"step from t={t} by tau={tau} reaches t=0")


def advance_evolutive(x, t: float, tau: float) -> np.ndarray:
    """Shift nodes by ``sigma = tau*x/t``; a uniform layer stays uniform."""
    _check_step(t, tau)
    return np.asarray(x, dtype=float) * (1.0 + tau / t)


def advance_orthogonal(x) -> np.ndarray:
    return np.array(x, dtype=float)


def advance_lagrangian(x, u, tau: float) -> np.ndarray:
    """Move each node along ``sigma = -tau*u``."""
    if not tau > 0:
        raise NonPositiveTimeStep("tau must be positive")
    xh = np.asarray(x, dtype=float) - tau * np.asarray(u, dtype=float)
    if np.any(np.diff(xh) <= 0):
        raise MeshTangled("solution-dependent node motion crossed neighbouring nodes")
    return xh


def evolutive_closed_form(x_initial, t0: float, t: float) -> np.ndarray:
    """Position after any number of evolutive steps from ``t0`` to ``t``.

    The per-step factors ``(t_k + tau)/t_k`` telescope to ``t/t0``.
    """
    return np.asarray(x_initial, dtype=float) * (t / t0)


def sigma_over_tau_bound(mesh: Mesh) -> float:
    """``max |x_{m+1,n} - x_{m,n}| / tau_m`` over the whole mesh."""
    if len(mesh) < 2:
        raise ValueError("need at least two layers")
    worst = 0.0
    for m in range(len(mesh) - 1):
        tau = mesh.times[m + 1] - mesh.times[m]
        shift = np.abs(mesh.layers[m + 1] - mesh.layers[m])
        worst = max(worst, float(shift.max()) / tau)
    return worst
