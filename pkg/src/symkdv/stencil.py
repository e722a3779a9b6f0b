"""Six-point implicit stencil, its spacings and the ten difference invariants.

The stencil has one point ``(x, t, u)`` on the lower time layer and five
points on the upper layer, all sharing the time ``th``::

    xh_mm   xh_m   xh   xh_p   xh_pp      (time th)
                  /
                 x                        (time t)

Every function here accepts either scalar fields or numpy arrays of equal
shape, in which case the computation is carried out element-wise over a batch
of stencils.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import NonMonotoneStencil, NonPositiveTimeStep

#: Canonical coordinate order, also the column order of the symmetry matrix.
COORDINATES = (
    "x", "t", "u",
    "xh_mm", "xh_m", "xh", "xh_p", "xh_pp",
    "th",
    "uh_mm", "uh_m", "uh", "uh_p", "uh_pp",
)


class Stencil(NamedTuple):
    x: float
    t: float
    u: float
    xh_mm: float
    xh_m: float
    xh: float
    xh_p: float
    xh_pp: float
    th: float
    uh_mm: float
    uh_m: float
    uh: float
    uh_p: float
    uh_pp: float

    @classmethod
    def from_points(cls, lower, upper_x, th, upper_u) -> "Stencil":
        """Build from the lower point ``(x, t, u)`` and the five upper values."""
        x, t, u = lower
        return cls(x, t, u, *upper_x, th, *upper_u)

    @property
    def upper_x(self):
        return (self.xh_mm, self.xh_m, self.xh, self.xh_p, self.xh_pp)

    @property
    def upper_u(self):
        return (self.uh_mm, self.uh_m, self.uh, self.uh_p, self.uh_pp)


class Spacings(NamedTuple):
    h_mm: float
    h_m: float
    h_p: float
    h_pp: float
    sigma: float
    tau: float


class InvariantVector(NamedTuple):
    I1: float
    I2: float
    I3: float
    I4: float
    I5: float
    I6: float
    I7: float
    I8: float
    I9: float
    I10: float


def spacings(s: Stencil) -> Spacings:
    """Spatial steps of the upper layer, node shift ``sigma`` and time step ``tau``.

    Raises
    ------
    NonMonotoneStencil
        If any upper-layer spacing is not strictly positive.
    NonPositiveTimeStep
        If ``th <= t``.
    """
    h_mm = np.subtract(s.xh_m, s.xh_mm)
    h_m = np.subtract(s.xh, s.xh_m)
    h_p = np.subtract(s.xh_p, s.xh)
    h_pp = np.subtract(s.xh_pp, s.xh_p)
    if not (np.all(h_mm > 0) and np.all(h_m > 0) and np.all(h_p > 0) and np.all(h_pp > 0)):
        raise NonMonotoneStencil("upper-layer abscissas must be strictly increasing")
    tau = np.subtract(s.th, s.t)
    if not np.all(tau > 0):
        raise NonPositiveTimeStep("upper time must exceed lower time")
    sigma = np.subtract(s.xh, s.x)
    return Spacings(h_mm, h_m, h_p, h_pp, sigma, tau)


def discrete_derivatives(s: Stencil):
    """One-sided upper-layer slopes ``(ux_mm, ux_m, ux_p, ux_pp)``."""
    sp = spacings(s)
    ux_mm = (s.uh_m - s.uh_mm) / sp.h_mm
    ux_m = (s.uh - s.uh_m) / sp.h_m
    ux_p = (s.uh_p - s.uh) / sp.h_p
    ux_pp = (s.uh_pp - s.uh_p) / sp.h_pp
    return ux_mm, ux_m, ux_p, ux_pp


def i6_printed(s: Stencil):
    """The sixth invariant with ``uh_p`` in place of ``uh``: ``h_p**2 * (uh_p - u)``.

    Invariant as well, but expanding the invariant-form scheme with it does
    not give the centered uniform scheme; kept for comparison only.
    """
    sp = spacings(s)
    return sp.h_p**2 * (s.uh_p - s.u)


def invariants(s: Stencil, printed_i6: bool = False) -> InvariantVector:
    """The ten elementary strong invariants of the KdV symmetry group.

    ``I6`` is ``h_p**2 * (uh - u)`` unless ``printed_i6`` is set, in which
    case :func:`i6_printed` is used instead.
    """
    sp = spacings(s)
    ux_mm, ux_m, ux_p, ux_pp = discrete_derivatives(s)
    tau = sp.tau
    if printed_i6:
        i6 = sp.h_p**2 * (s.uh_p - s.u)
    else:
        i6 = sp.h_p**2 * (s.uh - s.u)
    return InvariantVector(
        I1=sp.h_p / sp.h_m,
        I2=sp.h_pp / sp.h_p,
        I3=sp.h_m / sp.h_mm,
        I4=sp.h_p**3 / tau,
        I5=(sp.sigma + tau * s.u) / sp.h_p,
        I6=i6,
        I7=tau * ux_mm,
        I8=tau * ux_m,
        I9=tau * ux_p,
        I10=tau * ux_pp,
    )


def random_stencils(rng: np.random.Generator, n: int, uniform: bool = False) -> Stencil:
    """A batch of ``n`` generic stencils with array-valued fields.

    Spacings are drawn from [0.1, 1], the time step from [0.05, 1], and all
    positions and solution values from O(1) ranges. With ``uniform=True`` the
    four upper spacings are equal.
    """
    x = rng.uniform(-2, 2, n)
    t = rng.uniform(-2, 2, n)
    u = rng.uniform(-2, 2, n)
    tau = rng.uniform(0.05, 1.0, n)
    xc = x + rng.uniform(-1, 1, n)
    if uniform:
        h = rng.uniform(0.1, 1.0, n)
        xs = [xc + k * h for k in (-2, -1, 0, 1, 2)]
    else:
        h = rng.uniform(0.1, 1.0, (4, n))
        xs = [xc - h[0] - h[1], xc - h[1], xc, xc + h[2], xc + h[2] + h[3]]
    us = rng.uniform(-2, 2, (5, n))
    return Stencil(x, t, u, *xs, t + tau, *us)


def take(s: Stencil, i) -> Stencil:
    """Select stencil ``i`` (index or mask) from a batch."""
    return Stencil(*(np.asarray(c)[i] for c in s))
