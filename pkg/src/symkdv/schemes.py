"""Residuals of the invariant KdV schemes and of the standard implicit baseline.

All residuals use the sign convention ``time difference - right-hand side``
and, like :mod:`symkdv.stencil`, accept batched (array-valued) stencils.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .errors import LatticeConstraintViolated, NonZeroSigma, NotUniformLayer
from .stencil import InvariantVector, Stencil, discrete_derivatives, spacings

UNIFORM_RTOL = 1e-12
LATTICE_RTOL = 1e-12


class SchemeKind(enum.Enum):
    UNIFORM_EVOLUTIVE = "uniform-evolutive"
    UNIFORM_ORTHOGONAL = "uniform-orthogonal"
    LAGRANGIAN = "lagrangian"


def residual_invariant_form(I: InvariantVector):
    """Invariant form of the uniform-layer scheme.

    ``I6 - (1/2) * [(I6 + I5*I4)*(I9 + I8) + (I10 - I9) - (I8 - I7)]``; on a
    uniform layer this equals ``h**2 * tau * residual_uniform``.
    """
    if np.any(np.abs(np.asarray(I.I1) - 1.0) > UNIFORM_RTOL):
        raise NotUniformLayer("I1 must equal 1 on a uniform layer")
    rhs = 0.5 * ((I.I6 + I.I5 * I.I4) * (I.I9 + I.I8) + (I.I10 - I.I9) - (I.I8 - I.I7))
    return I.I6 - rhs


def _uniform_step(s: Stencil):
    sp = spacings(s)
    h = (np.subtract(s.xh_pp, s.xh_mm)) / 4.0
    dev = np.max(np.abs([sp.h_mm - h, sp.h_m - h, sp.h_p - h, sp.h_pp - h]), axis=0)
    # spacings of representable abscissas can only be equal up to their ulp
    xmax = np.max(np.abs([s.xh_mm, s.xh_pp]), axis=0)
    if np.any(dev > UNIFORM_RTOL * h + 8 * np.finfo(float).eps * xmax):
        raise NotUniformLayer("upper-layer spacings are not all equal")
    return sp, h


def residual_uniform(s: Stencil, printed_i6: bool = False):
    """Centered implicit scheme on a uniform upper layer with node shift ``sigma``.

    ``(uh - u)/tau - uh*D1 - D3 - (sigma/tau)*D1`` where ``D1`` is the centered
    first difference and ``D3`` the five-point third difference of the upper
    layer. ``printed_i6`` swaps ``uh`` for ``uh_p`` in the time difference and
    convective coefficient.
    """
    sp, h = _uniform_step(s)
    d1 = (s.uh_p - s.uh_m) / (2 * h)
    d3 = (s.uh_pp - 2 * s.uh_p + 2 * s.uh_m - s.uh_mm) / (2 * h**3)
    lead = s.uh_p if printed_i6 else s.uh
    return (lead - s.u) / sp.tau - lead * d1 - d3 - sp.sigma / sp.tau * d1


def uniform_term_scale(s: Stencil):
    """Sum of the magnitudes of the terms of :func:`residual_uniform`.

    Sets the attainable floating-point accuracy of the residual, which is a
    difference of these terms.
    """
    sp, h = _uniform_step(s)
    d1 = (s.uh_p - s.uh_m) / (2 * h)
    d3 = (np.abs(s.uh_pp) + 2 * np.abs(s.uh_p) + 2 * np.abs(s.uh_m) + np.abs(s.uh_mm)) / (2 * h**3)
    return (np.abs(s.uh) + np.abs(s.u)) / sp.tau + np.abs(s.uh * d1) + d3 \
        + np.abs(sp.sigma / sp.tau * d1)


def residual_standard(s: Stencil):
    """Standard implicit discretization: :func:`residual_uniform` with ``sigma = 0``."""
    sigma = np.subtract(s.xh, s.x)
    if np.any(np.abs(sigma) > 1e-12):
        raise NonZeroSigma("orthogonal lattice requires xh == x")
    sp, h = _uniform_step(s)
    d1 = (s.uh_p - s.uh_m) / (2 * h)
    d3 = (s.uh_pp - 2 * s.uh_p + 2 * s.uh_m - s.uh_mm) / (2 * h**3)
    return (s.uh - s.u) / sp.tau - s.uh * d1 - d3


def lagrangian_rhs(s: Stencil):
    """Non-uniform third difference of the upper layer (linear in the upper values)."""
    sp = spacings(s)
    ux_mm, ux_m, ux_p, ux_pp = discrete_derivatives(s)
    weight = 6.0 / (sp.h_pp + 2 * sp.h_p + 2 * sp.h_m + sp.h_mm)
    return weight * ((ux_pp - ux_p) / (sp.h_pp + sp.h_p) - (ux_m - ux_mm) / (sp.h_mm + sp.h_m))


def residual_lagrangian(s: Stencil):
    """Solution-dependent lattice scheme ``(uh - u)/tau - D3_nonuniform``.

    Requires the lattice equation ``sigma = -tau*u`` to hold.
    """
    sp = spacings(s)
    if np.any(np.abs(sp.sigma + sp.tau * s.u) > LATTICE_RTOL * (1 + np.abs(sp.sigma))):
        raise LatticeConstraintViolated("sigma != -tau*u")
    return (s.uh - s.u) / sp.tau - lagrangian_rhs(s)


# --------------------------------------------------------------------------
# consistency with the continuous equation


@dataclass(frozen=True)
class SmoothField:
    """A smooth function with the derivatives needed for the KdV residual."""

    u: Callable
    u_t: Callable
    u_x: Callable
    u_xxx: Callable

    def kdv_residual(self, x, t):
        return self.u_t(x, t) - self.u(x, t) * self.u_x(x, t) - self.u_xxx(x, t)


def sine_field() -> SmoothField:
    """``u = sin(x) exp(-t)``; not a KdV solution, used as a manufactured field."""
    return SmoothField(
        u=lambda x, t: np.sin(x) * np.exp(-t),
        u_t=lambda x, t: -np.sin(x) * np.exp(-t),
        u_x=lambda x, t: np.cos(x) * np.exp(-t),
        u_xxx=lambda x, t: -np.cos(x) * np.exp(-t),
    )


def similarity_field() -> SmoothField:
    """The exact KdV solution ``u = -x/t``."""
    return SmoothField(
        u=lambda x, t: -x / t,
        u_t=lambda x, t: x / t**2,
        u_x=lambda x, t: -1.0 / t + 0 * x,
        u_xxx=lambda x, t: 0 * x,
    )


def default_shift(kind: SchemeKind, field: SmoothField) -> Callable:
    """Node shift ``sigma(x, t, tau, h)`` matching the lattice rule of ``kind``."""
    if kind is SchemeKind.UNIFORM_EVOLUTIVE:
        return lambda x, t, tau, h: tau * x / t
    if kind is SchemeKind.UNIFORM_ORTHOGONAL:
        return lambda x, t, tau, h: 0.0 * x
    return lambda x, t, tau, h: -tau * field.u(x, t)


def sample_stencil(field: SmoothField, x, t, tau, h, sigma) -> Stencil:
    """Sample ``field`` on the stencil with lower point ``(x, t)`` and uniform upper layer."""
    th = t + tau
    xc = x + sigma
    xs = [xc + k * h for k in (-2, -1, 0, 1, 2)]
    return Stencil(x, t, field.u(x, t), *xs, th, *(field.u(xk, th) for xk in xs))


def scheme_residual(kind: SchemeKind, s: Stencil):
    if kind is SchemeKind.LAGRANGIAN:
        return residual_lagrangian(s)
    if kind is SchemeKind.UNIFORM_ORTHOGONAL:
        return residual_standard(s)
    return residual_uniform(s)


class ConvergenceReport(NamedTuple):
    status: str  # "exact", "converges" or "diverges"
    slope: float
    hs: np.ndarray
    errors: np.ndarray


def continuum_limit_check(
    kind: SchemeKind,
    field: SmoothField,
    hs: Sequence[float] = (0.2, 0.1, 0.05, 0.025),
    x: float = 0.3,
    t: float = 1.0,
    tau_factor: float = 1.0,
    shift: Callable | None = None,
    exact_atol: float = 1e-10,
) -> ConvergenceReport:
    """Local truncation error of a scheme against the KdV residual of ``field``.

    For each spacing ``h`` the time step is ``tau_factor * h**3``; the scheme
    residual on the sampled stencil is compared with the continuous residual
    at the upper centre point. The log-log slope of the discrepancy against
    ``h`` must be at least 1 for convergence. ``shift`` overrides the node
    shift; passing one with ``sigma/tau`` unbounded as ``tau -> 0`` reproduces
    the divergent case.
    """
    shift = shift or default_shift(kind, field)
    hs = np.asarray(hs, dtype=float)
    errs = []
    for h in hs:
        tau = tau_factor * h**3
        sigma = shift(x, t, tau, h)
        s = sample_stencil(field, x, t, tau, h, sigma)
        r = scheme_residual(kind, s)
        errs.append(abs(r - field.kdv_residual(s.xh, s.th)))
    errs = np.array(errs)
    if np.all(errs <= exact_atol):
        return ConvergenceReport("exact", float("nan"), hs, errs)
    slope = float(np.polyfit(np.log(hs), np.log(np.maximum(errs, 1e-300)), 1)[0])
    return ConvergenceReport("converges" if slope >= 1 else "diverges", slope, hs, errs)
