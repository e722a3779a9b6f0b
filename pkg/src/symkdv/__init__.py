"""Symmetry-preserving implicit finite-difference schemes for the KdV equation."""

from .errors import (
    LatticeConstraintViolated, MeshTangled, NewtonDiverged, NonMonotoneStencil,
    NonPositiveTimeStep, NonZeroSigma, NotUniformLayer, RankDeficientWarning, SchemeError,
    SingularSystem, SingularTime, TooFewPoints,
)
from .experiments import ErrorReport, RunSpec, exact_solution, linf_error, run, sweep
from .lattice import (
    Mesh, advance_evolutive, advance_lagrangian, advance_orthogonal, build_layer,
    sigma_over_tau_bound,
)
from .schemes import (
    SchemeKind, continuum_limit_check, residual_invariant_form, residual_lagrangian,
    residual_standard, residual_uniform,
)
from .solver import (
    BandedSystem, ExactBoundary, StepConfig, Trajectory, integrate, solve_banded, step,
)
from .stencil import (
    InvariantVector, Spacings, Stencil, discrete_derivatives, invariants, random_stencils,
    spacings, take,
)
from .symmetry import (
    Generator, GroupElement, apply_group, generator_at, invariant_count, prolonged_action,
    strong_invariance_defect, transform_stencil, weak_invariance_check_flat_layers, z_matrix,
)

__version__ = "0.1.0"
