"""Exception and warning types raised across the package."""


class SchemeError(Exception):
    """Base class for every error raised by symkdv."""


class NonMonotoneStencil(SchemeError, ValueError):
    """A stencil or layer has a non-positive spatial spacing."""


class NonPositiveTimeStep(SchemeError, ValueError):
    pass


class NotUniformLayer(SchemeError, ValueError):
    """A uniform-step scheme was evaluated on a non-uniform upper layer."""


class LatticeConstraintViolated(SchemeError, ValueError):
    """The Lagrangian lattice equation x_hat = x - tau*u does not hold."""


class NonZeroSigma(SchemeError, ValueError):
    pass


class TooFewPoints(SchemeError, ValueError):
    pass


class SingularTime(SchemeError, ValueError):
    """Evaluation at, or a time step crossing, t = 0."""


class MeshTangled(SchemeError, RuntimeError):
    """Solution-dependent node motion produced out-of-order abscissas."""


class SingularSystem(SchemeError, RuntimeError):
    pass


class NewtonDiverged(SchemeError, RuntimeError):
    pass


class RankDeficientWarning(UserWarning):
    """The symmetry matrix has rank below the number of generators."""
