"""Exception taxonomy.

Two families matter downstream: refusals (inputs outside a documented
validity region -- we do not extrapolate) and non-convergence (a stated
numerical tolerance could not be certified).  The CLI maps them to
distinct exit codes.
"""


class LoopSpecError(Exception):
    """Base class for all package errors."""


class PreconditionError(LoopSpecError):
    """Input lies outside the documented validity region; refused."""


class ConvergenceError(LoopSpecError):
    """A numerical tolerance could not be certified."""


class CurveError(PreconditionError):
    """Invalid or inconsistent loop data."""


class ClosureError(CurveError):
    """Reconstructed curve does not close up."""

    def __init__(self, message, residual):
        super().__init__(message)
        self.residual = residual


class OrientationError(CurveError):
    """Loop is not counter-clockwise (never silently flipped)."""


class SelfIntersectionError(CurveError):
    """Input polygon is not simple."""


class EllipticityError(PreconditionError):
    """A bound operator lost its positive kinetic coefficient."""


class NoBoundStateError(LoopSpecError):
    """No negative eigenvalue exists for the requested sector."""


class CrossingWarning(UserWarning):
    """Flux derivative taken too close to an eigenvalue crossing."""
