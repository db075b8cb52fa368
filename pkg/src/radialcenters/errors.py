"""Exception types shared across the package."""


class RadialCentersError(Exception):
    """Base class for all domain errors raised by this package."""


class InvalidBody(RadialCentersError, ValueError):
    """Body constructor rejected its input (degenerate, self-intersecting, ...)."""


class NotStarShaped(RadialCentersError):
    """A ray from the base point crosses the boundary again beyond the first exit."""


class BoundaryPoint(RadialCentersError):
    """Evaluation point is (numerically) on the boundary where the quantity is undefined."""


class ToleranceNotMet(RadialCentersError):
    """Adaptive quadrature exhausted its subdivision budget.

    Carries the best estimate and the achieved error bound so callers can
    decide whether to accept the result anyway.
    """

    def __init__(self, estimate, error_estimate, message="quadrature tolerance not met"):
        super().__init__(f"{message}: estimate={estimate!r}, error~{error_estimate:.3e}")
        self.estimate = estimate
        self.error_estimate = error_estimate


class NoInteriorSeed(RadialCentersError):
    """No interior starting point could be found for the optimizer."""


class NonConvergence(RadialCentersError):
    """Iteration budget exhausted before reaching the convergence tolerance."""

    def __init__(self, point, grad_norm, iterations, message="optimizer did not converge"):
        super().__init__(f"{message}: |grad|={grad_norm:.3e} after {iterations} iterations")
        self.point = point
        self.grad_norm = grad_norm
        self.iterations = iterations


class NotInterior(RadialCentersError):
    """Query point is required to lie strictly inside the body."""


class ContinuumContact(RadialCentersError):
    """The nearest-boundary contact set is a continuum (curved boundary), not finitely many points."""


class TheoremViolation(RadialCentersError):
    """A balanced polygon failed its geometric characterization; indicates a tolerance bug."""


class ConstructionFailed(RadialCentersError):
    """The balanced-body generator could not produce a convex instance within its retry budget."""


class NonPositiveValue(RadialCentersError):
    """A positivity precondition failed (power-concavity checks need positive samples)."""
