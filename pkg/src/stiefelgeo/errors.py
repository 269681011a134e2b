"""Exception types shared across the library."""


class StiefelGeoError(Exception):
    """Base class for every error raised by this package."""


class ParseError(StiefelGeoError):
    """A file or JSON payload does not have the expected structure."""


class InvariantViolation(StiefelGeoError):
    """A domain object failed its defining numerical invariant."""


class ShapeMismatch(StiefelGeoError):
    """Operands have incompatible dimensions."""


class RankDeficient(StiefelGeoError):
    """Input matrix does not have full column rank."""


class ConvergenceFailure(StiefelGeoError):
    """An iterative factorization exceeded its iteration budget."""


class TooFewSamples(StiefelGeoError):
    """A sampled path has too few points for finite differencing."""


class AmbientTooSmall(StiefelGeoError):
    """Ambient dimension below 2p, no room for an independent perturbation."""


class NotAnIsometry(StiefelGeoError):
    """Embedding matrix does not have orthonormal columns."""


class NoConvergence(StiefelGeoError):
    """The shooting solver found no velocity meeting the residual tolerance."""

    def __init__(self, message, best_residual=None):
        super().__init__(message)
        self.best_residual = best_residual


class ResolutionTooCoarse(StiefelGeoError):
    """Consecutive path samples are too far apart to integrate reliably."""


class OrientedUnsupported(StiefelGeoError):
    """Operation is only defined for unoriented subspaces."""


class OrientationMismatch(StiefelGeoError):
    """Operands carry different orientation flags."""


class NotHorizontal(StiefelGeoError):
    """Tangent vector has a component along the fiber directions."""


class BranchFailure(StiefelGeoError):
    """Edge directions turn by half a turn or more; square-root branch is ambiguous."""


class PolishTooLarge(StiefelGeoError):
    """Orthonormality polish moved the frame further than discretization allows."""


class ResolutionMismatch(StiefelGeoError):
    """Curves must be sampled with the same number of points."""
