"""Exception types shared across the package."""


class CyclicBoundsError(Exception):
    """Base class for every error raised by this library."""


class WindowError(CyclicBoundsError, ValueError):
    """Window length is outside the valid range 1..n."""


class DomainError(CyclicBoundsError, ValueError):
    """Input vector violates a positivity requirement.

    Messages report 1-based indices.
    """


class ShapeError(CyclicBoundsError, ValueError):
    """Vector length does not satisfy a required divisibility."""


class DegenerateFamilyError(CyclicBoundsError, ValueError):
    """Tangent construction requested for a family index without a common tangent."""


class NoBracketError(CyclicBoundsError, RuntimeError):
    """Root scan found no sign change inside the search window."""


class AmbiguousBracketError(CyclicBoundsError, RuntimeError):
    """Root scan found more than one sign change; refusing to pick one silently."""


class SolverError(CyclicBoundsError, RuntimeError):
    """A solver finished but its solution failed validation."""


class CapacityError(CyclicBoundsError, RuntimeError):
    """Requested construction exceeds a configured or physical size cap."""

    def __init__(self, message: str, required_n: int | None = None):
        super().__init__(message)
        self.required_n = required_n


class InvalidSpecError(CyclicBoundsError, ValueError):
    """Witness plan violates one of its invariants."""
