"""Exception types shared across the package."""


class NonFaithfulStateError(ValueError):
    """State has a symplectic eigenvalue at or below 1; arcoth diverges."""


class UnphysicalSimulationError(ValueError):
    """Teleportation gain/resource pair does not produce a valid channel."""


class DegenerateMeasurementError(ValueError):
    """Homodyne conditioning block is singular below threshold."""


class BracketNotFoundError(RuntimeError):
    """Root bracketing scan failed to locate a sign change."""

    def __init__(self, message, scanned=None):
        super().__init__(message)
        self.scanned = scanned


class TruncationInsufficientError(ValueError):
    """Fock-space truncation leaves too much tail mass."""

    def __init__(self, message, suggested_n_max=None):
        super().__init__(message)
        self.suggested_n_max = suggested_n_max
