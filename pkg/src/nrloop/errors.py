"""Exception types shared across the package."""


class SingularMatrixError(ArithmeticError):
    """Raised when Gaussian elimination hits a pivot below the singularity
    threshold.  ``pivot`` carries the offending pivot magnitude."""

    def __init__(self, pivot, message=None):
        self.pivot = float(pivot)
        super().__init__(message or f"matrix is singular or near-singular (pivot magnitude {self.pivot:.3e})")


class ConvergenceError(RuntimeError):
    """Raised when an iterative kernel exceeds its iteration cap."""


class UnstableSystemError(ValueError):
    """Raised when an operation requires a dynamically stable system but the
    drift matrix has an eigenvalue with non-negative real part."""


class FrequencyCollisionError(ValueError):
    """Raised by the pump-frequency planner when a pump lands exactly on a
    spurious process or mode frequency.  ``collisions`` lists the offending
    (pump label, other label, frequency) triples."""

    def __init__(self, collisions):
        self.collisions = list(collisions)
        pairs = "; ".join(f"{a} collides with {b} at {f!r}" for a, b, f in self.collisions)
        super().__init__(f"degenerate frequency plan: {pairs}")
