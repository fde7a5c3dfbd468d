"""Exceptions shared across the package."""


class ConvergenceError(RuntimeError):
    """Eigensolver failed: iteration cap hit or residuals above tolerance."""


class ExceptionalPointError(RuntimeError):
    """Matrix is defective or nearly so (eigenvectors coalesce)."""


class BrokenPhaseError(RuntimeError):
    """Operation requires the unbroken PT phase."""


class CollinearityError(RuntimeError):
    """Vector is not an eigenvector of the PT operation up to a phase."""
