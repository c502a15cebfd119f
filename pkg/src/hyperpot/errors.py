"""Exception types shared across the package."""


class HyperpotError(Exception):
    """Base class for all package-specific errors."""


class SingularPointError(HyperpotError, ValueError):
    """Evaluation requested at (or too close to) a singular point."""


class DomainError(HyperpotError, ValueError):
    """A coordinate or interval lies outside the model's valid domain."""


class BranchCutError(HyperpotError, ValueError):
    """Evaluation would land on (or too close to) a branch cut, or a
    connection formula degenerates into a logarithmic limit."""


class PoleError(HyperpotError, ValueError):
    """A gamma-function pole makes the requested value undefined."""


class ConvergenceError(HyperpotError, RuntimeError):
    """A series failed to converge within the hard iteration cap."""


class IllConditionedError(HyperpotError, RuntimeError):
    """A linear system was too ill-conditioned to solve reliably."""


class SymmetryCenterError(HyperpotError, RuntimeError):
    """No symmetry center brings the PT defect under tolerance.

    Carries the scanned centers and their defect profiles so the failure
    is reportable as a finding rather than a bare error.
    """

    def __init__(self, message, centers=None, defects=None):
        super().__init__(message)
        self.centers = centers
        self.defects = defects
