"""Exception types shared across the package."""


class HartogsError(Exception):
    """Base class for all package-specific errors."""


class BoundaryViolationError(HartogsError):
    """A point (or a finite-difference stencil around it) left the domain."""

    def __init__(self, message, margin=None):
        super().__init__(message)
        self.margin = margin


class CapabilityError(HartogsError):
    """The request is outside what the implementation supports."""


class ConfigError(HartogsError):
    """A domain configuration file could not be parsed."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class NotPositiveDefiniteError(HartogsError):
    """A linear solve requires a positive definite matrix."""

    def __init__(self, message, min_eigenvalue=None):
        super().__init__(message)
        self.min_eigenvalue = min_eigenvalue


class EigenSolverError(HartogsError):
    """The symmetric eigenvalue solver failed to converge."""

    def __init__(self, message, dim=None):
        super().__init__(message)
        self.dim = dim
