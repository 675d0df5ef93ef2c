"""Exception types shared across the package."""


class ValidityError(ValueError):
    """A perturbative or structural precondition is violated."""


class NonConvergenceError(RuntimeError):
    """A quadrature or optimization routine failed to reach its tolerance."""


class SupportEscapeError(ValueError):
    """A rescaled spectral profile leaks past a finite frequency grid."""


class GridMismatchError(ValueError):
    """Two discrete states live on different frequency grids."""


class ConfigError(ValueError):
    """A scenario file or preset could not be parsed or validated."""
