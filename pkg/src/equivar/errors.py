"""Exception types shared across the package."""


class DegenerateDataError(ValueError):
    """The data cannot support the requested statistic.

    Raised for structural problems such as groups with fewer than two
    observations, zero sample variances feeding a log, or residual pools
    with no variation.
    """


class NumericError(RuntimeError):
    """An iterative numeric routine failed (non-convergence, exhausted redraws)."""
