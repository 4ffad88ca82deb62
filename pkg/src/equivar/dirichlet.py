"""Dirichlet sampling and normal-theory calibration of the acceptance box.

Under normality with equal variances, the vector of normalized weighted
sample variances is Dirichlet with shapes (n_i - 1) / 2.  The zero-sum log
contrasts of that vector drive an exact box-type acceptance region; the
half-width that gives the region 1 - alpha coverage is calibrated here by
Monte Carlo.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NumericError

__all__ = [
    "DirichletParams",
    "NormalTheoryBox",
    "sample_dirichlet",
    "log_contrast",
    "calibrate_box",
]


@dataclass(frozen=True)
class DirichletParams:
    """Shape parameters, one per group."""

    nu: tuple[float, ...]

    def __post_init__(self):
        if len(self.nu) < 2:
            raise ValueError("need at least two shape parameters")
        if any(v <= 0.0 for v in self.nu):
            raise ValueError(f"shape parameters must be positive, got {self.nu}")

    @classmethod
    def from_group_sizes(cls, sizes) -> "DirichletParams":
        """Shapes (n_i - 1) / 2 for normal groups of the given sizes."""
        sizes = [int(s) for s in sizes]
        if any(s < 2 for s in sizes):
            raise ValueError(f"group sizes must be at least 2, got {sizes}")
        return cls(tuple((s - 1) / 2.0 for s in sizes))

    @property
    def total(self) -> float:
        return float(sum(self.nu))


def sample_dirichlet(params: DirichletParams, rng: np.random.Generator, size: int | None = None):
    """Draw from the Dirichlet distribution by normalizing Gamma(nu_i, 1) variates.

    Returns one simplex vector, or a (size, groups) matrix of them when
    ``size`` is given.
    """
    shape = np.asarray(params.nu)
    if size is None:
        g = rng.standard_gamma(shape)
        return g / g.sum()
    g = rng.standard_gamma(np.broadcast_to(shape, (size, shape.size)))
    return g / g.sum(axis=1, keepdims=True)


def log_contrast(x) -> np.ndarray:
    """Zero-sum log contrasts ln x_i - mean_j ln x_j of positive vectors.

    Operates on the last axis, so a batch of simplex draws maps to a batch
    of contrast vectors.
    """
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0.0):
        raise ValueError("log contrasts require strictly positive components")
    lx = np.log(x)
    return lx - lx.mean(axis=-1, keepdims=True)


@dataclass
class NormalTheoryBox:
    mean: np.ndarray          # Monte Carlo means of the contrast coordinates
    sd: np.ndarray            # Monte Carlo standard deviations
    half_width: float         # calibrated box half-width in standardized units
    shape_offset: np.ndarray  # ln(nu_i / geometric mean nu_j), the contrast offsets
    coverage: float           # achieved Monte Carlo coverage at half_width
    half_width_se: float      # spacing-based standard error of the quantile
    draws: int


def calibrate_box(
    params: DirichletParams, alpha: float, draws: int, rng: np.random.Generator
) -> NormalTheoryBox:
    """Monte Carlo calibration of the exact-normal acceptance box.

    Draws log contrasts of Dirichlet samples, standardizes each coordinate
    by its Monte Carlo mean and standard deviation, and returns the
    empirical 1 - alpha quantile of the max absolute standardized
    coordinate: the smallest half-width whose box reaches the target
    coverage.
    """
    if draws < 1000:
        raise ValueError(f"need at least 1000 draws for calibration, got {draws}")
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    w = log_contrast(sample_dirichlet(params, rng, size=draws))
    mean = w.mean(axis=0)
    sd = w.std(axis=0, ddof=1)
    if not np.all(np.isfinite(sd)) or np.any(sd <= 0.0):
        raise NumericError(f"degenerate contrast spread in calibration: {sd}")
    row_max = np.abs((w - mean) / sd).max(axis=1)
    row_max.sort()
    rank = math.ceil(draws * (1.0 - alpha))  # 1-based order statistic
    c = float(row_max[rank - 1])
    coverage = float(np.searchsorted(row_max, c, side="right") / draws)
    # Quantile standard error from the spacing of nearby order statistics.
    k = max(1, round(math.sqrt(draws)))
    lo_i = max(0, rank - 1 - k)
    hi_i = min(draws - 1, rank - 1 + k)
    gap = float(row_max[hi_i] - row_max[lo_i])
    density = (hi_i - lo_i) / draws / gap if gap > 0.0 else math.inf
    se = math.sqrt(alpha * (1.0 - alpha) / draws) / density if math.isfinite(density) else 0.0
    nu = np.asarray(params.nu)
    shape_offset = np.log(nu) - np.log(nu).mean()
    return NormalTheoryBox(mean, sd, c, shape_offset, coverage, se, draws)
