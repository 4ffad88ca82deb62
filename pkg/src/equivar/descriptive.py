"""Grouped-sample summaries and the shared moment estimators.

The moment machinery here feeds both the kurtosis-adjusted log-variance
test and the box-type bootstrap test: a pooled fourth central moment, a
pooled variance, per-group estimates of var(ln s_i^2), and the
standardized log-variance contrasts built from them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateDataError, NumericError

__all__ = [
    "GroupedSample",
    "GroupSummary",
    "MomentEstimates",
    "LogVarianceContrasts",
    "summarize",
    "estimate_moments",
    "log_variance_contrasts",
]


class GroupedSample:
    """Two or more groups of real observations, the input to every test.

    Each group must hold at least two finite values so that its sample
    variance exists.  ``k`` is one less than the number of groups, i.e. the
    numerator degrees of freedom of the classical one-way comparisons.
    """

    __slots__ = ("groups", "sizes", "n", "k")

    def __init__(self, groups):
        gs = tuple(np.asarray(g, dtype=float).ravel() for g in groups)
        if len(gs) < 2:
            raise DegenerateDataError(f"need at least two groups, got {len(gs)}")
        for i, g in enumerate(gs):
            if g.size < 2:
                raise DegenerateDataError(f"group {i} has {g.size} observation(s); need at least two")
            if not np.all(np.isfinite(g)):
                raise DegenerateDataError(f"group {i} contains non-finite values")
        self.groups = gs
        self.sizes = tuple(int(g.size) for g in gs)
        self.n = int(sum(self.sizes))
        self.k = len(gs) - 1

    def __len__(self) -> int:
        return len(self.groups)

    def __repr__(self) -> str:
        return f"GroupedSample(sizes={self.sizes})"


@dataclass
class GroupSummary:
    s2: np.ndarray        # per-group sample variance, n_i - 1 divisor
    mean: np.ndarray
    median: np.ndarray    # even n: midpoint of the two central order statistics
    within_ss: float      # sum over groups of (n_i - 1) * s_i^2


@dataclass
class MomentEstimates:
    mu4: float                # pooled fourth central moment about the group means
    sigma2: float             # pooled variance, n divisor
    var_log_s2: np.ndarray    # estimated var(ln s_i^2) per group
    harmonic_n: float         # harmonic mean of the group sizes


@dataclass
class LogVarianceContrasts:
    contrast: np.ndarray   # ln s_i^2 centered at the mean log variance; sums to 0
    se: np.ndarray         # standard error of each contrast
    t: np.ndarray          # standardized contrasts, contrast / se


def summarize(data: GroupedSample) -> GroupSummary:
    """Per-group means, medians, and variances plus the pooled within sum of squares."""
    s2 = np.array([g.var(ddof=1) for g in data.groups])
    mean = np.array([g.mean() for g in data.groups])
    median = np.array([np.median(g) for g in data.groups])
    within = float(((np.asarray(data.sizes) - 1) * s2).sum())
    return GroupSummary(s2, mean, median, within)


def estimate_moments(data: GroupedSample, use_harmonic: bool = False) -> MomentEstimates:
    """Pooled moment estimates and the variance of each log sample variance.

    var(ln s_i^2) is estimated as [mu4/sigma2^2 - (m-3)/m] / (m-1) where m
    is the harmonic mean group size when ``use_harmonic`` is set (the
    convention of the kurtosis-adjusted chi-square test, making the
    estimate identical across groups) and the group's own size otherwise.
    """
    sizes = np.asarray(data.sizes, dtype=float)
    ss2 = 0.0
    ss4 = 0.0
    for g in data.groups:
        dev = g - g.mean()
        d2 = dev * dev
        ss2 += float(d2.sum())
        ss4 += float((d2 * d2).sum())
    sigma2 = ss2 / data.n
    mu4 = ss4 / data.n
    if sigma2 <= 0.0:
        raise DegenerateDataError("every group is constant; pooled variance is zero")
    kurt = mu4 / (sigma2 * sigma2)
    harmonic_n = len(data) / float((1.0 / sizes).sum())
    m = np.full(len(data), harmonic_n) if use_harmonic else sizes
    var_log_s2 = (kurt - (m - 3.0) / m) / (m - 1.0)
    if not np.all(var_log_s2 > 0.0):
        # unreachable for kurt >= 1, which Cauchy-Schwarz guarantees; kept as a tripwire
        raise NumericError(
            f"nonpositive var(ln s^2) estimate: kurtosis ratio {kurt:.6g}, sizes {m.tolist()}"
        )
    return MomentEstimates(mu4, sigma2, var_log_s2, harmonic_n)


def log_variance_contrasts(data: GroupedSample) -> LogVarianceContrasts:
    """Centered log sample variances, their standard errors, and t ratios.

    The contrast for group i is ln s_i^2 minus the mean log variance
    (equivalently, the log of s_i^2 over the geometric mean variance).
    Standard errors combine the per-group var(ln s_i^2) estimates with the
    weights induced by the centering.
    """
    s2 = np.array([g.var(ddof=1) for g in data.groups])
    bad = np.flatnonzero(s2 <= 0.0)
    if bad.size:
        raise DegenerateDataError(f"group {bad[0]} has zero sample variance; log variance undefined")
    moments = estimate_moments(data, use_harmonic=False)
    return _contrasts_from(s2, moments.var_log_s2)


def _contrasts_from(s2: np.ndarray, var_log_s2: np.ndarray) -> LogVarianceContrasts:
    """Assemble contrasts and standard errors from precomputed variance estimates."""
    groups = len(s2)
    log_s2 = np.log(s2)
    contrast = log_s2 - log_s2.mean()
    se = np.sqrt((1.0 - 2.0 / groups) * var_log_s2 + var_log_s2.sum() / groups**2)
    return LogVarianceContrasts(contrast, se, contrast / se)
