"""Four tests of the hypothesis that all group variances are equal.

* ``levene`` - one-way ANOVA on absolute deviations from group medians,
  referred to an F distribution.
* ``shoemaker`` - kurtosis-adjusted sum of squared centered log variances,
  referred to a chi-square distribution.
* ``bootstrap_levene`` - the Levene statistic calibrated by resampling a
  pooled residual pool, with smoothing for small groups; yields a p-value.
* ``box_test`` - standardized log-variance contrasts checked against a
  box-type acceptance region whose half-width is calibrated by a
  within-group bootstrap.

Each test consumes a :class:`~equivar.descriptive.GroupedSample` and a
level ``alpha`` and returns a :class:`TestResult`.  At the degenerate
boundary ``alpha = 1`` every test rejects unconditionally (the level-1
test has an empty acceptance region); the comparison rules below describe
levels in (0, 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .bootstrap import SMOOTH_FACTOR, center, search_critical
from .descriptive import GroupedSample, estimate_moments, log_variance_contrasts
from .errors import DegenerateDataError, NumericError
from .rng import stream
from .special import chi2_quantile, f_quantile

__all__ = [
    "LEVENE",
    "SHOEMAKER",
    "BOOTSTRAP_LEVENE",
    "BOX",
    "ALL_METHODS",
    "TestResult",
    "BootstrapConfig",
    "levene",
    "shoemaker",
    "bootstrap_levene",
    "box_test",
    "run_all",
]

LEVENE = "levene"
SHOEMAKER = "shoemaker"
BOOTSTRAP_LEVENE = "bootstrap_levene"
BOX = "box"
ALL_METHODS = (LEVENE, SHOEMAKER, BOOTSTRAP_LEVENE, BOX)

_MAX_REDRAWS = 100


@dataclass
class TestResult:
    method: str
    statistic: float | np.ndarray   # t vector for the box test, scalar otherwise
    reject: bool
    alpha: float
    critical_value: float | None = None
    p_value: float | None = None    # bootstrap Levene only
    df: tuple[float, ...] | None = None

    def as_dict(self) -> dict:
        """JSON-friendly representation (arrays become lists)."""
        stat = self.statistic
        if isinstance(stat, np.ndarray):
            stat = [float(v) for v in stat]
        else:
            stat = float(stat)
        return {
            "method": self.method,
            "statistic": stat,
            "reject": bool(self.reject),
            "alpha": float(self.alpha),
            "critical_value": None if self.critical_value is None else float(self.critical_value),
            "p_value": None if self.p_value is None else float(self.p_value),
            "df": None if self.df is None else [float(v) for v in self.df],
        }


@dataclass
class BootstrapConfig:
    """Shared knobs for the two bootstrap tests."""

    rng: np.random.Generator
    b: int = 500                 # bootstrap replicates
    pivot_variant: bool = False  # center box-test replicates at the observed t

    @classmethod
    def from_seed(cls, seed: int, b: int = 500, pivot_variant: bool = False) -> "BootstrapConfig":
        return cls(rng=stream(seed), b=b, pivot_variant=pivot_variant)


def _check_alpha(alpha: float) -> None:
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"alpha must lie in (0, 1], got {alpha}")


def _levene_stat(groups) -> tuple[float, int, int]:
    """Levene/Brown-Forsythe F ratio with median centering.

    Returns (statistic, df1, df2) with df2 the one-way ANOVA residual
    degrees of freedom n - (k + 1).  A zero between-group sum of squares
    short-circuits to statistic 0 even when the within sum is also zero;
    zero within-group variation with nonzero between variation is
    degenerate.
    """
    k = len(groups) - 1
    n = sum(g.size for g in groups)
    df2 = n - (k + 1)
    e = [np.abs(g - np.median(g)) for g in groups]
    group_means = np.array([x.mean() for x in e])
    grand = sum(float(x.sum()) for x in e) / n
    sizes = np.array([x.size for x in e], dtype=float)
    ssb = float((sizes * (group_means - grand) ** 2).sum())
    ssw = float(sum(((x - m) ** 2).sum() for x, m in zip(e, group_means)))
    if ssb == 0.0:
        return 0.0, k, df2
    if ssw == 0.0:
        raise DegenerateDataError(
            "absolute deviations from the group medians have no within-group variation"
        )
    return (ssb / k) / (ssw / df2), k, df2


def levene(data: GroupedSample, alpha: float = 0.05) -> TestResult:
    """Median-centered Levene test at level ``alpha``.

    Scale variables are |observation - group median|; their one-way ANOVA
    F ratio is compared with the F(k, n - k - 1) quantile at 1 - alpha.
    """
    _check_alpha(alpha)
    stat, df1, df2 = _levene_stat(data.groups)
    crit = 0.0 if alpha >= 1.0 else f_quantile(1.0 - alpha, df1, df2)
    reject = True if alpha >= 1.0 else stat > crit
    return TestResult(LEVENE, stat, reject, alpha, critical_value=crit, df=(df1, df2))


def shoemaker(data: GroupedSample, alpha: float = 0.05) -> TestResult:
    """Kurtosis-adjusted log-variance chi-square test at level ``alpha``.

    The statistic sums (ln s_i^2 - mean ln s^2)^2 / var(ln s_i^2), with
    var(ln s_i^2) estimated from the pooled kurtosis ratio and the harmonic
    mean group size, and is compared with the chi-square(k) quantile.
    """
    _check_alpha(alpha)
    s2 = np.array([g.var(ddof=1) for g in data.groups])
    bad = np.flatnonzero(s2 <= 0.0)
    if bad.size:
        raise DegenerateDataError(f"group {bad[0]} has zero sample variance; log variance undefined")
    moments = estimate_moments(data, use_harmonic=True)
    log_s2 = np.log(s2)
    centered = log_s2 - log_s2.mean()
    stat = float((centered**2 / moments.var_log_s2).sum())
    crit = 0.0 if alpha >= 1.0 else chi2_quantile(1.0 - alpha, data.k)
    reject = True if alpha >= 1.0 else stat > crit
    return TestResult(SHOEMAKER, stat, reject, alpha, critical_value=crit, df=(data.k,))


def _jitter_scale(data: GroupedSample) -> float:
    """Smoothing scale q: pooled standard deviation about the group means."""
    return math.sqrt(sum(float(((g - g.mean()) ** 2).sum()) for g in data.groups) / data.n)


def bootstrap_levene(data: GroupedSample, alpha: float, cfg: BootstrapConfig) -> TestResult:
    """Pooled-residual bootstrap of the Levene test; rejects when p < alpha.

    Residuals are observations minus their group median, pooled across
    groups.  Each round redraws n residuals with replacement and assigns
    them to groups in contiguous blocks; blocks for groups smaller than 10
    are smoothed with variance-preserving uniform jitter of scale q, the
    pooled standard deviation about group means.  The p-value is the
    fraction of rounds whose statistic exceeds the observed one.
    """
    _check_alpha(alpha)
    if cfg.b < 1:
        raise ValueError(f"bootstrap replicate count must be >= 1, got {cfg.b}")
    stat, df1, df2 = _levene_stat(data.groups)
    pool = np.concatenate([g - np.median(g) for g in data.groups])
    if np.all(pool == 0.0):
        raise DegenerateDataError("residual pool is identically zero")
    q = _jitter_scale(data)
    draws = pool[cfg.rng.integers(0, data.n, size=(cfg.b, data.n))]
    blocks = []
    start = 0
    for ni in data.sizes:
        block = draws[:, start:start + ni]
        if ni < 10:
            block = SMOOTH_FACTOR * (block + q * cfg.rng.uniform(-0.5, 0.5, block.shape))
        blocks.append(block)
        start += ni
    exceed = int((_levene_stat_rows(blocks) > stat).sum())
    p = exceed / cfg.b
    reject = True if alpha >= 1.0 else p < alpha
    return TestResult(BOOTSTRAP_LEVENE, stat, reject, alpha, p_value=p, df=(df1, df2))


def _levene_stat_rows(blocks) -> np.ndarray:
    """Levene statistics for stacked resamples; blocks[i] has shape (B, n_i).

    Rows with zero within-group variation map to +inf when the between
    term is positive and to 0 otherwise, so comparisons against the
    observed statistic stay well defined.
    """
    k = len(blocks) - 1
    n = sum(bl.shape[1] for bl in blocks)
    df2 = n - (k + 1)
    e = [np.abs(bl - np.median(bl, axis=1, keepdims=True)) for bl in blocks]
    means = [x.mean(axis=1) for x in e]
    grand = sum(x.sum(axis=1) for x in e) / n
    ssb = sum(x.shape[1] * (m - grand) ** 2 for x, m in zip(e, means))
    ssw = sum(((x - m[:, None]) ** 2).sum(axis=1) for x, m in zip(e, means))
    out = np.zeros_like(ssb)
    ok = ssw > 0.0
    out[ok] = (ssb[ok] / k) / (ssw[ok] / df2)
    out[~ok] = np.where(ssb[~ok] > 0.0, np.inf, 0.0)
    return out


def box_test(data: GroupedSample, alpha: float, cfg: BootstrapConfig) -> TestResult:
    """Box-type bootstrap test on standardized log-variance contrasts.

    The observed statistics are t_i = contrast_i / se_i.  Groups are
    resampled with replacement within themselves ``cfg.b`` times, the t
    vector is recomputed on each resample, replicates are centered (column
    means by default, the observed t under ``cfg.pivot_variant``), and the
    smallest symmetric box covering 1 - alpha of the centered rows sets
    the critical half-width.  Reject when any |t_i| exceeds it.
    """
    _check_alpha(alpha)
    if cfg.b < 1:
        raise ValueError(f"bootstrap replicate count must be >= 1, got {cfg.b}")
    observed = log_variance_contrasts(data)
    t_rows = _bootstrap_t_rows(data, cfg.b, cfg.rng)
    centered = center(t_rows, observed.t if cfg.pivot_variant else None)
    found = search_critical(centered, alpha)
    t_max = float(np.abs(observed.t).max())
    reject = True if alpha >= 1.0 else t_max > found.c_star
    return TestResult(BOX, observed.t.copy(), reject, alpha, critical_value=found.c_star)


def _resample_rows(groups, count: int, rng: np.random.Generator) -> list[np.ndarray]:
    return [g[rng.integers(0, g.size, size=(count, g.size))] for g in groups]


def _degenerate_rows(samples) -> np.ndarray:
    """Rows where some group's resample has zero variance (log undefined)."""
    bad = np.zeros(samples[0].shape[0], dtype=bool)
    for s in samples:
        dev = s - s.mean(axis=1, keepdims=True)
        bad |= (dev * dev).sum(axis=1) == 0.0
    return bad


def _bootstrap_t_rows(data: GroupedSample, b: int, rng: np.random.Generator) -> np.ndarray:
    """B bootstrap t vectors from within-group resampling, redrawing degenerate rows."""
    samples = _resample_rows(data.groups, b, rng)
    bad = _degenerate_rows(samples)
    attempts = 0
    while bad.any():
        attempts += 1
        if attempts > _MAX_REDRAWS:
            raise NumericError(
                f"a bootstrap replicate stayed degenerate after {_MAX_REDRAWS} redraws"
            )
        fresh = _resample_rows(data.groups, int(bad.sum()), rng)
        for s, f in zip(samples, fresh):
            s[bad] = f
        bad_idx = np.flatnonzero(bad)
        bad = np.zeros(b, dtype=bool)
        bad[bad_idx[_degenerate_rows(fresh)]] = True
    return _batched_t_stats(samples, data.n)


def _batched_t_stats(samples, n: int) -> np.ndarray:
    """t vectors for stacked resamples; samples[i] has shape (B, n_i).

    Mirrors the scalar path through estimate_moments/log_variance_contrasts
    with per-group sizes, vectorized over the B rows.
    """
    groups = len(samples)
    b = samples[0].shape[0]
    ss2 = np.empty((b, groups))
    ss4 = np.empty((b, groups))
    s2 = np.empty((b, groups))
    sizes = np.array([s.shape[1] for s in samples], dtype=float)
    for i, s in enumerate(samples):
        dev = s - s.mean(axis=1, keepdims=True)
        d2 = dev * dev
        ss2[:, i] = d2.sum(axis=1)
        ss4[:, i] = (d2 * d2).sum(axis=1)
        s2[:, i] = ss2[:, i] / (sizes[i] - 1.0)
    sigma2 = ss2.sum(axis=1) / n
    mu4 = ss4.sum(axis=1) / n
    kurt = mu4 / (sigma2 * sigma2)
    var_log_s2 = (kurt[:, None] - (sizes - 3.0) / sizes) / (sizes - 1.0)
    se = np.sqrt((1.0 - 2.0 / groups) * var_log_s2 + var_log_s2.sum(axis=1, keepdims=True) / groups**2)
    log_s2 = np.log(s2)
    contrast = log_s2 - log_s2.mean(axis=1, keepdims=True)
    return contrast / se


def run_all(
    data: GroupedSample, alpha: float, cfg: BootstrapConfig
) -> tuple[list[TestResult], dict[str, str]]:
    """Run all four tests on the same data.

    The two bootstrap tests consume disjoint child streams spawned from
    ``cfg.rng``.  A test that cannot run on this data contributes an entry
    in the returned error mapping instead of aborting the rest.
    """
    bl_rng, box_rng = cfg.rng.spawn(2)
    jobs = (
        (LEVENE, lambda: levene(data, alpha)),
        (SHOEMAKER, lambda: shoemaker(data, alpha)),
        (BOOTSTRAP_LEVENE, lambda: bootstrap_levene(data, alpha, replace(cfg, rng=bl_rng))),
        (BOX, lambda: box_test(data, alpha, replace(cfg, rng=box_rng))),
    )
    results: list[TestResult] = []
    errors: dict[str, str] = {}
    for name, job in jobs:
        try:
            results.append(job())
        except (DegenerateDataError, NumericError) as exc:
            errors[name] = str(exc)
    return results, errors
