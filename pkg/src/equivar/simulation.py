"""Monte Carlo estimation of test size and power over experiment grids.

A cell fixes a distribution, group sizes, group variances, a level, and
replication counts.  Every replication draws fresh groups from its own
derived stream, runs the selected tests, and contributes to per-test
rejection rates.  Results are deterministic functions of the
configuration, independent of execution order or parallelism.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .descriptive import GroupedSample
from .distributions import Distribution, sample_standardized
from .errors import DegenerateDataError, NumericError
from .homogeneity import (
    ALL_METHODS,
    BOOTSTRAP_LEVENE,
    LEVENE,
    SHOEMAKER,
    BootstrapConfig,
    box_test,
    bootstrap_levene,
    levene,
    shoemaker,
)
from .rng import derive_seed, stream

__all__ = [
    "ExperimentConfig",
    "CellEstimate",
    "RobustnessReport",
    "run_cell",
    "run_grid",
    "averaged_power",
    "robustness",
    "two_group_null_grid",
    "TWO_GROUP_NULL_SIZES",
]

# Stream slots within a replication: data generation and one per bootstrap test.
_DATA_SLOT = 0
_BL_SLOT = 1
_BOX_SLOT = 2

TWO_GROUP_NULL_SIZES = ((5, 5), (10, 10), (15, 15), (5, 10), (7, 15), (10, 15))


@dataclass(frozen=True)
class ExperimentConfig:
    """One simulation cell: a distribution / sizes / variances combination."""

    distribution: Distribution
    sizes: tuple[int, ...]
    variances: tuple[float, ...]
    alpha: float = 0.05
    replications: int = 1000
    bootstrap_b: int = 500
    master_seed: int = 0
    tests: tuple[str, ...] = ALL_METHODS

    def __post_init__(self):
        object.__setattr__(self, "distribution", Distribution(self.distribution))
        object.__setattr__(self, "sizes", tuple(int(s) for s in self.sizes))
        object.__setattr__(self, "variances", tuple(float(v) for v in self.variances))
        object.__setattr__(self, "tests", tuple(self.tests))
        if len(self.sizes) != len(self.variances):
            raise ValueError(
                f"sizes and variances must have equal length, got {len(self.sizes)} and {len(self.variances)}"
            )
        if len(self.sizes) < 2:
            raise ValueError("need at least two groups")
        if any(s < 2 for s in self.sizes):
            raise ValueError(f"every group size must be at least 2, got {self.sizes}")
        if any(v <= 0.0 for v in self.variances):
            raise ValueError(f"variances must be positive, got {self.variances}")
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in (0, 1], got {self.alpha}")
        if self.replications < 1:
            raise ValueError("need at least one replication")
        if self.bootstrap_b < 1:
            raise ValueError("need at least one bootstrap replicate")
        unknown = [t for t in self.tests if t not in ALL_METHODS]
        if unknown:
            raise ValueError(f"unknown tests: {unknown}; choose from {list(ALL_METHODS)}")
        if not self.tests:
            raise ValueError("select at least one test")

    @property
    def is_null(self) -> bool:
        """True when all group variances are equal (a size experiment)."""
        return all(v == self.variances[0] for v in self.variances)


@dataclass
class CellEstimate:
    config: ExperimentConfig
    rates: dict[str, float]            # rejection rate per test
    standard_errors: dict[str, float]  # sqrt(p(1-p)/valid replications)
    error_counts: dict[str, int] = field(default_factory=dict)


def run_cell(cfg: ExperimentConfig) -> CellEstimate:
    """Estimate rejection rates for one cell.

    Replication r draws its data from stream (master_seed, r, 0); the
    bootstrap tests consume streams (master_seed, r, 1) and
    (master_seed, r, 2).  Replications where a test raises a degeneracy or
    numeric error are counted separately and excluded from that test's
    denominator.
    """
    rejects = {t: 0 for t in cfg.tests}
    errors = {t: 0 for t in cfg.tests}
    scales = [math.sqrt(v) for v in cfg.variances]
    for r in range(cfg.replications):
        data_rng = stream(cfg.master_seed, r, _DATA_SLOT)
        data = GroupedSample(
            [s * sample_standardized(cfg.distribution, n, data_rng) for s, n in zip(scales, cfg.sizes)]
        )
        for t in cfg.tests:
            try:
                if t == LEVENE:
                    result = levene(data, cfg.alpha)
                elif t == SHOEMAKER:
                    result = shoemaker(data, cfg.alpha)
                elif t == BOOTSTRAP_LEVENE:
                    result = bootstrap_levene(
                        data, cfg.alpha,
                        BootstrapConfig(stream(cfg.master_seed, r, _BL_SLOT), cfg.bootstrap_b),
                    )
                else:
                    result = box_test(
                        data, cfg.alpha,
                        BootstrapConfig(stream(cfg.master_seed, r, _BOX_SLOT), cfg.bootstrap_b),
                    )
            except (DegenerateDataError, NumericError):
                errors[t] += 1
            else:
                rejects[t] += bool(result.reject)
    rates: dict[str, float] = {}
    ses: dict[str, float] = {}
    for t in cfg.tests:
        valid = cfg.replications - errors[t]
        if valid == 0:
            rates[t] = math.nan
            ses[t] = math.nan
        else:
            p = rejects[t] / valid
            rates[t] = p
            ses[t] = math.sqrt(p * (1.0 - p) / valid)
    return CellEstimate(cfg, rates, ses, errors)


def run_grid(cells, threads: int = 1) -> list[CellEstimate]:
    """Run independent cells, preserving input order.

    With ``threads`` > 1 the cells are distributed over worker processes;
    because every cell is a pure function of its configuration, results
    are identical for any thread count.
    """
    cells = list(cells)
    if not cells:
        raise ValueError("empty grid")
    if threads <= 1 or len(cells) == 1:
        return [run_cell(c) for c in cells]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(run_cell, cells))


def averaged_power(cfg_a: ExperimentConfig, cfg_b: ExperimentConfig) -> CellEstimate:
    """Average the rejection rates of two cells whose variances are reversed.

    Power against (v1, ..., vk) and its reversal differ when sample sizes
    are unequal; the average is the conventional summary.  The two
    configurations must agree in everything except the variance order
    (seeds may differ).
    """
    same = (
        cfg_a.distribution == cfg_b.distribution
        and cfg_a.sizes == cfg_b.sizes
        and cfg_a.alpha == cfg_b.alpha
        and cfg_a.replications == cfg_b.replications
        and cfg_a.bootstrap_b == cfg_b.bootstrap_b
        and cfg_a.tests == cfg_b.tests
        and cfg_a.variances == tuple(reversed(cfg_b.variances))
    )
    if not same:
        raise ValueError("configs must differ only by reversing the variance vector")
    est_a = run_cell(cfg_a)
    est_b = run_cell(cfg_b)
    rates = {t: (est_a.rates[t] + est_b.rates[t]) / 2.0 for t in cfg_a.tests}
    ses = {
        t: math.sqrt(est_a.standard_errors[t] ** 2 + est_b.standard_errors[t] ** 2) / 2.0
        for t in cfg_a.tests
    }
    errors = {t: est_a.error_counts[t] + est_b.error_counts[t] for t in cfg_a.tests}
    return CellEstimate(cfg_a, rates, ses, errors)


@dataclass
class RobustnessReport:
    """Maximum estimated size per test over a set of null cells."""

    alpha: float
    max_size: dict[str, float]
    robust: dict[str, bool]  # max size below twice the nominal level


def robustness(cells, alpha: float = 0.05) -> RobustnessReport:
    """Summarize null cells by the per-test maximum estimated size.

    A test is flagged robust when its maximum size over all cells stays
    below 2 * alpha.  Raises if any cell has unequal variances or if some
    test has no usable estimates.
    """
    cells = list(cells)
    if not cells:
        raise ValueError("no cells given")
    for c in cells:
        if not c.config.is_null:
            raise ValueError(f"cell with variances {c.config.variances} is not a null configuration")
    tests: list[str] = []
    for c in cells:
        for t in c.config.tests:
            if t not in tests:
                tests.append(t)
    max_size: dict[str, float] = {}
    for t in tests:
        values = [c.rates[t] for c in cells if t in c.rates and not math.isnan(c.rates[t])]
        if not values:
            raise ValueError(f"no usable estimates for test {t!r}")
        max_size[t] = max(values)
    robust = {t: m < 2.0 * alpha for t, m in max_size.items()}
    return RobustnessReport(alpha, max_size, robust)


def two_group_null_grid(
    master_seed: int,
    alpha: float = 0.05,
    replications: int = 1000,
    bootstrap_b: int = 500,
    tests: tuple[str, ...] = ALL_METHODS,
) -> list[ExperimentConfig]:
    """The 36-cell two-group null grid: six size pairs by six distributions.

    Cell seeds are derived from ``master_seed`` by cell index, so the grid
    is fully reproducible while cells stay independent.
    """
    cells = []
    index = 0
    for sizes in TWO_GROUP_NULL_SIZES:
        for dist in Distribution:
            cells.append(
                ExperimentConfig(
                    distribution=dist,
                    sizes=sizes,
                    variances=(1.0,) * len(sizes),
                    alpha=alpha,
                    replications=replications,
                    bootstrap_b=bootstrap_b,
                    master_seed=derive_seed(master_seed, index),
                    tests=tests,
                )
            )
            index += 1
    return cells
