import math

import numpy as np
import pytest
import scipy.stats

from equivar import (
    BootstrapConfig,
    DegenerateDataError,
    GroupedSample,
    NumericError,
    bootstrap_levene,
    box_test,
    levene,
    log_variance_contrasts,
    resample_within_groups,
    run_all,
    shoemaker,
    stream,
)
from equivar.homogeneity import _batched_t_stats, _jitter_scale

FIXED_A = [0.1, -0.3, 0.5, 1.2, -0.9]
FIXED_B = [0.4, 0.0, -0.2, 0.8, -1.1]


def _random_data(seed, sizes=(8, 11, 6), spread=(1.0, 1.0, 1.0)):
    rng = stream(seed)
    return GroupedSample([s * rng.normal(size=n) for n, s in zip(sizes, spread)])


def _oracle_levene(groups):
    """Literal evaluation of the median-centered ANOVA F ratio."""
    k = len(groups) - 1
    n = sum(len(g) for g in groups)
    e = [[abs(v - float(np.median(g))) for v in g] for g in groups]
    means = [sum(x) / len(x) for x in e]
    grand = sum(sum(x) for x in e) / n
    ssb = sum(len(x) * (m - grand) ** 2 for x, m in zip(e, means))
    ssw = sum(sum((v - m) ** 2 for v in x) for x, m in zip(e, means))
    return (ssb / k) / (ssw / (n - k - 1))


def _oracle_shoemaker(groups):
    count = len(groups)
    n = sum(len(g) for g in groups)
    mu4 = 0.0
    ss = 0.0
    s2 = []
    for g in groups:
        m = sum(g) / len(g)
        mu4 += sum((v - m) ** 4 for v in g)
        ss += sum((v - m) ** 2 for v in g)
        s2.append(sum((v - m) ** 2 for v in g) / (len(g) - 1))
    mu4 /= n
    sigma2 = ss / n
    h = count / sum(1.0 / len(g) for g in groups)
    var_log = (mu4 / sigma2**2 - (h - 3.0) / h) / (h - 1.0)
    logs = [math.log(v) for v in s2]
    mean_log = sum(logs) / count
    return sum((v - mean_log) ** 2 for v in logs) / var_log


class TestLevene:
    def test_identical_absolute_deviations_accept(self):
        res = levene(GroupedSample([[-1.0, 1.0], [-1.0, 1.0]]), 0.05)
        assert res.statistic == 0.0
        assert not res.reject

    def test_oracle_on_fixed_dataset(self):
        res = levene(GroupedSample([FIXED_A, FIXED_B]), 0.05)
        assert res.statistic == pytest.approx(_oracle_levene([FIXED_A, FIXED_B]), rel=1e-12)
        assert res.df == (1, 8)

    def test_matches_scipy(self):
        rng = stream(200)
        for _ in range(10):
            groups = [rng.normal(size=int(rng.integers(4, 12))) for _ in range(int(rng.integers(2, 5)))]
            ours = levene(GroupedSample(groups), 0.05)
            ref, _ = scipy.stats.levene(*groups, center="median")
            assert ours.statistic == pytest.approx(ref, rel=1e-12)

    def test_scale_invariant(self):
        data = _random_data(201)
        base = levene(data, 0.05)
        scaled = levene(GroupedSample([10.0 * g for g in data.groups]), 0.05)
        assert scaled.statistic == pytest.approx(base.statistic, rel=1e-12)
        assert scaled.reject == base.reject

    def test_between_without_within_variation_degenerate(self):
        data = GroupedSample([[-1.0, 1.0, -1.0, 1.0], [-2.0, 2.0, -2.0, 2.0]])
        with pytest.raises(DegenerateDataError, match="within-group variation"):
            levene(data, 0.05)

    def test_decision_rule(self):
        for seed in range(5):
            res = levene(_random_data(300 + seed, spread=(1.0, 2.5, 1.0)), 0.05)
            assert res.reject == (res.statistic > res.critical_value)


class TestShoemaker:
    def test_equal_variances_give_zero(self):
        res = shoemaker(GroupedSample([[0.0, 1.0, 2.0], [10.0, 11.0, 12.0]]), 0.05)
        assert res.statistic == pytest.approx(0.0, abs=1e-12)
        assert not res.reject

    def test_oracle_on_fixed_dataset(self):
        res = shoemaker(GroupedSample([FIXED_A, FIXED_B]), 0.05)
        assert res.statistic == pytest.approx(_oracle_shoemaker([FIXED_A, FIXED_B]), rel=1e-12)

    def test_zero_variance_rejected(self):
        with pytest.raises(DegenerateDataError):
            shoemaker(GroupedSample([[1.0, 1.0, 1.0], [1.0, 2.0, 3.0]]), 0.05)

    def test_decision_rule(self):
        for seed in range(5):
            res = shoemaker(_random_data(310 + seed, spread=(1.0, 3.0, 1.0)), 0.05)
            assert res.reject == (res.statistic > res.critical_value)


class TestBootstrapLevene:
    def test_jitter_scale_worked_example(self):
        assert _jitter_scale(GroupedSample([[0.0, 2.0], [1.0, 3.0]])) == pytest.approx(1.0)

    def test_p_value_on_lattice(self):
        cfg = BootstrapConfig.from_seed(7, b=40)
        res = bootstrap_levene(_random_data(320), 0.05, cfg)
        assert 0.0 <= res.p_value <= 1.0
        assert res.p_value * cfg.b == pytest.approx(round(res.p_value * cfg.b))

    def test_extreme_separation_gives_zero_p(self):
        rng = stream(321)
        data = GroupedSample([rng.normal(size=15), 100.0 * rng.normal(size=15)])
        res = bootstrap_levene(data, 0.05, BootstrapConfig.from_seed(1, b=100))
        assert res.p_value == 0.0
        assert res.reject  # p = 0 rejects at any positive level

    def test_deterministic_given_seed(self):
        data = _random_data(322)
        a = bootstrap_levene(data, 0.05, BootstrapConfig.from_seed(9, b=60))
        b = bootstrap_levene(data, 0.05, BootstrapConfig.from_seed(9, b=60))
        assert a.p_value == b.p_value
        assert a.statistic == b.statistic

    def test_statistic_matches_plain_levene(self):
        data = _random_data(323)
        res = bootstrap_levene(data, 0.05, BootstrapConfig.from_seed(2, b=25))
        assert res.statistic == levene(data, 0.05).statistic

    def test_smoothing_branch_runs_for_small_groups(self):
        rng = stream(324)
        data = GroupedSample([rng.normal(size=5), rng.normal(size=12)])
        res = bootstrap_levene(data, 0.05, BootstrapConfig.from_seed(3, b=50))
        assert 0.0 <= res.p_value <= 1.0

    def test_zero_residual_pool_degenerate(self):
        data = GroupedSample([[4.0, 4.0, 4.0], [9.0, 9.0]])
        with pytest.raises(DegenerateDataError, match="residual pool"):
            bootstrap_levene(data, 0.05, BootstrapConfig.from_seed(4, b=10))

    def test_decision_rule(self):
        res = bootstrap_levene(_random_data(325, spread=(1.0, 2.0, 1.0)), 0.05,
                               BootstrapConfig.from_seed(5, b=80))
        assert res.reject == (res.p_value < res.alpha)


class _ConstantIndexRng:
    """Stand-in generator whose resampling indices always pick element 0."""

    def integers(self, low, high, size=None):
        return np.zeros(size, dtype=np.int64)


class TestBoxTest:
    def test_batched_stats_match_scalar_path(self):
        data = _random_data(330, sizes=(6, 9, 7))
        boot = resample_within_groups(data, stream(331))
        batched = _batched_t_stats([g.reshape(1, -1) for g in boot.groups], boot.n)
        np.testing.assert_allclose(batched[0], log_variance_contrasts(boot).t, rtol=1e-12)

    def test_statistic_is_observed_t_vector(self):
        data = _random_data(332)
        res = box_test(data, 0.05, BootstrapConfig.from_seed(6, b=50))
        np.testing.assert_allclose(res.statistic, log_variance_contrasts(data).t, rtol=1e-12)

    def test_decision_rule(self):
        for seed, spread in [(333, (1.0, 1.0, 1.0)), (334, (1.0, 4.0, 1.0))]:
            res = box_test(_random_data(seed, spread=spread), 0.05, BootstrapConfig.from_seed(7, b=120))
            assert res.reject == (float(np.abs(res.statistic).max()) > res.critical_value)

    def test_scale_invariant_with_replayed_stream(self):
        data = _random_data(335)
        base = box_test(data, 0.05, BootstrapConfig.from_seed(8, b=100))
        scaled = box_test(
            GroupedSample([3.7 * g for g in data.groups]), 0.05, BootstrapConfig.from_seed(8, b=100)
        )
        np.testing.assert_allclose(scaled.statistic, base.statistic, rtol=1e-10)
        assert scaled.critical_value == pytest.approx(base.critical_value, rel=1e-10)
        assert scaled.reject == base.reject

    def test_pivot_variant_runs_and_differs(self):
        data = _random_data(336, spread=(1.0, 2.0, 1.0))
        plain = box_test(data, 0.05, BootstrapConfig.from_seed(9, b=200))
        pivot = box_test(data, 0.05, BootstrapConfig.from_seed(9, b=200, pivot_variant=True))
        np.testing.assert_allclose(pivot.statistic, plain.statistic, rtol=1e-12)
        assert pivot.critical_value != plain.critical_value

    def test_tiny_groups_trigger_redraws(self):
        # Two-point groups hit zero-variance resamples with probability 1/2
        # per group per replicate, exercising the redraw loop.
        data = GroupedSample([[0.0, 1.0], [2.0, 5.0]])
        res = box_test(data, 0.05, BootstrapConfig.from_seed(10, b=64))
        assert np.isfinite(res.critical_value)
        again = box_test(data, 0.05, BootstrapConfig.from_seed(10, b=64))
        assert again.critical_value == res.critical_value

    def test_redraw_cap_raises(self):
        data = GroupedSample([[0.0, 1.0], [2.0, 5.0]])
        cfg = BootstrapConfig(rng=_ConstantIndexRng(), b=8)
        with pytest.raises(NumericError, match="redraws"):
            box_test(data, 0.05, cfg)

    def test_zero_variance_group_degenerate(self):
        with pytest.raises(DegenerateDataError):
            box_test(GroupedSample([[1.0, 1.0, 1.0], [0.0, 1.0, 2.0]]), 0.05,
                     BootstrapConfig.from_seed(11, b=10))


class TestRunAll:
    def test_four_results_on_valid_data(self):
        data = _random_data(340)
        results, errors = run_all(data, 0.05, BootstrapConfig.from_seed(12, b=60))
        assert [r.method for r in results] == ["levene", "shoemaker", "bootstrap_levene", "box"]
        assert errors == {}
        box_res = results[-1]
        assert len(box_res.statistic) == len(data)

    def test_error_isolation_with_constant_group(self):
        data = GroupedSample([[5.0, 5.0, 5.0], [1.0, 2.0, 3.0]])
        results, errors = run_all(data, 0.05, BootstrapConfig.from_seed(13, b=40))
        ran = {r.method for r in results}
        assert "levene" in ran and "bootstrap_levene" in ran
        assert set(errors) == {"shoemaker", "box"}

    def test_deterministic_across_runs(self):
        data = _random_data(341)
        res1, _ = run_all(data, 0.05, BootstrapConfig.from_seed(14, b=50))
        res2, _ = run_all(data, 0.05, BootstrapConfig.from_seed(14, b=50))
        for a, b in zip(res1, res2):
            assert a.as_dict() == b.as_dict()


class TestScaleAndLocationInvariance:
    def test_all_statistics_invariant_at_fixed_streams(self):
        data = _random_data(350, sizes=(7, 9, 12), spread=(1.0, 1.8, 1.0))
        scale = 42.0
        shifts = (3.0, -8.0, 0.5)
        scaled = GroupedSample([scale * g for g in data.groups])
        shifted = GroupedSample([g + off for g, off in zip(data.groups, shifts)])
        for variant in (scaled, shifted):
            lev0, lev1 = levene(data, 0.05), levene(variant, 0.05)
            assert lev1.statistic == pytest.approx(lev0.statistic, rel=1e-10)
            sho0, sho1 = shoemaker(data, 0.05), shoemaker(variant, 0.05)
            assert sho1.statistic == pytest.approx(sho0.statistic, rel=1e-10)
            bl0 = bootstrap_levene(data, 0.05, BootstrapConfig.from_seed(15, b=150))
            bl1 = bootstrap_levene(variant, 0.05, BootstrapConfig.from_seed(15, b=150))
            assert bl1.p_value == bl0.p_value
            bx0 = box_test(data, 0.05, BootstrapConfig.from_seed(16, b=150))
            bx1 = box_test(variant, 0.05, BootstrapConfig.from_seed(16, b=150))
            np.testing.assert_allclose(bx1.statistic, bx0.statistic, rtol=1e-10)
            assert bx1.critical_value == pytest.approx(bx0.critical_value, rel=1e-10)
            for r0, r1 in ((lev0, lev1), (sho0, sho1), (bl0, bl1), (bx0, bx1)):
                assert r0.reject == r1.reject
