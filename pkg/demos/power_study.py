"""Power comparison: detecting a tenfold variance ratio as groups grow.

For each sample size the same simulated datasets feed all the tests, so
differences in the columns are differences between methods, not between
draws.  Replication counts are reduced to keep the demo quick; the
rankings match the full-scale study.
"""

from equivar import ExperimentConfig, derive_seed, run_cell

print("two groups, variances (1, 10), uniform data, level 0.05")
print(f"{'n per group':<14}{'levene':>10}{'shoemaker':>12}{'boot levene':>13}{'box':>8}")
for i, n in enumerate([5, 7, 10, 15]):
    cfg = ExperimentConfig(
        distribution="uniform",
        sizes=(n, n),
        variances=(1.0, 10.0),
        replications=300,
        bootstrap_b=200,
        master_seed=derive_seed(23, i),
    )
    est = run_cell(cfg)
    print(
        f"{n:<14}{est.rates['levene']:>10.3f}{est.rates['shoemaker']:>12.3f}"
        f"{est.rates['bootstrap_levene']:>13.3f}{est.rates['box']:>8.3f}"
    )

print()
print("Against the size-robust competitors (levene, bootstrap levene) the box")
print("test pulls ahead at small n; the gap closes around n = 15.  The")
print("shoemaker column is inflated because that test overshoots its level on")
print("these designs (see size_study.py), so its power is not comparable.")
