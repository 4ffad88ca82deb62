"""Quantiles of the F and chi-square reference distributions.

CDF backends delegate to scipy.special.  Quantiles invert those CDFs by
monotone bracketing and bisection, so the returned value is tied directly
to the CDF used elsewhere in the package rather than to a separate
closed-form approximation.
"""

from __future__ import annotations

from scipy import special as _sp

from .errors import NumericError

__all__ = [
    "ln_gamma",
    "regularized_incomplete_beta",
    "regularized_incomplete_gamma",
    "f_cdf",
    "chi2_cdf",
    "f_quantile",
    "chi2_quantile",
]


def ln_gamma(x: float) -> float:
    """Natural log of the gamma function for x > 0."""
    if x <= 0.0:
        raise ValueError(f"ln_gamma requires x > 0, got {x}")
    return float(_sp.gammaln(x))


def regularized_incomplete_beta(a: float, b: float, x: float) -> float:
    """I_x(a, b), the CDF of a Beta(a, b) variable at x."""
    if a <= 0.0 or b <= 0.0:
        raise ValueError(f"shape parameters must be positive, got a={a}, b={b}")
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x must lie in [0, 1], got {x}")
    return float(_sp.betainc(a, b, x))


def regularized_incomplete_gamma(s: float, x: float) -> float:
    """P(s, x), the lower regularized incomplete gamma function."""
    if s <= 0.0:
        raise ValueError(f"shape must be positive, got s={s}")
    if x < 0.0:
        raise ValueError(f"x must be nonnegative, got {x}")
    return float(_sp.gammainc(s, x))


def f_cdf(x: float, df1: float, df2: float) -> float:
    """CDF of the F distribution via the incomplete beta identity."""
    if df1 <= 0.0 or df2 <= 0.0:
        raise ValueError(f"degrees of freedom must be positive, got ({df1}, {df2})")
    if x <= 0.0:
        return 0.0
    t = df1 * x / (df1 * x + df2)
    return regularized_incomplete_beta(0.5 * df1, 0.5 * df2, t)


def chi2_cdf(x: float, df: float) -> float:
    """CDF of the chi-square distribution with ``df`` degrees of freedom."""
    if df <= 0.0:
        raise ValueError(f"degrees of freedom must be positive, got {df}")
    if x <= 0.0:
        return 0.0
    return regularized_incomplete_gamma(0.5 * df, 0.5 * x)


def _invert_cdf(cdf, p: float, what: str) -> float:
    # Bracket the quantile by doubling, then bisect to float resolution.
    if not 0.0 < p < 1.0:
        raise ValueError(f"probability must lie in (0, 1), got {p}")
    lo, hi = 0.0, 1.0
    while cdf(hi) < p:
        if hi > 1e300:
            raise NumericError(f"failed to bracket the {what} quantile at p={p}")
        lo, hi = hi, 2.0 * hi
    for _ in range(400):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:  # bracket is at float resolution
            break
        if cdf(mid) < p:
            lo = mid
        else:
            hi = mid
    x = 0.5 * (lo + hi)
    if abs(cdf(x) - p) > 1e-9:
        raise NumericError(f"{what} quantile did not converge at p={p}: residual {cdf(x) - p:.3e}")
    return x


def f_quantile(p: float, df1: float, df2: float) -> float:
    """Inverse CDF of the F(df1, df2) distribution."""
    return _invert_cdf(lambda x: f_cdf(x, df1, df2), p, "F")


def chi2_quantile(p: float, df: float) -> float:
    """Inverse CDF of the chi-square distribution with ``df`` degrees of freedom."""
    return _invert_cdf(lambda x: chi2_cdf(x, df), p, "chi-square")
