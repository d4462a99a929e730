"""Small statistical helpers: Wilson intervals and 2x2 chi-squared tests."""

from __future__ import annotations

import math

# two-sided 99% normal quantile (Phi^-1(0.995))
Z99 = 2.5758293035489004

# chi-squared df=1 critical value at significance 0.001
CHI2_CRIT_001 = 10.827566170662733


def wilson_interval(successes: int, trials: int, z: float = Z99) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion.

    Chosen over the Wald interval for sane behavior at proportions near 0
    and 1, which threshold experiments routinely produce.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if not 0 <= successes <= trials:
        raise ValueError(f"successes {successes} outside [0, {trials}]")
    phat = successes / trials
    z2 = z * z
    denom = 1.0 + z2 / trials
    center = (phat + z2 / (2.0 * trials)) / denom
    half = (z / denom) * math.sqrt(phat * (1.0 - phat) / trials + z2 / (4.0 * trials * trials))
    # at the boundary the score endpoints are exactly 0 resp. 1; rounding
    # in center - half can leave ~1e-20 of junk, which breaks lo <= phat
    lo = 0.0 if successes == 0 else max(0.0, center - half)
    hi = 1.0 if successes == trials else min(1.0, center + half)
    return lo, hi


def chi2_sf_df1(x: float) -> float:
    """Survival function of the chi-squared distribution with one df."""
    if x <= 0:
        return 1.0
    return math.erfc(math.sqrt(x / 2.0))


def chi2_independence_2x2(n11: int, n10: int, n01: int, n00: int) -> tuple[float, float]:
    """Pearson chi-squared test of independence on a 2x2 table.

    Returns (statistic, p-value), without continuity correction.  A table
    with an empty margin carries no evidence either way and is reported as
    (0, 1).
    """
    for c in (n11, n10, n01, n00):
        if c < 0:
            raise ValueError("negative cell count")
    total = n11 + n10 + n01 + n00
    r1, r0 = n11 + n10, n01 + n00
    c1, c0 = n11 + n01, n10 + n00
    if total == 0 or min(r1, r0, c1, c0) == 0:
        return 0.0, 1.0
    stat = total * (n11 * n00 - n10 * n01) ** 2 / (r1 * r0 * c1 * c0)
    return stat, chi2_sf_df1(stat)


def flag_tolerance(checks: int, alpha: float) -> float:
    """How many individual test misses to tolerate before flagging a batch.

    Under the null every check misses independently with probability alpha,
    so misses ~ Binomial(checks, alpha).  Allowing mean + 3 sigma + 1 keeps
    the false-flag rate of the batch comfortably below 1%.
    """
    if checks < 0 or not 0 <= alpha <= 1:
        raise ValueError("need checks >= 0 and alpha in [0,1]")
    mean = checks * alpha
    return mean + 3.0 * math.sqrt(mean * (1.0 - alpha)) + 1.0
