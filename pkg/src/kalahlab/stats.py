"""One-tailed significance tests for contest tallies.

The null hypothesis is always a fair coin: k successes out of n trials at
p = 1/2.  The default method is the plain normal approximation without
continuity correction, which is what reproduces the published contest
significance columns; the exact binomial tail is available alongside.
"""

from __future__ import annotations

import enum
import math
from typing import NamedTuple


class Conclusion(enum.Enum):
    MINIMAX_BETTER = "minimax is better"
    PRODUCT_BETTER = "product is better"
    NOT_SIGNIFICANT = "not significant"

    def __str__(self) -> str:
        return self.value


class TestResult(NamedTuple):
    k: int
    n: int
    direction: str  # "high" or "low"
    p_normal: float
    p_exact: float


def _normal_tail(z: float) -> float:
    # Upper tail of the standard normal via erfc (accurate to ~1 ulp).
    return 0.5 * math.erfc(z / math.sqrt(2.0))


def _binom_tail_ge(k: int, n: int) -> float:
    """P(X >= k) for X ~ Binomial(n, 1/2), summed in log space."""
    if k <= 0:
        return 1.0
    if k > n:
        return 0.0
    log_half_n = n * math.log(2.0)
    lg = math.lgamma
    lg_n1 = lg(n + 1)
    total = 0.0
    # accumulate from the smallest terms (i = n) downward for accuracy
    for i in range(n, k - 1, -1):
        total += math.exp(lg_n1 - lg(i + 1) - lg(n - i + 1) - log_half_n)
    return min(total, 1.0)


def one_tailed_p(k: int, n: int, method: str = "normal") -> float:
    """One-tailed p-value for k-of-n under a fair coin, in the direction of
    the observed deviation (upper tail when k >= n/2, lower otherwise)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0 <= k <= n:
        raise ValueError("k must be within [0, n]")
    high = 2 * k >= n
    if method == "normal":
        z = (k - n / 2.0) / (math.sqrt(n) / 2.0)
        return _normal_tail(z) if high else _normal_tail(-z)
    if method == "exact":
        return _binom_tail_ge(k, n) if high else _binom_tail_ge(n - k, n)
    raise ValueError(f"unknown method {method!r} (expected 'normal' or 'exact')")


def one_tailed_result(k: int, n: int) -> TestResult:
    return TestResult(k, n, "high" if 2 * k >= n else "low",
                      one_tailed_p(k, n, "normal"), one_tailed_p(k, n, "exact"))


def conclude(k: int, n: int, alpha: float) -> Conclusion:
    """Call the contest: k counts the pairs minimax did better on."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if one_tailed_p(k, n, "normal") < alpha:
        return Conclusion.MINIMAX_BETTER if 2 * k > n else Conclusion.PRODUCT_BETTER
    return Conclusion.NOT_SIGNIFICANT


class TwoProportionResult(NamedTuple):
    z: float
    p_value: float


def one_tailed_two_proportion(k1: int, n1: int, k2: int, n2: int) -> TwoProportionResult:
    """Pooled one-tailed z-test of H1: k1/n1 > k2/n2 against equality.

    Used to compare flaw-rate estimates between game variants; the pooled
    standard error assumes the two tallies are independent samples.
    """
    if n1 < 1 or n2 < 1:
        raise ValueError("sample sizes must be >= 1")
    p1, p2 = k1 / n1, k2 / n2
    pooled = (k1 + k2) / (n1 + n2)
    se = math.sqrt(pooled * (1.0 - pooled) * (1.0 / n1 + 1.0 / n2))
    if se == 0.0:
        return TwoProportionResult(0.0, 0.5)
    z = (p1 - p2) / se
    return TwoProportionResult(z, _normal_tail(z))
