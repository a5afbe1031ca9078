"""Run summaries and the two-sided Mann-Whitney-Wilcoxon rank-sum test."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

ALPHA = 0.01
EXACT_MAX_SIZE = 8


@dataclass(frozen=True)
class SampleSummary:
    median: float
    min: float
    max: float
    first_quartile: float
    third_quartile: float
    count: int


@dataclass(frozen=True)
class TestReport:
    u_statistic: float
    p_value: float
    significant: bool
    method: str = "normal"

    __test__ = False  # not a pytest class

    def csv_line(self, operator_a: str, operator_b: str) -> str:
        return f"{operator_a},{operator_b},{self.u_statistic:g},{self.p_value:.6g},{self.significant}"


def midranks(values: Sequence[float]) -> list[float]:
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        for m in range(i, j + 1):
            ranks[order[m]] = (i + j) / 2 + 1
        i = j + 1
    return ranks


def u_distribution(m: int, n: int) -> np.ndarray:
    """Null probabilities of U = 0..m*n for tie-free samples of sizes m and n.

    Recurrence on the position of the largest observation:
    P(m, n; u) = m/(m+n) P(m-1, n; u-n) + n/(m+n) P(m, n-1; u).
    """
    size = m * n + 1
    prev = [np.zeros(size) for _ in range(n + 1)]
    for j in range(n + 1):
        prev[j][0] = 1.0
    for i in range(1, m + 1):
        cur = [np.zeros(size) for _ in range(n + 1)]
        cur[0][0] = 1.0
        for j in range(1, n + 1):
            shifted = np.zeros(size)
            shifted[j:] = prev[j][: size - j]
            cur[j] = (i * shifted + j * cur[j - 1]) / (i + j)
        prev = cur
    return prev[n]


def mann_whitney(a: Sequence[float], b: Sequence[float], alpha: float = ALPHA) -> TestReport:
    """Two-sided test of whether ``a`` and ``b`` come from the same distribution.

    ``u_statistic`` counts pairs with the ``a`` value larger (ties count a
    half). Without ties and with the smaller sample of size at most 8 the
    p-value is exact; otherwise the tie-corrected normal approximation with a
    0.5 continuity correction is used.
    """
    a, b = list(a), list(b)
    na, nb = len(a), len(b)
    if na == 0 or nb == 0:
        raise ValueError("mann_whitney needs two non-empty samples")
    ranks = midranks(a + b)
    u = sum(ranks[:na]) - na * (na + 1) / 2
    mean = na * nb / 2
    ties = _tie_term(a + b)
    if ties == 0 and min(na, nb) <= EXACT_MAX_SIZE:
        dist = u_distribution(na, nb)
        k = int(round(u))
        lower = float(dist[: k + 1].sum())
        upper = float(dist[k:].sum())
        p = min(1.0, 2 * min(lower, upper))
        return TestReport(u, p, p < alpha, "exact")
    big_n = na + nb
    var = na * nb / 12 * ((big_n + 1) - ties / (big_n * (big_n - 1)))
    if var <= 0:
        return TestReport(mean, 1.0, False, "normal")
    z = max(abs(u - mean) - 0.5, 0.0) / math.sqrt(var)
    p = min(1.0, math.erfc(z / math.sqrt(2)))
    return TestReport(u, p, p < alpha, "normal")


def _tie_term(values: Sequence[float]) -> float:
    _, counts = np.unique(np.asarray(values, dtype=float), return_counts=True)
    return float(np.sum(counts.astype(float) ** 3 - counts))


def summarize(sample: Iterable[float]) -> SampleSummary:
    """Five-number summary; quartiles interpolate linearly between order statistics."""
    x = np.asarray(list(sample), dtype=float)
    if x.size == 0:
        raise ValueError("cannot summarize an empty sample")
    q1, med, q3 = np.percentile(x, [25, 50, 75])
    return SampleSummary(float(med), float(x.min()), float(x.max()), float(q1), float(q3),
                         int(x.size))


def success_rate(results: Sequence) -> float:
    if not results:
        raise ValueError("no results")
    return 100.0 * sum(1 for r in results if r.success) / len(results)
