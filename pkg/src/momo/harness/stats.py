"""Wilcoxon rank-sum test and W/T/L tallies.

The statistic is the midrank sum of the first sample. When the pooled size is
at most ``EXACT_LIMIT`` the two-sided p-value comes from the exact permutation
distribution of that sum (ties kept, counted over doubled midranks so every
value is an integer); otherwise from the normal approximation with the tie
correction of the variance and no continuity correction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np
from scipy.special import comb
from scipy.stats import norm, rankdata

EXACT_LIMIT = 20
ALPHA = 0.05
VERDICTS = ("better", "equivalent", "worse")


@dataclass(frozen=True)
class RankSumResult:
    statistic: float
    pvalue: float
    exact: bool
    mean_rank_a: float
    mean_rank_b: float


def _check(a, b) -> tuple[np.ndarray, np.ndarray]:
    a = np.asarray(a, dtype=float).ravel()
    b = np.asarray(b, dtype=float).ravel()
    if len(a) < 2 or len(b) < 2:
        raise ValueError("each sample needs at least two values")
    if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
        raise ValueError("samples must be finite")
    return a, b


def exact_pvalue(doubled_ranks: np.ndarray, n: int, observed2: int) -> float:
    """Two-sided exact p for a doubled rank sum ``observed2`` of ``n`` pooled items."""
    r = [int(v) for v in doubled_ranks]
    total = sum(r)
    # ways[j][s]: subsets of size j with doubled rank sum s
    ways = np.zeros((n + 1, total + 1), dtype=np.float64)
    ways[0, 0] = 1.0
    for v in r:
        for j in range(n, 0, -1):
            ways[j, v:] += ways[j - 1, : total + 1 - v]
    dist = ways[n]
    centre2 = n * (len(r) + 1)  # expected doubled sum
    extreme = np.abs(np.arange(total + 1) - centre2) >= abs(observed2 - centre2)
    p = dist[extreme].sum() / comb(len(r), n, exact=True)
    return float(min(p, 1.0))


def rank_sum_test(sample_a, sample_b) -> RankSumResult:
    a, b = _check(sample_a, sample_b)
    n, m = len(a), len(b)
    pooled = np.concatenate([a, b])
    ranks = rankdata(pooled)  # midranks
    w = float(ranks[:n].sum())
    big = n + m
    if big <= EXACT_LIMIT:
        doubled = np.rint(2 * ranks).astype(np.int64)
        p = exact_pvalue(doubled, n, int(np.rint(2 * w)))
        exact = True
    else:
        _, counts = np.unique(pooled, return_counts=True)
        ties = float(np.sum(counts**3 - counts))
        var = n * m / 12.0 * ((big + 1) - ties / (big * (big - 1)))
        if var <= 0:
            p = 1.0
        else:
            z = (w - n * (big + 1) / 2.0) / np.sqrt(var)
            p = float(min(1.0, 2.0 * norm.sf(abs(z))))
        exact = False
    return RankSumResult(w, p, exact, float(ranks[:n].mean()), float(ranks[n:].mean()))


def wilcoxon_rank_sum(sample_a, sample_b, alpha: float = ALPHA, lower_is_better: bool = True) -> str:
    """Verdict for ``sample_a`` against ``sample_b``: better, equivalent or worse."""
    a, b = _check(sample_a, sample_b)
    if np.all(a == a[0]) and np.all(b == a[0]):
        return "equivalent"
    res = rank_sum_test(a, b)
    if res.pvalue >= alpha or res.mean_rank_a == res.mean_rank_b:
        return "equivalent"
    a_lower = res.mean_rank_a < res.mean_rank_b
    return "better" if a_lower == lower_is_better else "worse"


@dataclass(frozen=True)
class WTL:
    wins: int
    ties: int
    losses: int

    def __str__(self) -> str:
        return f"{self.wins}/{self.ties}/{self.losses}"


PerSeed = Mapping[int, float]


def verdicts(
    candidate: Mapping[str, PerSeed],
    baseline: Mapping[str, PerSeed],
    alpha: float = ALPHA,
    lower_is_better: bool = True,
) -> dict[str, str]:
    """Per-problem verdict of ``candidate`` against ``baseline``."""
    if set(candidate) != set(baseline):
        raise ValueError(f"problem sets differ: {sorted(set(candidate) ^ set(baseline))}")
    out = {}
    for problem in baseline:
        if set(candidate[problem]) != set(baseline[problem]):
            raise ValueError(f"{problem}: seeds are not aligned")
        seeds = sorted(baseline[problem])
        out[problem] = wilcoxon_rank_sum(
            [candidate[problem][s] for s in seeds],
            [baseline[problem][s] for s in seeds],
            alpha,
            lower_is_better,
        )
    return out


def wtl_table(
    summaries: Mapping[str, Mapping[str, PerSeed]],
    baseline: str,
    alpha: float = ALPHA,
    lower_is_better: bool = True,
) -> dict[str, WTL]:
    """W/T/L of every algorithm other than ``baseline`` against it.

    ``summaries`` maps algorithm -> problem -> seed -> value. A win is a
    problem where the algorithm is significantly better than the baseline.
    """
    if baseline not in summaries:
        raise KeyError(f"baseline {baseline!r} not among {sorted(summaries)}")
    table = {}
    for algo, data in summaries.items():
        if algo == baseline:
            continue
        v = list(verdicts(data, summaries[baseline], alpha, lower_is_better).values())
        table[algo] = WTL(v.count("better"), v.count("equivalent"), v.count("worse"))
    return table


def mean_std(values: Sequence[float]) -> tuple[float, float]:
    """Mean and sample standard deviation (``nan`` std for a single value)."""
    v = np.asarray(values, dtype=float)
    if len(v) == 0:
        raise ValueError("no values")
    std = float(np.std(v, ddof=1)) if len(v) > 1 else float("nan")
    return float(np.mean(v)), std
