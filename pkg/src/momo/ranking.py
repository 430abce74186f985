"""Pareto dominance and non-domination ranking (minimization)."""

from __future__ import annotations

import numpy as np
from numba import njit


def dominates(a, b) -> bool:
    """True iff ``a`` is no worse than ``b`` everywhere and strictly better somewhere."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"objective vectors differ in length: {a.shape} vs {b.shape}")
    return bool(np.all(a <= b) and np.any(a < b))


@njit(cache=True)
def _fast_nds(F):
    n, m = F.shape
    dominated_by = np.zeros(n, dtype=np.int64)
    # dom[i, j] is True when i dominates j
    dom = np.zeros((n, n), dtype=np.bool_)
    for i in range(n):
        for j in range(i + 1, n):
            i_le = True
            j_le = True
            i_lt = False
            j_lt = False
            for k in range(m):
                a = F[i, k]
                b = F[j, k]
                if a < b:
                    i_lt = True
                    j_le = False
                elif b < a:
                    j_lt = True
                    i_le = False
            if i_le and i_lt:
                dom[i, j] = True
                dominated_by[j] += 1
            elif j_le and j_lt:
                dom[j, i] = True
                dominated_by[i] += 1
    ranks = np.full(n, -1, dtype=np.int64)
    current = np.empty(n, dtype=np.int64)
    nxt = np.empty(n, dtype=np.int64)
    n_cur = 0
    for i in range(n):
        if dominated_by[i] == 0:
            ranks[i] = 0
            current[n_cur] = i
            n_cur += 1
    r = 0
    while n_cur > 0:
        n_nxt = 0
        for p in range(n_cur):
            i = current[p]
            for j in range(n):
                if dom[i, j]:
                    dominated_by[j] -= 1
                    if dominated_by[j] == 0:
                        ranks[j] = r + 1
                        nxt[n_nxt] = j
                        n_nxt += 1
        r += 1
        current, nxt = nxt, current
        n_cur = n_nxt
    return ranks


def non_dominated_sort(points) -> np.ndarray:
    """Rank objective vectors by front; 0 is the non-dominated front.

    Uses the fast non-dominated sorting bookkeeping with exact floating
    comparisons. Duplicate vectors share a rank.
    """
    F = np.asarray(points, dtype=float)
    if F.ndim != 2 or F.shape[0] == 0:
        raise ValueError("non_dominated_sort needs a non-empty (n, M) array")
    return _fast_nds(np.ascontiguousarray(F))
