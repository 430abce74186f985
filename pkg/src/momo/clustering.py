"""Variable-space clustering: normalization, k-means, Silhouette, cluster-count search.

k-means uses k-means++ seeding, a single replicate, at most 100 Lloyd
iterations and stops once assignments no longer change. An empty cluster is
refilled with the point lying farthest from its current centroid, taken from a
cluster that still has at least two members. All distances are Euclidean.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

MAX_ITER = 100


@dataclass(frozen=True)
class Partition:
    assignment: np.ndarray
    centroids: np.ndarray
    k: int
    n_iter: int = 0
    sse_history: np.ndarray | None = None

    @property
    def sizes(self) -> np.ndarray:
        return np.bincount(self.assignment, minlength=self.k)


def normalize_points(points) -> np.ndarray:
    """Map each dimension's observed [min, max] onto [0, 1]; flat dimensions map to 0."""
    X = np.atleast_2d(np.asarray(points, dtype=float))
    lo = X.min(axis=0)
    span = X.max(axis=0) - lo
    out = np.zeros_like(X)
    ok = span > 0
    out[:, ok] = (X[:, ok] - lo[ok]) / span[ok]
    # guard against round-off past 1
    return np.clip(out, 0.0, 1.0)


@njit(cache=True)
def _sq_dist(a, b):
    s = 0.0
    for j in range(a.shape[0]):
        t = a[j] - b[j]
        s += t * t
    return s


@njit(cache=True)
def _seed_plusplus(X, k, u):
    n, d = X.shape
    C = np.empty((k, d))
    first = min(int(u[0] * n), n - 1)
    C[0] = X[first]
    D2 = np.empty(n)
    for i in range(n):
        D2[i] = _sq_dist(X[i], C[0])
    for c in range(1, k):
        total = 0.0
        for i in range(n):
            total += D2[i]
        if total <= 0.0:
            pick = min(int(u[c] * n), n - 1)
        else:
            target = u[c] * total
            acc = 0.0
            pick = -1
            for i in range(n):
                acc += D2[i]
                if acc > target and D2[i] > 0.0:
                    pick = i
                    break
            if pick < 0:
                # round-off at the top of the cumulative sum
                for i in range(n - 1, -1, -1):
                    if D2[i] > 0.0:
                        pick = i
                        break
        C[c] = X[pick]
        for i in range(n):
            dd = _sq_dist(X[i], C[c])
            if dd < D2[i]:
                D2[i] = dd
    return C


@njit(cache=True)
def _assign(X, C, labels):
    n = X.shape[0]
    k = C.shape[0]
    for i in range(n):
        best = 0
        best_d = _sq_dist(X[i], C[0])
        for c in range(1, k):
            dd = _sq_dist(X[i], C[c])
            if dd < best_d:
                best_d = dd
                best = c
        labels[i] = best


@njit(cache=True)
def _repair_empty(X, C, labels, k):
    n = X.shape[0]
    counts = np.zeros(k, dtype=np.int64)
    for i in range(n):
        counts[labels[i]] += 1
    for c in range(k):
        if counts[c] > 0:
            continue
        far = -1
        far_d = -1.0
        for i in range(n):
            if counts[labels[i]] >= 2:
                dd = _sq_dist(X[i], C[labels[i]])
                if dd > far_d:
                    far_d = dd
                    far = i
        counts[labels[far]] -= 1
        labels[far] = c
        counts[c] = 1
        C[c] = X[far]


@njit(cache=True)
def _update_centroids(X, labels, k):
    n, d = X.shape
    C = np.zeros((k, d))
    counts = np.zeros(k, dtype=np.int64)
    for i in range(n):
        counts[labels[i]] += 1
        for j in range(d):
            C[labels[i], j] += X[i, j]
    for c in range(k):
        for j in range(d):
            C[c, j] /= counts[c]
    return C


@njit(cache=True)
def _sse(X, C, labels):
    s = 0.0
    for i in range(X.shape[0]):
        s += _sq_dist(X[i], C[labels[i]])
    return s


@njit(cache=True)
def _kmeans(X, k, u, max_iter):
    n = X.shape[0]
    C = _seed_plusplus(X, k, u)
    labels = np.empty(n, dtype=np.int64)
    _assign(X, C, labels)
    _repair_empty(X, C, labels, k)
    C = _update_centroids(X, labels, k)
    history = np.empty(max_iter + 1)
    history[0] = _sse(X, C, labels)
    new = np.empty(n, dtype=np.int64)
    it = 1
    while it <= max_iter:
        _assign(X, C, new)
        _repair_empty(X, C, new, k)
        same = True
        for i in range(n):
            if new[i] != labels[i]:
                same = False
                break
        if same:
            break
        labels[:] = new
        C = _update_centroids(X, labels, k)
        history[it] = _sse(X, C, labels)
        it += 1
    return labels, C, it - 1, history[:it]


@njit(cache=True)
def _pairwise(X):
    n = X.shape[0]
    D = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            v = np.sqrt(_sq_dist(X[i], X[j]))
            D[i, j] = v
            D[j, i] = v
    return D


@njit(cache=True)
def _silhouette(D, labels, k):
    n = D.shape[0]
    counts = np.zeros(k, dtype=np.int64)
    for i in range(n):
        counts[labels[i]] += 1
    sums = np.zeros(k)
    total = 0.0
    for i in range(n):
        li = labels[i]
        if counts[li] <= 1:
            continue
        for c in range(k):
            sums[c] = 0.0
        for j in range(n):
            sums[labels[j]] += D[i, j]
        a = sums[li] / (counts[li] - 1)
        b = np.inf
        for c in range(k):
            if c != li and counts[c] > 0:
                m = sums[c] / counts[c]
                if m < b:
                    b = m
        if b == np.inf:
            continue
        big = max(a, b)
        if big > 0.0:
            total += (b - a) / big
    return total / n


def kmeans(points, k: int, rng: np.random.Generator, max_iter: int = MAX_ITER) -> Partition:
    """Partition ``points`` into ``k`` non-empty clusters.

    Draws exactly ``k`` uniforms from ``rng`` (the k-means++ seeding).
    """
    X = np.ascontiguousarray(np.atleast_2d(np.asarray(points, dtype=float)))
    n = len(X)
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    if k > n:
        raise ValueError(f"cannot form {k} non-empty clusters from {n} points")
    u = rng.random(k)
    labels, C, n_iter, hist = _kmeans(X, int(k), u, int(max_iter))
    return Partition(assignment=labels, centroids=C, k=int(k), n_iter=int(n_iter), sse_history=hist)


def silhouette_score(points, partition: Partition, distances: np.ndarray | None = None) -> float:
    """Mean Silhouette value; members of singleton clusters contribute 0."""
    if partition.k < 2:
        raise ValueError("the Silhouette value needs at least two clusters")
    if distances is None:
        distances = _pairwise(np.ascontiguousarray(np.atleast_2d(np.asarray(points, dtype=float))))
    return float(_silhouette(distances, np.asarray(partition.assignment, dtype=np.int64), partition.k))


@dataclass(frozen=True)
class KSearch:
    k_star: int
    scores: dict[int, float]
    partitions: dict[int, Partition]


def search_k(points, rng: np.random.Generator) -> KSearch:
    """Try k = 2, 3, ... until a partition holds a singleton; keep the best Silhouette.

    The singleton-bearing partition is itself a candidate. Ties go to the
    smallest k.
    """
    X = np.ascontiguousarray(np.atleast_2d(np.asarray(points, dtype=float)))
    n = len(X)
    if n < 3:
        raise ValueError(f"cluster-count search needs at least 3 points, got {n}")
    D = _pairwise(X)
    scores: dict[int, float] = {}
    parts: dict[int, Partition] = {}
    for k in range(2, n + 1):
        part = kmeans(X, k, rng)
        parts[k] = part
        scores[k] = float(_silhouette(D, part.assignment, k))
        if np.any(part.sizes == 1):
            break
    best = max(scores.values())
    k_star = min(k for k, s in scores.items() if s == best)
    return KSearch(k_star=k_star, scores=scores, partitions=parts)


def optimal_k(points, rng: np.random.Generator) -> int:
    return search_k(points, rng).k_star
