"""The MOMO steady-state loop.

One generation:

1. rank the population globally and normalize its decision vectors;
2. search the cluster count k* (k = 2, 3, ... until a singleton appears),
   push it into the tracker and partition the population into k-bar clusters;
3. pick the two smallest clusters and a best-ranked member of each as parents;
4. SBX + PM, keep the first child, evaluate it and archive it;
5. re-rank and re-cluster the N + 1 solutions with the same k-bar and drop a
   worst-ranked member of the largest cluster.

The loop stops once the archive holds exactly ``nfe_max`` evaluations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .clustering import kmeans, normalize_points, search_k
from .core import (
    Archive,
    ClusterTracker,
    Population,
    RunConfig,
    Solution,
    archive_to_csv,
    fmt_float,
    rng_new,
    update_tracker,
)
from .problems.base import ProblemSpec
from .ranking import non_dominated_sort
from .variation import make_offspring


class EvaluationError(RuntimeError):
    """An objective evaluation failed; the run is aborted."""


@dataclass(frozen=True)
class Snapshot:
    """Population copy taken when the budget first reaches ``fraction``."""

    fraction: float
    generation: int
    nfe: int
    X: np.ndarray
    F: np.ndarray
    eval_index: np.ndarray
    ranks: np.ndarray
    labels: np.ndarray

    def to_csv(self) -> str:
        lines = [
            ",".join(
                ["eval_index"]
                + [f"x_{i + 1}" for i in range(self.X.shape[1])]
                + [f"f_{j + 1}" for j in range(self.F.shape[1])]
                + ["rank", "cluster"]
            )
        ]
        for i in range(len(self.X)):
            row = [str(int(self.eval_index[i]))]
            row += [fmt_float(v) for v in self.X[i]]
            row += [fmt_float(v) for v in self.F[i]]
            row += [str(int(self.ranks[i])), str(int(self.labels[i]))]
            lines.append(",".join(row))
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class GenerationEvent:
    """Everything the structural checks need about one generation.

    Indices refer to positions in the parent population (``parents``) and in
    the N + 1 pool (``eliminated``, whose last entry is the child).
    """

    generation: int
    nfe: int
    k_star: int
    k_bar: int
    parent_sizes: np.ndarray
    parent_clusters: tuple[int, int]
    parents: tuple[int, int]
    parent_ranks: np.ndarray
    parent_labels: np.ndarray
    pool_sizes: np.ndarray
    pool_ranks: np.ndarray
    pool_labels: np.ndarray
    eliminated: int
    population_size: int
    archive_size: int


Observer = Callable[[GenerationEvent], None]


@dataclass
class RunRecord:
    problem: str
    config: RunConfig
    archive: Archive
    final_population: Population
    k_history: list[tuple[int, int]] = field(default_factory=list)
    snapshots: list[Snapshot] = field(default_factory=list)

    @property
    def generations(self) -> int:
        return len(self.k_history)

    def archive_csv(self) -> str:
        return archive_to_csv(self.archive.X, self.archive.F)

    def k_history_csv(self) -> str:
        lines = ["generation,k_star,k_bar"]
        lines += [f"{g},{ks},{kb}" for g, (ks, kb) in enumerate(self.k_history, start=1)]
        return "\n".join(lines) + "\n"


def _evaluate(problem: ProblemSpec, X: np.ndarray, first_index: int) -> np.ndarray:
    try:
        return problem.evaluate_many(X)
    except Exception as exc:
        raise EvaluationError(
            f"{problem.name}: evaluation {first_index} failed for x={X[0].tolist()}: {exc}"
        ) from exc


def initialize(
    problem: ProblemSpec,
    config: RunConfig,
    rng: np.random.Generator,
    archive: Archive | None = None,
) -> Population:
    """Sample N points uniformly in the box, evaluate them and archive them."""
    lo, hi = problem.bounds.lower, problem.bounds.upper
    X = lo + rng.random((config.N, problem.D)) * (hi - lo)
    # lo + u * (hi - lo) can round onto or past hi
    X = np.minimum(X, hi)
    start = 1 if archive is None else len(archive) + 1
    F = _evaluate(problem, X, start)
    if archive is None:
        idx = np.arange(1, config.N + 1)
    else:
        idx = np.array([archive.append(X[i], F[i]) for i in range(config.N)])
    return Population(X, F, idx)


def _pick(candidates: np.ndarray, rng: np.random.Generator) -> int:
    if len(candidates) == 1:
        return int(candidates[0])
    return int(candidates[rng.integers(len(candidates))])


def _select_parent_indices(ranks, labels, k, rng) -> tuple[tuple[int, int], tuple[int, int], np.ndarray]:
    sizes = np.bincount(labels, minlength=k)
    occupied = np.flatnonzero(sizes > 0)
    if len(occupied) < 2:
        raise ValueError("parent selection needs at least two non-empty clusters")
    # random keys break cardinality ties uniformly
    order = occupied[np.lexsort((rng.random(len(occupied)), sizes[occupied]))]
    clusters = (int(order[0]), int(order[1]))
    parents = []
    for c in clusters:
        members = np.flatnonzero(labels == c)
        best = members[ranks[members] == ranks[members].min()]
        parents.append(_pick(best, rng))
    return (parents[0], parents[1]), clusters, sizes


def select_parents(pop: Population, k_bar: int, rng: np.random.Generator) -> tuple[Solution, Solution]:
    """Best-ranked members of the two smallest clusters of a ranked, clustered population."""
    if k_bar < 2:
        raise ValueError(f"k_bar must be at least 2, got {k_bar}")
    if pop.ranks is None or pop.labels is None:
        raise ValueError("population must be ranked and clustered first")
    (i, j), _, _ = _select_parent_indices(pop.ranks, pop.labels, k_bar, rng)
    members = pop.members
    return members[i], members[j]


@dataclass(frozen=True)
class _Elimination:
    index: int
    ranks: np.ndarray
    labels: np.ndarray
    sizes: np.ndarray


def _eliminate(pool: Population, k_bar: int, rng: np.random.Generator) -> _Elimination:
    ranks = non_dominated_sort(pool.F)
    Z = normalize_points(pool.X)
    k = min(k_bar, len(pool))
    labels = kmeans(Z, k, rng).assignment
    sizes = np.bincount(labels, minlength=k)
    largest = np.flatnonzero(sizes == sizes.max())
    cluster = _pick(largest, rng)
    members = np.flatnonzero(labels == cluster)
    worst = members[ranks[members] == ranks[members].max()]
    return _Elimination(_pick(worst, rng), ranks, labels, sizes)


def _drop(pool: Population, index: int, ranks: np.ndarray, labels: np.ndarray) -> Population:
    keep = np.ones(len(pool), dtype=bool)
    keep[index] = False
    return Population(pool.X[keep], pool.F[keep], pool.eval_index[keep], ranks[keep], labels[keep])


def environmental_selection(
    pop_plus_child: Population, k_bar: int, rng: np.random.Generator, size: int | None = None
) -> Population:
    """Remove a worst-ranked member of the largest of ``k_bar`` clusters.

    ``size`` is the population size N; the input must hold N + 1 solutions.
    When omitted it is inferred as ``len(pop_plus_child) - 1``.
    """
    if size is not None and len(pop_plus_child) != size + 1:
        raise ValueError(f"expected {size + 1} solutions, got {len(pop_plus_child)}")
    if len(pop_plus_child) < 2:
        raise ValueError("environmental selection needs at least two solutions")
    if k_bar < 2:
        raise ValueError(f"k_bar must be at least 2, got {k_bar}")
    out = _eliminate(pop_plus_child, k_bar, rng)
    return _drop(pop_plus_child, out.index, out.ranks, out.labels)


def _take_snapshots(record: RunRecord, pop: Population, generation: int, nfe: int, pending: list[float]) -> None:
    due = [frac for frac in pending if nfe >= frac * record.config.nfe_max]
    for frac in due:
        pending.remove(frac)
        ranks = pop.ranks if pop.ranks is not None else non_dominated_sort(pop.F)
        # before the first generation there is no partition yet
        labels = pop.labels if pop.labels is not None else np.full(len(pop), -1, dtype=np.int64)
        record.snapshots.append(
            Snapshot(frac, generation, nfe, pop.X.copy(), pop.F.copy(), pop.eval_index.copy(), ranks.copy(), labels.copy())
        )


def run(problem: ProblemSpec, config: RunConfig, observer: Observer | None = None) -> RunRecord:
    """Execute one MOMO run and return its archive, final population and history."""
    config.validate()
    rng = rng_new(config.seed)
    pm = config.mutation_probability(problem.D)
    archive = Archive(problem.D, problem.M, capacity=config.nfe_max)
    pop = initialize(problem, config, rng, archive)
    record = RunRecord(problem.name, config, archive, pop)
    pending = sorted(set(config.snapshot_fractions))
    _take_snapshots(record, pop, 0, len(archive), pending)

    tracker = ClusterTracker()
    generation = 0
    while len(archive) < config.nfe_max:
        generation += 1
        ranks = non_dominated_sort(pop.F)
        Z = normalize_points(pop.X)
        k_star = search_k(Z, rng).k_star
        tracker = update_tracker(tracker, k_star)
        k_bar = tracker.k_bar
        labels = kmeans(Z, min(k_bar, len(pop)), rng).assignment
        (i, j), clusters, parent_sizes = _select_parent_indices(ranks, labels, min(k_bar, len(pop)), rng)

        child = make_offspring(
            pop.X[i], pop.X[j], config.pc, config.eta_c, pm, config.eta_m, problem.bounds, rng
        )
        f_child = _evaluate(problem, child[None, :], len(archive) + 1)[0]
        idx = archive.append(child, f_child)

        pool = Population(
            np.vstack([pop.X, child]), np.vstack([pop.F, f_child]), np.append(pop.eval_index, idx)
        )
        elim = _eliminate(pool, k_bar, rng)
        pop = _drop(pool, elim.index, elim.ranks, elim.labels)
        record.k_history.append((k_star, k_bar))

        if observer is not None:
            observer(
                GenerationEvent(
                    generation=generation, nfe=len(archive), k_star=k_star, k_bar=k_bar,
                    parent_sizes=parent_sizes, parent_clusters=clusters, parents=(i, j),
                    parent_ranks=ranks, parent_labels=labels, pool_sizes=elim.sizes,
                    pool_ranks=elim.ranks, pool_labels=elim.labels, eliminated=elim.index,
                    population_size=len(pop), archive_size=len(archive),
                )
            )
        _take_snapshots(record, pop, generation, len(archive), pending)

    record.final_population = pop
    return record
