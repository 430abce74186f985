from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ..variation import Bounds

# maps t in [0, 1] (shape (n,)) to points (shape (n, dim))
Curve = Callable[[np.ndarray], np.ndarray]


class OutOfBoundsError(ValueError):
    pass


@dataclass(frozen=True)
class ProblemSpec:
    """One benchmark problem.

    ``ps_subsets`` holds one parametric curve per equivalent Pareto subset and
    ``pf_curve`` parameterizes the true front; both are used only to build
    reference sets. ``provenance`` says where the formula comes from.
    """

    name: str
    D: int
    M: int
    bounds: Bounds
    pss_count: int
    pf_geometry: str
    ref_size: int
    func: Callable[[np.ndarray], np.ndarray] = field(repr=False, compare=False)
    ps_subsets: tuple[Curve, ...] = field(repr=False, compare=False)
    pf_curve: Curve = field(repr=False, compare=False)
    pf_residual: Callable[[np.ndarray], np.ndarray] = field(repr=False, compare=False)
    provenance: str = ""

    def __post_init__(self) -> None:
        if self.bounds.dim != self.D:
            raise ValueError(f"{self.name}: bounds have {self.bounds.dim} dims, D={self.D}")
        if len(self.ps_subsets) != self.pss_count:
            raise ValueError(f"{self.name}: {len(self.ps_subsets)} subset curves for {self.pss_count} subsets")
        if self.pf_geometry not in ("convex", "concave", "linear"):
            raise ValueError(f"{self.name}: unknown PF geometry {self.pf_geometry!r}")

    def evaluate_many(self, X) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=float))
        if X.shape[1] != self.D:
            raise ValueError(f"{self.name}: expected {self.D} variables, got {X.shape[1]}")
        if np.any(X < self.bounds.lower) or np.any(X > self.bounds.upper):
            raise OutOfBoundsError(f"{self.name}: decision vector outside the variable bounds")
        F = self.func(X)
        if not np.all(np.isfinite(F)):
            raise FloatingPointError(f"{self.name}: non-finite objective value")
        return F


def evaluate(problem: ProblemSpec, x) -> np.ndarray:
    """Objective vector of a single decision vector."""
    x = np.asarray(x, dtype=float)
    if x.ndim != 1:
        raise ValueError("evaluate takes one decision vector; use evaluate_many for batches")
    return problem.evaluate_many(x[None, :])[0]


def segment(start, stop) -> Curve:
    start = np.asarray(start, dtype=float)
    stop = np.asarray(stop, dtype=float)

    def curve(t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)[:, None]
        return start + t * (stop - start)

    return curve
