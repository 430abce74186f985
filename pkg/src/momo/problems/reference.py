"""Reference Pareto sets and fronts: generation and CSV storage.

PS points are spread by arc length along every subset curve, one cell-centred
sample per share (so no sample lands on a subset end point, where several
suites switch branches). PF points are spread by arc length along the front,
end points included. Files are ``ps_<name>.csv`` / ``pf_<name>.csv``,
headerless, full double precision.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from ..core import read_matrix_csv, write_matrix_csv
from .base import Curve, ProblemSpec

REFSET_ENV = "MOMO_REFSET_DIR"
_DENSE = 20001
_ADMISSIBLE = 1e-9


class MissingReferenceError(FileNotFoundError):
    pass


@dataclass(frozen=True)
class ReferenceSet:
    ps_points: np.ndarray
    pf_points: np.ndarray
    subset_ids: np.ndarray | None = None

    def __post_init__(self) -> None:
        if len(self.ps_points) != len(self.pf_points):
            raise ValueError("reference PS and PF must have the same size")


def arc_length_params(curve: Curve, n: int, centred: bool) -> np.ndarray:
    """Curve parameters of ``n`` points evenly spaced by arc length."""
    t = np.linspace(0.0, 1.0, _DENSE)
    P = curve(t)
    seg = np.linalg.norm(np.diff(P, axis=0), axis=1)
    s = np.concatenate([[0.0], np.cumsum(seg)])
    if s[-1] == 0.0:
        return np.full(n, 0.5)
    if centred:
        targets = (np.arange(n) + 0.5) / n * s[-1]
    else:
        targets = np.linspace(0.0, s[-1], n)
    return np.interp(targets, s, t)


def arc_length_sample(curve: Curve, n: int, centred: bool) -> np.ndarray:
    return curve(arc_length_params(curve, n, centred))


def _on_front(problem: ProblemSpec, X: np.ndarray) -> np.ndarray:
    inside = np.all((X >= problem.bounds.lower) & (X <= problem.bounds.upper), axis=1)
    ok = np.zeros(len(X), dtype=bool)
    if np.any(inside):
        F = problem.func(X[inside])
        ok[inside] = np.abs(problem.pf_residual(F)) <= _ADMISSIBLE
    return ok


def _subset_points(problem: ProblemSpec, curve: Curve, n: int) -> np.ndarray:
    t = arc_length_params(curve, n, centred=True)
    X = curve(t)
    bad = ~_on_front(problem, X)
    # a sample that lands exactly on a branch switch (e.g. a sine extremum
    # rounding onto the switch value) is moved the smallest step along the
    # curve that makes it optimal again
    step = 1e-9
    while np.any(bad) and step < 1e-3:
        for sign in (1.0, -1.0):
            idx = np.flatnonzero(bad)
            trial_t = np.clip(t[idx] + sign * step, 0.0, 1.0)
            trial = curve(trial_t)
            good = _on_front(problem, trial)
            t[idx[good]] = trial_t[good]
            X[idx[good]] = trial[good]
            bad[idx[good]] = False
        step *= 10.0
    return X


def subset_shares(total: int, parts: int) -> list[int]:
    base, extra = divmod(total, parts)
    return [base + (1 if i < extra else 0) for i in range(parts)]


def generate_reference(problem: ProblemSpec) -> ReferenceSet:
    shares = subset_shares(problem.ref_size, problem.pss_count)
    blocks, ids = [], []
    for i, (curve, n) in enumerate(zip(problem.ps_subsets, shares)):
        blocks.append(_subset_points(problem, curve, n))
        ids.append(np.full(n, i))
    pf = arc_length_sample(problem.pf_curve, problem.ref_size, centred=False)
    return ReferenceSet(np.vstack(blocks), pf, np.concatenate(ids))


def default_refset_dir() -> Path:
    env = os.environ.get(REFSET_ENV)
    if env:
        return Path(env)
    return Path(str(resources.files("momo") / "data" / "refsets" / "v1"))


def refset_paths(name: str, directory: str | Path | None = None) -> tuple[Path, Path]:
    directory = Path(directory) if directory is not None else default_refset_dir()
    return directory / f"ps_{name}.csv", directory / f"pf_{name}.csv"


def write_reference(problem: ProblemSpec, directory: str | Path) -> tuple[Path, Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    ref = generate_reference(problem)
    ps_path, pf_path = refset_paths(problem.name, directory)
    write_matrix_csv(ps_path, ref.ps_points)
    write_matrix_csv(pf_path, ref.pf_points)
    return ps_path, pf_path


def load_reference(problem: ProblemSpec, directory: str | Path | None = None) -> ReferenceSet:
    ps_path, pf_path = refset_paths(problem.name, directory)
    for path in (ps_path, pf_path):
        if not path.is_file():
            raise MissingReferenceError(f"reference file not found: {path}")
    ps = read_matrix_csv(ps_path)
    pf = read_matrix_csv(pf_path)
    if ps.shape[1] != problem.D or pf.shape[1] != problem.M:
        raise ValueError(f"{problem.name}: reference files have wrong column counts")
    return ReferenceSet(ps, pf)
