"""Domain types, run configuration, RNG contract and serialization.

Randomness
----------
Every run draws from a single ``numpy.random.Generator`` backed by PCG64 and
seeded with the run seed. Nothing else is spawned or split; the draw order is
fixed by the engine and is therefore part of the reproducibility contract:

1. initialization: one ``random((N, D))`` block;
2. per generation, in this order: k-means++ seeding draws for every trial
   ``k`` of the cluster-count search, the seeding draws of the parent-time
   partition, parent tie-breaks, SBX draws, PM draws, the seeding draws of the
   environmental partition and the elimination tie-breaks.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

DEFAULT_SNAPSHOT_FRACTIONS = (0.25, 0.5, 0.75, 1.0)


def rng_new(seed: int) -> np.random.Generator:
    """Return the run's random stream (PCG64, seeded with ``seed``)."""
    return np.random.Generator(np.random.PCG64(int(seed)))


@dataclass(frozen=True)
class Solution:
    """One evaluated candidate."""

    x: np.ndarray
    f: np.ndarray
    eval_index: int
    rank: int | None = None
    cluster_id: int | None = None


class Population:
    """The surviving set, stored as aligned arrays.

    ``members`` materializes :class:`Solution` objects on demand; the engine
    works on the arrays directly.
    """

    __slots__ = ("X", "F", "eval_index", "ranks", "labels")

    def __init__(
        self,
        X: np.ndarray,
        F: np.ndarray,
        eval_index: np.ndarray,
        ranks: np.ndarray | None = None,
        labels: np.ndarray | None = None,
    ) -> None:
        self.X = np.array(X, dtype=float)
        self.F = np.array(F, dtype=float)
        self.eval_index = np.array(eval_index, dtype=np.int64)
        self.ranks = None if ranks is None else np.array(ranks, dtype=np.int64)
        self.labels = None if labels is None else np.array(labels, dtype=np.int64)
        if not (len(self.X) == len(self.F) == len(self.eval_index)):
            raise ValueError("population arrays are not aligned")

    def __len__(self) -> int:
        return len(self.X)

    @property
    def members(self) -> list[Solution]:
        out = []
        for i in range(len(self)):
            out.append(
                Solution(
                    x=self.X[i].copy(),
                    f=self.F[i].copy(),
                    eval_index=int(self.eval_index[i]),
                    rank=None if self.ranks is None else int(self.ranks[i]),
                    cluster_id=None if self.labels is None else int(self.labels[i]),
                )
            )
        return out

    def copy(self) -> "Population":
        return Population(self.X, self.F, self.eval_index, self.ranks, self.labels)


class Archive:
    """Append-only log of every evaluated solution, in evaluation order."""

    def __init__(self, n_var: int, n_obj: int, capacity: int = 0) -> None:
        self.n_var = n_var
        self.n_obj = n_obj
        self._X = np.empty((max(capacity, 1), n_var))
        self._F = np.empty((max(capacity, 1), n_obj))
        self._n = 0

    def __len__(self) -> int:
        return self._n

    def append(self, x: np.ndarray, f: np.ndarray) -> int:
        """Store one evaluation and return its 1-based evaluation index."""
        if self._n == len(self._X):
            grow = max(16, len(self._X))
            self._X = np.vstack([self._X, np.empty((grow, self.n_var))])
            self._F = np.vstack([self._F, np.empty((grow, self.n_obj))])
        self._X[self._n] = x
        self._F[self._n] = f
        self._n += 1
        return self._n

    @property
    def X(self) -> np.ndarray:
        view = self._X[: self._n]
        view.flags.writeable = False
        return view

    @property
    def F(self) -> np.ndarray:
        view = self._F[: self._n]
        view.flags.writeable = False
        return view

    @property
    def entries(self) -> list[Solution]:
        return [
            Solution(x=self._X[i].copy(), f=self._F[i].copy(), eval_index=i + 1)
            for i in range(self._n)
        ]

    def to_csv(self, path: str | Path | None = None) -> str:
        text = archive_to_csv(self.X, self.F)
        if path is not None:
            Path(path).write_text(text, encoding="utf-8")
        return text


@dataclass(frozen=True)
class RunConfig:
    """Algorithm settings for one run.

    ``pm=None`` means one over the number of variables, resolved per problem
    by :meth:`mutation_probability`.
    """

    N: int = 50
    nfe_max: int = 1000
    pc: float = 1.0
    eta_c: float = 20.0
    pm: float | None = None
    eta_m: float = 20.0
    seed: int = 1
    snapshot_fractions: tuple[float, ...] = DEFAULT_SNAPSHOT_FRACTIONS

    def __post_init__(self) -> None:
        object.__setattr__(self, "snapshot_fractions", tuple(float(v) for v in self.snapshot_fractions))
        self.validate()

    def validate(self) -> None:
        if self.N < 4:
            raise ValueError(f"N must be at least 4, got {self.N}")
        if self.nfe_max < self.N:
            raise ValueError(f"nfe_max ({self.nfe_max}) must be >= N ({self.N})")
        if not 0.0 <= self.pc <= 1.0:
            raise ValueError(f"pc must lie in [0, 1], got {self.pc}")
        if self.pm is not None and not 0.0 <= self.pm <= 1.0:
            raise ValueError(f"pm must lie in [0, 1], got {self.pm}")
        if self.eta_c <= 0 or self.eta_m <= 0:
            raise ValueError("distribution indices must be positive")
        for frac in self.snapshot_fractions:
            if not 0.0 < frac <= 1.0:
                raise ValueError(f"snapshot fraction {frac} outside (0, 1]")

    def mutation_probability(self, n_var: int) -> float:
        return 1.0 / n_var if self.pm is None else self.pm

    def with_seed(self, seed: int) -> "RunConfig":
        return replace(self, seed=int(seed))

    # plain-text key = value form

    def to_text(self) -> str:
        lines = []
        for fld in fields(self):
            value = getattr(self, fld.name)
            if fld.name == "pm" and value is None:
                text = "auto"
            elif fld.name == "snapshot_fractions":
                text = ", ".join(repr(v) for v in value)
            else:
                text = repr(value)
            lines.append(f"{fld.name} = {text}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "RunConfig":
        return cls.from_mapping(parse_key_values(text))

    @classmethod
    def from_mapping(cls, values: dict[str, str]) -> "RunConfig":
        known = {fld.name for fld in fields(cls)}
        unknown = set(values) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        kwargs: dict[str, object] = {}
        for key, raw in values.items():
            if key in ("N", "nfe_max", "seed"):
                kwargs[key] = int(raw)
            elif key == "pm":
                kwargs[key] = None if raw.lower() in ("auto", "1/d", "none") else float(raw)
            elif key == "snapshot_fractions":
                kwargs[key] = tuple(float(v) for v in raw.split(",") if v.strip())
            else:
                kwargs[key] = float(raw)
        return cls(**kwargs)

    @classmethod
    def load(cls, path: str | Path) -> "RunConfig":
        return cls.from_text(Path(path).read_text(encoding="utf-8"))

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_text(), encoding="utf-8")


def parse_key_values(text: str) -> dict[str, str]:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    out: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ValueError(f"line {lineno}: empty key")
        out[key] = value
    return out


@dataclass
class ClusterTracker:
    """Running record of the per-generation optimal cluster count."""

    k_star_history: list[int] = field(default_factory=list)

    @property
    def k_bar(self) -> int:
        if not self.k_star_history:
            raise ValueError("tracker has no history yet")
        total = sum(self.k_star_history)
        return -(-total // len(self.k_star_history))


def update_tracker(tracker: ClusterTracker, k_star: int) -> ClusterTracker:
    """Append ``k_star`` and return a tracker whose ``k_bar`` is the ceiling of the mean."""
    if int(k_star) != k_star or k_star < 2:
        raise ValueError(f"k_star must be an integer >= 2, got {k_star}")
    return ClusterTracker(tracker.k_star_history + [int(k_star)])


def fmt_float(value: float) -> str:
    """Shortest repr that round-trips exactly; used for every CSV float."""
    return repr(float(value))


def archive_to_csv(X: np.ndarray, F: np.ndarray, start_index: int = 1) -> str:
    X = np.atleast_2d(X)
    F = np.atleast_2d(F)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        ["eval_index"]
        + [f"x_{i + 1}" for i in range(X.shape[1])]
        + [f"f_{j + 1}" for j in range(F.shape[1])]
    )
    for i in range(len(X)):
        writer.writerow(
            [str(start_index + i)] + [fmt_float(v) for v in X[i]] + [fmt_float(v) for v in F[i]]
        )
    return buf.getvalue()


def read_archive_csv(path: str | Path) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Read an archive CSV back into ``(eval_index, X, F)``."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = [row for row in reader if row]
    x_cols = [i for i, name in enumerate(header) if name.startswith("x_")]
    f_cols = [i for i, name in enumerate(header) if name.startswith("f_")]
    if header[0] != "eval_index" or not x_cols or not f_cols:
        raise ValueError(f"{path}: not an archive CSV (header {header})")
    data = np.array([[float(v) for v in row] for row in rows], dtype=float).reshape(len(rows), len(header))
    return data[:, 0].astype(np.int64), data[:, x_cols], data[:, f_cols]


def write_matrix_csv(path: str | Path, rows: Iterable[Sequence[float]]) -> None:
    """Headerless CSV at full double precision."""
    lines = [",".join(fmt_float(v) for v in row) for row in rows]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_matrix_csv(path: str | Path) -> np.ndarray:
    return np.loadtxt(path, delimiter=",", ndmin=2)
