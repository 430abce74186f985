"""Quality indicators computed over a run's archive.

IGD and IGDX are the mean Euclidean distance from each reference point to its
nearest attained point (objective and decision space respectively). The cover
rate compares the bounding boxes of the attained and reference decision sets
dimension by dimension; PSP divides it by IGDX.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

import numpy as np
from scipy.spatial import cKDTree

from .core import fmt_float
from .variation import Bounds

PSP_FLOOR = 1e-12
METRIC_NAMES = ("igd", "igdx", "cr", "psp")


def _as_set(points, name: str) -> np.ndarray:
    P = np.asarray(points, dtype=float)
    if P.ndim == 1:
        P = P[None, :]
    if P.ndim != 2 or len(P) == 0:
        raise ValueError(f"{name} must be a non-empty set of vectors")
    return P


def _mean_nearest(attained, reference) -> float:
    A = _as_set(attained, "attained set")
    R = _as_set(reference, "reference set")
    if A.shape[1] != R.shape[1]:
        raise ValueError(f"dimension mismatch: attained {A.shape[1]} vs reference {R.shape[1]}")
    dist, _ = cKDTree(A).query(R, k=1)
    return float(np.mean(dist))


def igd(attained, reference) -> float:
    """Mean distance from each reference front point to the nearest attained objective vector."""
    return _mean_nearest(attained, reference)


def igdx(attained, reference_ps) -> float:
    """IGD measured in decision space against the reference Pareto set."""
    return _mean_nearest(attained, reference_ps)


def cover_rate(attained, reference_ps, bounds: Bounds | None = None) -> float:
    """Bounding-box cover rate of the attained decision set.

    Per dimension the overlap of the two boxes is divided by the reference
    extent and squared; the result is the ``2n``-th root of the product over
    the ``n`` dimensions with non-zero reference extent (1 when there is none).
    ``bounds`` only serves as a dimension check.
    """
    A = _as_set(attained, "attained set")
    R = _as_set(reference_ps, "reference set")
    if A.shape[1] != R.shape[1]:
        raise ValueError(f"dimension mismatch: attained {A.shape[1]} vs reference {R.shape[1]}")
    if bounds is not None and bounds.dim != A.shape[1]:
        raise ValueError("bounds do not match the decision-space dimension")
    a_lo, a_hi = A.min(axis=0), A.max(axis=0)
    r_lo, r_hi = R.min(axis=0), R.max(axis=0)
    extent = r_hi - r_lo
    used = extent > 0
    n = int(np.count_nonzero(used))
    if n == 0:
        return 1.0
    overlap = np.minimum(a_hi, r_hi)[used] - np.maximum(a_lo, r_lo)[used]
    if np.any(overlap <= 0):
        return 0.0
    delta = (overlap / extent[used]) ** 2
    value = float(np.prod(delta) ** (1.0 / (2 * n)))
    return min(max(value, 0.0), 1.0)


def psp(attained, reference_ps, bounds: Bounds | None = None) -> float:
    """Cover rate divided by IGDX, with IGDX floored at ``PSP_FLOOR``."""
    cr = cover_rate(attained, reference_ps, bounds)
    if cr == 0.0:
        return 0.0
    return cr / max(igdx(attained, reference_ps), PSP_FLOOR)


@dataclass(frozen=True)
class MetricsReport:
    igd: float
    igdx: float
    cr: float
    psp: float
    psp_floored: bool = False

    def as_row(self) -> list[str]:
        return [fmt_float(self.igd), fmt_float(self.igdx), fmt_float(self.cr), fmt_float(self.psp)]


def score(X, F, reference_ps, reference_pf, bounds: Bounds | None = None) -> MetricsReport:
    """All four indicators for one archive."""
    gx = igdx(X, reference_ps)
    cr = cover_rate(X, reference_ps, bounds)
    floored = gx < PSP_FLOOR
    value = 0.0 if cr == 0.0 else cr / max(gx, PSP_FLOOR)
    return MetricsReport(igd=igd(F, reference_pf), igdx=gx, cr=cr, psp=value, psp_floored=floored)


@dataclass(frozen=True)
class MetricsRow:
    problem: str
    seed: int
    report: MetricsReport


def metrics_to_csv(rows: Iterable[MetricsRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["problem", "seed", *METRIC_NAMES])
    for row in rows:
        writer.writerow([row.problem, str(row.seed), *row.report.as_row()])
    return buf.getvalue()


def read_metrics_csv(path: str | Path) -> list[MetricsRow]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        missing = {"problem", "seed", *METRIC_NAMES} - set(reader.fieldnames or [])
        if missing:
            raise ValueError(f"{path}: missing columns {sorted(missing)}")
        out = []
        for rec in reader:
            rep = MetricsReport(*(float(rec[m]) for m in METRIC_NAMES))
            out.append(MetricsRow(rec["problem"], int(rec["seed"]), rep))
    return out
