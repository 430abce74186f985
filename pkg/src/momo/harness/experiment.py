"""Batch runner: every (problem, seed) pair of a plan, metrics and summaries.

Output layout under the plan's output directory::

    plan.txt                         resolved plan
    runs/<problem>/seed_<k>/...      per-run artifacts (see plotdata)
    refsets/ps_<name>.csv, pf_...    reference sets used for scoring
    metrics.csv                      problem,seed,igd,igdx,cr,psp
    summary.csv                      problem,metric,mean,std,n
    failures.csv                     only when some run failed

Files depend only on the plan and the code, never on timing or worker count.
"""

from __future__ import annotations

import csv
import io
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from functools import lru_cache
from pathlib import Path
from typing import Callable, Iterable

from ..core import RunConfig, fmt_float, parse_key_values, write_matrix_csv
from ..engine import run
from ..metrics import MetricsReport, MetricsRow, metrics_to_csv, score
from ..problems import get_problem, list_problems, load_reference
from ..problems.reference import default_refset_dir, refset_paths
from .plotdata import emit_plot_data
from .stats import mean_std

log = logging.getLogger(__name__)

DEFAULT_SEEDS = tuple(range(1, 32))
SUMMARY_METRICS = ("igd", "igdx", "psp")


def parse_seeds(text: str) -> tuple[int, ...]:
    """``"1-31"`` or ``"1, 4, 7-9"`` into a tuple of seeds."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "-" in part:
            lo, hi = (int(v) for v in part.split("-", 1))
            if hi < lo:
                raise ValueError(f"empty seed range {part!r}")
            out.extend(range(lo, hi + 1))
        else:
            out.append(int(part))
    return tuple(out)


@dataclass(frozen=True)
class ExperimentPlan:
    problems: tuple[str, ...] = field(default_factory=lambda: tuple(p.name for p in list_problems()))
    seeds: tuple[int, ...] = DEFAULT_SEEDS
    config: RunConfig = field(default_factory=RunConfig)
    output_dir: Path = Path("momo-out")

    def __post_init__(self) -> None:
        names = tuple(get_problem(p).name for p in self.problems)
        object.__setattr__(self, "problems", names)
        object.__setattr__(self, "seeds", tuple(int(s) for s in self.seeds))
        object.__setattr__(self, "output_dir", Path(self.output_dir))
        if not names:
            raise ValueError("plan lists no problems")
        if len(set(names)) != len(names):
            raise ValueError("plan lists a problem twice")
        if not self.seeds:
            raise ValueError("plan lists no seeds")
        if len(set(self.seeds)) != len(self.seeds):
            raise ValueError("plan seeds must be distinct")

    @classmethod
    def from_text(cls, text: str, output_dir: str | Path | None = None) -> "ExperimentPlan":
        """Parse a ``key = value`` plan.

        Keys: ``problems`` (``all`` or a comma list), ``seeds`` (ranges
        allowed), ``output_dir`` and any :class:`RunConfig` key except ``seed``.
        """
        values = parse_key_values(text)
        kwargs: dict[str, object] = {}
        raw = values.pop("problems", "all")
        if raw.strip().lower() != "all":
            kwargs["problems"] = tuple(p.strip() for p in raw.split(",") if p.strip())
        if "seeds" in values:
            kwargs["seeds"] = parse_seeds(values.pop("seeds"))
        out = values.pop("output_dir", None)
        if output_dir is not None:
            out = output_dir
        if out is not None:
            kwargs["output_dir"] = Path(out)
        if "seed" in values:
            raise ValueError("use 'seeds' in a plan, not 'seed'")
        kwargs["config"] = RunConfig.from_mapping(values)
        return cls(**kwargs)

    @classmethod
    def load(cls, path: str | Path, output_dir: str | Path | None = None) -> "ExperimentPlan":
        return cls.from_text(Path(path).read_text(encoding="utf-8"), output_dir)

    def to_text(self) -> str:
        lines = [
            f"problems = {', '.join(self.problems)}",
            f"seeds = {', '.join(str(s) for s in self.seeds)}",
        ]
        for line in self.config.to_text().splitlines():
            if not line.startswith("seed "):
                lines.append(line)
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class SummaryRow:
    problem: str
    metric: str
    mean: float
    std: float
    values: tuple[float, ...]


@dataclass(frozen=True)
class RunFailure:
    problem: str
    seed: int
    error: str


@dataclass
class BatchResult:
    summary: list[SummaryRow]
    metrics: list[MetricsRow]
    failures: list[RunFailure]


def run_dir(output_dir: str | Path, problem: str, seed: int) -> Path:
    return Path(output_dir) / "runs" / problem / f"seed_{seed}"


@lru_cache(maxsize=None)
def _reference(name: str, directory: str):
    return load_reference(get_problem(name), directory)


def _run_job(job: tuple[str, int, RunConfig, str, str]) -> tuple[str, int, MetricsReport | None, str | None]:
    name, seed, config, out_dir, ref_dir = job
    try:
        problem = get_problem(name)
        record = run(problem, config.with_seed(seed))
        emit_plot_data(record, None, run_dir(out_dir, name, seed))
        ref = _reference(name, ref_dir)
        report = score(record.archive.X, record.archive.F, ref.ps_points, ref.pf_points, problem.bounds)
        return name, seed, report, None
    except Exception as exc:  # reported per run; the batch goes on
        return name, seed, None, f"{type(exc).__name__}: {exc}"


def summarize(rows: Iterable[MetricsRow], problems: Iterable[str]) -> list[SummaryRow]:
    by_problem: dict[str, list[MetricsRow]] = {}
    for row in rows:
        by_problem.setdefault(row.problem, []).append(row)
    out = []
    for problem in problems:
        got = sorted(by_problem.get(problem, []), key=lambda r: r.seed)
        if not got:
            continue
        for metric in SUMMARY_METRICS:
            values = tuple(getattr(r.report, metric) for r in got)
            mean, std = mean_std(values)
            out.append(SummaryRow(problem, metric, mean, std, values))
    return out


def summary_to_csv(rows: Iterable[SummaryRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["problem", "metric", "mean", "std", "n"])
    for r in rows:
        writer.writerow([r.problem, r.metric, fmt_float(r.mean), fmt_float(r.std), str(len(r.values))])
    return buf.getvalue()


def execute_plan(
    plan: ExperimentPlan,
    jobs: int = 1,
    refset_dir: str | Path | None = None,
    progress: Callable[[int, int], None] | None = None,
) -> BatchResult:
    """Run the whole plan and persist every artifact."""
    ref_dir = str(default_refset_dir() if refset_dir is None else Path(refset_dir))
    for name in plan.problems:
        # fail fast on missing reference files rather than after the runs
        _reference(name, ref_dir)

    out = plan.output_dir
    out.mkdir(parents=True, exist_ok=True)
    (out / "plan.txt").write_text(plan.to_text(), encoding="utf-8")
    for name in plan.problems:
        ref = _reference(name, ref_dir)
        ps_path, pf_path = refset_paths(name, out / "refsets")
        ps_path.parent.mkdir(parents=True, exist_ok=True)
        write_matrix_csv(ps_path, ref.ps_points)
        write_matrix_csv(pf_path, ref.pf_points)

    todo = [(p, s, plan.config, str(out), ref_dir) for p in plan.problems for s in plan.seeds]
    results = []
    if jobs <= 1:
        for i, job in enumerate(todo, start=1):
            results.append(_run_job(job))
            if progress:
                progress(i, len(todo))
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for i, res in enumerate(pool.map(_run_job, todo, chunksize=4), start=1):
                results.append(res)
                if progress:
                    progress(i, len(todo))

    metrics, failures = [], []
    for name, seed, report, error in results:
        if error is None:
            metrics.append(MetricsRow(name, seed, report))
        else:
            log.error("run %s seed %d failed: %s", name, seed, error)
            failures.append(RunFailure(name, seed, error))

    summary = summarize(metrics, plan.problems)
    (out / "metrics.csv").write_text(metrics_to_csv(metrics), encoding="utf-8")
    (out / "summary.csv").write_text(summary_to_csv(summary), encoding="utf-8")
    fail_path = out / "failures.csv"
    if failures:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["problem", "seed", "error"])
        writer.writerows([f.problem, str(f.seed), f.error] for f in failures)
        fail_path.write_text(buf.getvalue(), encoding="utf-8")
    elif fail_path.exists():
        os.remove(fail_path)
    return BatchResult(summary, metrics, failures)


def run_experiment(plan: ExperimentPlan, jobs: int = 1, refset_dir: str | Path | None = None) -> list[SummaryRow]:
    """Run a plan; returns the IGD/IGDX/PSP summary rows (see :func:`execute_plan`)."""
    return execute_plan(plan, jobs, refset_dir).summary


def with_config(plan: ExperimentPlan, **changes) -> ExperimentPlan:
    return replace(plan, config=replace(plan.config, **changes))


__all__ = [
    "BatchResult",
    "DEFAULT_SEEDS",
    "ExperimentPlan",
    "RunFailure",
    "SummaryRow",
    "execute_plan",
    "parse_seeds",
    "run_dir",
    "run_experiment",
    "summarize",
    "summary_to_csv",
    "with_config",
]
