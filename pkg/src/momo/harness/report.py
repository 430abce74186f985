"""Text reports over a batch directory, optionally against external peer results.

Peer results are CSV files in one directory, one file per algorithm named
``<algorithm>.csv``, with columns ``problem,seed`` and any of
``igd,igdx,cr,psp``. Each peer gets a ``+`` / ``=`` / ``-`` mark per problem
(significantly better / equivalent / worse than MOMO) and a W/T/L row.
"""

from __future__ import annotations

import csv
import math
from pathlib import Path

from .stats import ALPHA, mean_std, verdicts, wtl_table

BASELINE = "MOMO"
REPORT_METRICS = ("igdx", "psp", "igd")
HIGHER_IS_BETTER = {"psp", "cr"}
_MARK = {"better": "+", "equivalent": "=", "worse": "-"}

# metric -> problem -> seed -> value
Table = dict[str, dict[str, dict[int, float]]]


def read_results_csv(path: str | Path) -> Table:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        cols = reader.fieldnames or []
        if "problem" not in cols or "seed" not in cols:
            raise ValueError(f"{path}: needs 'problem' and 'seed' columns")
        metrics = [m for m in ("igd", "igdx", "cr", "psp") if m in cols]
        table: Table = {m: {} for m in metrics}
        for rec in reader:
            for m in metrics:
                if rec[m] == "":
                    continue
                table[m].setdefault(rec["problem"], {})[int(rec["seed"])] = float(rec[m])
    return table


def read_baselines(directory: str | Path) -> dict[str, Table]:
    directory = Path(directory)
    if not directory.is_dir():
        raise FileNotFoundError(f"baseline directory not found: {directory}")
    return {p.stem: read_results_csv(p) for p in sorted(directory.glob("*.csv"))}


def _cell(values: dict[int, float]) -> str:
    mean, std = mean_std(list(values.values()))
    std_text = "nan" if math.isnan(std) else f"{std:.2e}"
    return f"{mean:.2e} ({std_text})"


def render_report(momo: Table, peers: dict[str, Table] | None = None, alpha: float = ALPHA) -> str:
    peers = peers or {}
    lines: list[str] = []
    for metric in REPORT_METRICS:
        if metric not in momo:
            continue
        problems = list(momo[metric])
        usable = {name: t[metric] for name, t in peers.items() if metric in t}
        header = ["problem", BASELINE] + list(usable)
        rows = []
        marks: dict[str, dict[str, str]] = {}
        for name, data in usable.items():
            shared = {p: data[p] for p in problems if p in data}
            base = {p: momo[metric][p] for p in shared}
            marks[name] = verdicts(shared, base, alpha, metric not in HIGHER_IS_BETTER)
        for p in problems:
            row = [p, _cell(momo[metric][p])]
            for name, data in usable.items():
                row.append(f"{_cell(data[p])} {_MARK[marks[name][p]]}" if p in data else "n/a")
            rows.append(row)
        if usable:
            wtl = []
            for name, data in usable.items():
                shared = {p: data[p] for p in problems if p in data}
                base = {p: momo[metric][p] for p in shared}
                t = wtl_table({BASELINE: base, name: shared}, BASELINE, alpha, metric not in HIGHER_IS_BETTER)
                wtl.append(str(t[name]))
            rows.append(["W/T/L", ""] + wtl)
        widths = [max(len(r[i]) for r in [header] + rows) for i in range(len(header))]
        lines.append(f"{metric.upper()} (mean (std), alpha={alpha:g})")
        for r in [header] + rows:
            lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
        lines.append("")
    return "\n".join(lines)


def report_directory(batch_dir: str | Path, baseline_dir: str | Path | None = None, alpha: float = ALPHA) -> str:
    path = Path(batch_dir) / "metrics.csv"
    if not path.is_file():
        raise FileNotFoundError(f"no metrics.csv in {batch_dir}")
    peers = read_baselines(baseline_dir) if baseline_dir is not None else None
    return render_report(read_results_csv(path), peers, alpha)
