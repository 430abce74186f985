"""Per-run CSV artifacts sufficient to redraw population and cluster-count plots."""

from __future__ import annotations

from pathlib import Path

from ..core import write_matrix_csv
from ..engine import RunRecord
from ..problems import ReferenceSet


def snapshot_name(fraction: float) -> str:
    return f"snapshot_{fraction:g}.csv"


def emit_plot_data(record: RunRecord, refset: ReferenceSet | None, out_dir: str | Path) -> list[Path]:
    """Write the archive, k-history, snapshots and (optionally) the reference set.

    Files: ``archive.csv`` (decision and objective columns), ``k_history.csv``
    (one row per generation), ``snapshot_<fraction>.csv`` (population with rank
    and cluster label), ``config.txt`` and ``ref_ps.csv`` / ``ref_pf.csv``.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []

    def put(name: str, text: str) -> None:
        path = out / name
        path.write_text(text, encoding="utf-8")
        written.append(path)

    put("archive.csv", record.archive_csv())
    put("k_history.csv", record.k_history_csv())
    put("config.txt", record.config.to_text())
    for snap in record.snapshots:
        put(snapshot_name(snap.fraction), snap.to_csv())
    if refset is not None:
        for name, data in (("ref_ps.csv", refset.ps_points), ("ref_pf.csv", refset.pf_points)):
            write_matrix_csv(out / name, data)
            written.append(out / name)
    return written
