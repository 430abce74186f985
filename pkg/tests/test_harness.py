import csv
from pathlib import Path

import numpy as np
import pytest

from momo.core import RunConfig
from momo.engine import run
from momo.harness import ExperimentPlan, emit_plot_data, execute_plan, parse_seeds, run_experiment
from momo.harness import experiment as experiment_mod
from momo.harness.report import render_report, report_directory
from momo.metrics import read_metrics_csv
from momo.problems import MissingReferenceError, generate_reference, get_problem

SMALL = "problems = MMF1, Omni-test\nseeds = 1-2\nnfe_max = 150\n"


def tree(root: Path) -> dict[str, bytes]:
    return {str(p.relative_to(root)): p.read_bytes() for p in sorted(root.rglob("*")) if p.is_file()}


def test_parse_seeds():
    assert parse_seeds("1-3, 7") == (1, 2, 3, 7)
    with pytest.raises(ValueError):
        parse_seeds("5-1")


def test_plan_defaults_and_validation(tmp_path):
    plan = ExperimentPlan(output_dir=tmp_path)
    assert len(plan.problems) == 21 and plan.seeds == tuple(range(1, 32))
    with pytest.raises(ValueError):
        ExperimentPlan(seeds=(1, 1))
    with pytest.raises(KeyError):
        ExperimentPlan(problems=("nope",))
    with pytest.raises(ValueError):
        ExperimentPlan.from_text("seed = 3\n")


def test_plan_text_round_trip(tmp_path):
    plan = ExperimentPlan.from_text(SMALL, output_dir=tmp_path)
    assert plan.problems == ("MMF1", "Omni-test") and plan.config.nfe_max == 150
    again = ExperimentPlan.from_text(plan.to_text(), output_dir=tmp_path)
    assert again == plan


def test_two_seeds_summary_is_midpoint(tmp_path):
    plan = ExperimentPlan.from_text("problems = MMF1\nseeds = 1, 2\nnfe_max = 150\n", output_dir=tmp_path)
    rows = run_experiment(plan)
    assert [r.metric for r in rows] == ["igd", "igdx", "psp"]
    metrics = read_metrics_csv(tmp_path / "metrics.csv")
    assert [m.seed for m in metrics] == [1, 2]
    for r in rows:
        vals = [getattr(m.report, r.metric) for m in metrics]
        assert r.mean == pytest.approx((vals[0] + vals[1]) / 2)
        assert r.std == pytest.approx(np.std(vals, ddof=1))


def test_outputs_are_byte_identical_and_independent_of_jobs(tmp_path):
    outs = []
    for name, jobs in (("a", 1), ("b", 1), ("c", 2)):
        plan = ExperimentPlan.from_text(SMALL, output_dir=tmp_path / name)
        execute_plan(plan, jobs=jobs)
        outs.append(tree(tmp_path / name))
    assert outs[0] == outs[1] == outs[2]
    files = outs[0]
    assert "metrics.csv" in files and "summary.csv" in files and "plan.txt" in files
    assert "runs/MMF1/seed_2/archive.csv" in files
    assert "refsets/ps_Omni-test.csv" in files


def test_summary_recomputable_from_metrics(tmp_path):
    plan = ExperimentPlan.from_text(SMALL, output_dir=tmp_path)
    execute_plan(plan)
    metrics = read_metrics_csv(tmp_path / "metrics.csv")
    with open(tmp_path / "summary.csv", newline="") as fh:
        for row in csv.DictReader(fh):
            vals = [getattr(m.report, row["metric"]) for m in metrics if m.problem == row["problem"]]
            assert float(row["mean"]) == pytest.approx(np.mean(vals), rel=1e-12)
            assert float(row["std"]) == pytest.approx(np.std(vals, ddof=1), rel=1e-12)
            assert int(row["n"]) == len(vals)


def test_failed_run_is_reported_and_batch_continues(tmp_path, monkeypatch):
    real = experiment_mod.run

    def sometimes(problem, config, observer=None):
        if config.seed == 2:
            raise RuntimeError("boom")
        return real(problem, config)

    monkeypatch.setattr(experiment_mod, "run", sometimes)
    plan = ExperimentPlan.from_text(SMALL, output_dir=tmp_path)
    result = execute_plan(plan)
    assert len(result.metrics) == 2 and len(result.failures) == 2
    text = (tmp_path / "failures.csv").read_text()
    assert "boom" in text and text.startswith("problem,seed,error")


def test_missing_reference_files(tmp_path):
    plan = ExperimentPlan.from_text(SMALL, output_dir=tmp_path / "out")
    with pytest.raises(MissingReferenceError):
        execute_plan(plan, refset_dir=tmp_path / "empty")


def test_emit_plot_data(tmp_path):
    p = get_problem("SYM-PART-Simple")
    rec = run(p, RunConfig(seed=1, nfe_max=300))
    emit_plot_data(rec, generate_reference(p), tmp_path)
    names = sorted(f.name for f in tmp_path.iterdir())
    for frac in ("0.25", "0.5", "0.75", "1"):
        assert f"snapshot_{frac}.csv" in names
    assert {"archive.csv", "k_history.csv", "ref_ps.csv", "ref_pf.csv", "config.txt"} <= set(names)
    k_rows = (tmp_path / "k_history.csv").read_text().splitlines()
    assert k_rows[0] == "generation,k_star,k_bar" and len(k_rows) - 1 == rec.generations
    with open(tmp_path / "snapshot_0.5.csv", newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 50
    gen = rec.snapshots[1].generation
    k_bar = rec.k_history[gen - 1][1]
    assert all(0 <= int(r["cluster"]) < k_bar for r in rows)


def test_report_with_baseline(tmp_path):
    plan = ExperimentPlan.from_text("problems = MMF1\nseeds = 1-4\nnfe_max = 150\n", output_dir=tmp_path / "b")
    execute_plan(plan)
    peers = tmp_path / "peers"
    peers.mkdir()
    metrics = read_metrics_csv(tmp_path / "b" / "metrics.csv")
    lines = ["problem,seed,igdx,psp"] + [f"MMF1,{m.seed},{m.report.igdx * 10},{m.report.psp / 10}" for m in metrics]
    (peers / "Worse.csv").write_text("\n".join(lines) + "\n")
    text = report_directory(tmp_path / "b", peers)
    assert "IGDX" in text and "PSP" in text and "Worse" in text
    assert "0/0/1" in text
    assert render_report({"igdx": {"P": {1: 0.1, 2: 0.2}}}).startswith("IGDX")
