"""One test per acceptance criterion, each at its stated tolerance.

Every test records a single PASS/FAIL line (also printed at the end of the
session). Criteria 2-6 read the output of the full sweep run for criterion 1.
"""

import csv
import time

import numpy as np
import pytest

import conftest
from momo.clustering import Partition, silhouette_score
from momo.core import RunConfig
from momo.engine import run
from momo.harness import ExperimentPlan, execute_plan
from momo.harness.stats import rank_sum_test
from momo.metrics import igd, igdx
from momo.problems import generate_reference, get_problem, list_problems, load_reference
from momo.ranking import non_dominated_sort
from oracles import exact_rank_sum_p, mean_nearest, peel_ranks, silhouette

pytestmark = pytest.mark.slow

SWEEP_LIMIT_S = 600.0


def record(number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    conftest.ACCEPTANCE[number] = line
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def sweep(tmp_path_factory):
    out = tmp_path_factory.mktemp("sweep")
    plan = ExperimentPlan(output_dir=out)
    start = time.perf_counter()
    result = execute_plan(plan)
    elapsed = time.perf_counter() - start
    return out, plan, result, elapsed


def _metric(sweep, problem, name):
    out, _, result, _ = sweep
    return np.array([getattr(m.report, name) for m in result.metrics if m.problem == problem])


def test_criterion_01_protocol_reproduction(sweep):
    out, plan, result, elapsed = sweep
    c = plan.config
    settings_ok = (c.N, c.nfe_max, c.pc, c.eta_c, c.eta_m, c.pm) == (50, 1000, 1.0, 20.0, 20.0, None)
    archives_ok = True
    for p in plan.problems:
        for s in plan.seeds:
            lines = (out / "runs" / p / f"seed_{s}" / "archive.csv").read_text().count("\n")
            archives_ok &= lines == 1001
    ok = (
        settings_ok
        and len(plan.problems) == 21
        and len(plan.seeds) == 31
        and len(result.metrics) == 651
        and not result.failures
        and len(result.summary) == 63
        and archives_ok
        and elapsed <= SWEEP_LIMIT_S
    )
    record(1, ok, f"21x31 runs, 1000 evaluations each, {len(result.summary)} summary rows, {elapsed:.0f}s (limit {SWEEP_LIMIT_S:.0f}s)")


def test_criterion_02_sympart_simple_igdx(sweep):
    v = _metric(sweep, "SYM-PART-Simple", "igdx")
    record(2, len(v) == 31 and v.mean() <= 0.40, f"SYM-PART Simple mean IGDX {v.mean():.4g} <= 0.40 (std {v.std(ddof=1):.3g})")


def test_criterion_03_omni_igdx(sweep):
    v = _metric(sweep, "Omni-test", "igdx")
    record(3, len(v) == 31 and v.mean() <= 0.10, f"Omni-test mean IGDX {v.mean():.4g} <= 0.10 (std {v.std(ddof=1):.3g})")


def test_criterion_04_mmf4_igdx(sweep):
    v = _metric(sweep, "MMF4", "igdx")
    record(4, len(v) == 31 and v.mean() <= 0.06, f"MMF4 mean IGDX {v.mean():.4g} <= 0.06 (std {v.std(ddof=1):.3g})")


@pytest.mark.xfail(
    strict=True,
    reason="archive IGD on SYM-PART Simple is about 0.045 (every seed >= 0.024); see the decisions ledger",
)
def test_criterion_05_sympart_simple_igd(sweep):
    v = _metric(sweep, "SYM-PART-Simple", "igd")
    record(5, len(v) == 31 and v.mean() <= 0.02, f"SYM-PART Simple mean IGD {v.mean():.4g} <= 0.02 (std {v.std(ddof=1):.3g})")


def test_criterion_06_stabilized_cluster_count(sweep):
    out, plan, _, _ = sweep
    finals = []
    for s in plan.seeds:
        with open(out / "runs" / "SYM-PART-Simple" / f"seed_{s}" / "k_history.csv", newline="") as fh:
            rows = list(csv.DictReader(fh))
        finals.append(int(rows[-1]["k_bar"]))
    share = sum(8 <= k <= 10 for k in finals) / len(finals)
    record(6, len(finals) == 31 and share >= 0.5, f"final k-bar in [8, 10] for {share:.0%} of 31 seeds (need >= 50%); values {sorted(finals)}")


def test_criterion_07_peer_tables_out_of_scope():
    conftest.ACCEPTANCE[7] = "criterion  7: SKIP  peer W/T/L tables need the six peer implementations (out of scope)"
    pytest.skip("peer comparison tables are out of scope; replaced by the oracle and invariant suites")


def test_criterion_08_oracle_equivalence():
    rng = np.random.default_rng(8)
    nds_ok = True
    for _ in range(1000):
        n = int(rng.integers(1, 51))
        F = rng.integers(0, 8, (n, int(rng.choice([2, 3])))).astype(float)
        nds_ok &= non_dominated_sort(F).tolist() == peel_ranks(F.tolist())
    sil_ok = True
    for _ in range(500):
        n = int(rng.integers(2, 61))
        d = int(rng.integers(1, 4))
        k = int(rng.integers(2, min(10, n) + 1))
        X = rng.random((n, d))
        labels = np.concatenate([np.arange(k), rng.integers(0, k, n - k)])
        got = silhouette_score(X, Partition(labels, np.zeros((k, d)), k))
        sil_ok &= abs(got - silhouette(X.tolist(), labels.tolist())) <= 1e-12
    igd_ok = True
    for i in range(200):
        d = int(rng.integers(1, 4))
        A = rng.random((int(rng.integers(1, 40)), d))
        R = rng.random((int(rng.integers(1, 40)), d))
        fn = igd if i % 2 else igdx
        igd_ok &= abs(fn(A, R) - mean_nearest(A.tolist(), R.tolist())) <= 1e-12
    rs_ok = True
    pairs = 0
    for n in range(2, 11):
        for m in range(2, 13 - n):
            for _ in range(3):
                a = rng.integers(0, 6, n).tolist()
                b = rng.integers(0, 6, m).tolist()
                if len(set(a + b)) == 1:
                    continue
                pairs += 1
                rs_ok &= abs(rank_sum_test(a, b).pvalue - exact_rank_sum_p(a, b)) <= 1e-12
    ok = nds_ok and sil_ok and igd_ok and rs_ok
    record(
        8,
        ok,
        f"sorting 1000/1000 {nds_ok}, Silhouette 500 at 1e-12 {sil_ok}, IGD/IGDX 200 at 1e-12 {igd_ok}, "
        f"rank-sum p for all n+m<=12 ({pairs} cases) {rs_ok}",
    )


def test_criterion_09_structural_invariants():
    runs = [(p, s) for p in ("SYM-PART-Simple", "Omni-test", "MMF4", "MMMOP2A", "IDMP-M2-T3") for s in (1, 2)]
    violations = []
    for name, seed in runs:
        problem = get_problem(name)
        nfe_seen = [50]

        def check(ev, name=name, seed=seed, nfe_seen=nfe_seen):
            where = f"{name}/seed {seed}/gen {ev.generation}"
            if ev.archive_size != ev.nfe or ev.nfe != nfe_seen[0] + 1:
                violations.append(f"{where}: archive size")
            nfe_seen[0] = ev.nfe
            if ev.population_size != 50:
                violations.append(f"{where}: population size")
            sizes = ev.parent_sizes
            c1, c2 = ev.parent_clusters
            rest = np.delete(sizes, c1)
            if c1 == c2 or sizes[c1] != sizes[sizes > 0].min() or sizes[c2] != rest[rest > 0].min():
                violations.append(f"{where}: parent clusters")
            lab = ev.pool_labels[ev.eliminated]
            if ev.pool_sizes[lab] != ev.pool_sizes.max():
                violations.append(f"{where}: eliminated outside a largest cluster")
            if ev.pool_ranks[ev.eliminated] != ev.pool_ranks[ev.pool_labels == lab].max():
                violations.append(f"{where}: eliminated rank not worst")

        rec = run(problem, RunConfig(seed=seed), observer=check)
        if len(rec.archive) != 1000 or len(rec.final_population) != 50:
            violations.append(f"{name}/seed {seed}: final sizes")
    record(9, not violations, f"10 full runs instrumented, {len(violations)} violations {violations[:3]}")


def test_criterion_10_determinism(tmp_path, sweep):
    text = "problems = all\nseeds = 7\n"
    trees = []
    for name in ("first", "second"):
        plan = ExperimentPlan.from_text(text, output_dir=tmp_path / name)
        execute_plan(plan)
        root = tmp_path / name
        trees.append({str(p.relative_to(root)): p.read_bytes() for p in sorted(root.rglob("*")) if p.is_file()})
    same = trees[0] == trees[1] and len(trees[0]) > 21
    # the sweep ran seed 7 of every problem too, inside a larger batch
    out = sweep[0]
    cross = all(
        (out / "runs" / p.name / "seed_7" / "archive.csv").read_bytes()
        == trees[0][f"runs/{p.name}/seed_7/archive.csv"]
        for p in list_problems()
    )
    record(10, same and cross, f"two executions of a 21-run plan byte-identical: {same}; archives equal to the full sweep's: {cross}")


def test_criterion_11_reference_set_integrity():
    expected = {"SYM-PART-Simple": 999, "SYM-PART-Rotated": 999, "Omni-test": 999, "MMMOP3A": 999, "MMMOP2A": 1002}
    bad = []
    for p in list_problems():
        ref = load_reference(p)
        fresh = generate_reference(p)
        if not (np.array_equal(ref.ps_points, fresh.ps_points) and np.array_equal(ref.pf_points, fresh.pf_points)):
            bad.append(f"{p.name}: shipped files differ from the generator")
        size = expected.get(p.name, 1000)
        if len(ref.ps_points) != size or len(ref.pf_points) != size:
            bad.append(f"{p.name}: size")
        F = p.evaluate_many(ref.ps_points)
        # dominated if some front point beats F by at least 1e-6 in every objective
        dominated = np.any(np.all(ref.pf_points[None] <= F[:, None] - 1e-6, axis=2), axis=1)
        if np.any(dominated):
            bad.append(f"{p.name}: {int(dominated.sum())} PS points dominated by the PF")
    record(11, not bad, f"21 problems, sizes 999/1000/1002, PS images non-dominated by PF within 1e-6; issues {bad}")
