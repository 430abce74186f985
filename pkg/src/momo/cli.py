"""Command-line entry point: ``momo run|bench|refset|score|report``.

Exit codes: 0 success, 1 usage error, 2 runtime failure.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from pathlib import Path

from .core import RunConfig, read_archive_csv
from .engine import run
from .harness.experiment import ExperimentPlan, execute_plan
from .harness.plotdata import emit_plot_data
from .harness.report import report_directory
from .metrics import MetricsRow, metrics_to_csv, score
from .problems import MissingReferenceError, get_problem, list_problems, load_reference, write_reference

EXIT_OK, EXIT_USAGE, EXIT_RUNTIME = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse exits with 2 by default
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _problem(name: str):
    try:
        return get_problem(name)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from exc


def cmd_run(args) -> int:
    problem = _problem(args.problem)
    config = RunConfig.load(args.config) if args.config else RunConfig()
    config = config.with_seed(args.seed)
    record = run(problem, config)
    try:
        ref = load_reference(problem, args.refset_dir)
    except MissingReferenceError as exc:
        logging.warning("%s; metrics skipped", exc)
        ref = None
    out = Path(args.out)
    emit_plot_data(record, ref, out)
    if ref is not None:
        report = score(record.archive.X, record.archive.F, ref.ps_points, ref.pf_points, problem.bounds)
        text = metrics_to_csv([MetricsRow(problem.name, args.seed, report)])
        (out / "metrics.csv").write_text(text, encoding="utf-8")
        sys.stdout.write(text)
    return EXIT_OK


def cmd_bench(args) -> int:
    if args.plan:
        plan = ExperimentPlan.load(args.plan, output_dir=args.out)
    else:
        plan = ExperimentPlan(output_dir=Path(args.out))
    if args.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    total = len(plan.problems) * len(plan.seeds)
    start = time.perf_counter()

    def progress(done: int, of: int) -> None:
        if not args.quiet and (done % 31 == 0 or done == of):
            print(f"[{done}/{of}] {time.perf_counter() - start:.1f}s", file=sys.stderr)

    result = execute_plan(plan, jobs=args.jobs, refset_dir=args.refset_dir, progress=progress)
    elapsed = time.perf_counter() - start
    print(
        f"{total} runs ({len(result.failures)} failed) in {elapsed:.1f}s; "
        f"results in {plan.output_dir}",
        file=sys.stderr,
    )
    return EXIT_RUNTIME if result.failures else EXIT_OK


def cmd_refset(args) -> int:
    problems = list_problems() if args.problem.lower() == "all" else [_problem(args.problem)]
    for problem in problems:
        ps, pf = write_reference(problem, args.out)
        print(f"{problem.name}: {ps.name}, {pf.name}")
    return EXIT_OK


def cmd_score(args) -> int:
    problem = _problem(args.problem)
    _, X, F = read_archive_csv(args.archive)
    if X.shape[1] != problem.D or F.shape[1] != problem.M:
        raise UsageError(f"archive columns do not match {problem.name} (D={problem.D}, M={problem.M})")
    ref = load_reference(problem, args.refset_dir)
    report = score(X, F, ref.ps_points, ref.pf_points, problem.bounds)
    print("igd,igdx,cr,psp")
    print(",".join(report.as_row()))
    if report.psp_floored:
        print("note: IGDX below the PSP floor; PSP is the capped value", file=sys.stderr)
    return EXIT_OK


def cmd_report(args) -> int:
    text = report_directory(args.in_dir, args.baseline, args.alpha)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="momo", description="MOMO multi-modal multi-objective optimizer and benchmark harness")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("run", help="one run of one problem")
    p.add_argument("--problem", required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--config", help="key = value RunConfig file")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--refset-dir", help="reference-set directory (default: packaged sets or $MOMO_REFSET_DIR)")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("bench", help="batch of problems x seeds")
    p.add_argument("--plan", help="key = value plan file (default: all problems, seeds 1-31)")
    p.add_argument("--out", required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--refset-dir")
    p.add_argument("-q", "--quiet", action="store_true")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("refset", help="generate reference sets")
    p.add_argument("--problem", required=True, help="problem name or 'all'")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_refset)

    p = sub.add_parser("score", help="metrics of an archive CSV")
    p.add_argument("--archive", required=True)
    p.add_argument("--problem", required=True)
    p.add_argument("--refset-dir")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("report", help="summary tables of a bench directory")
    p.add_argument("--in", dest="in_dir", required=True)
    p.add_argument("--baseline", help="directory of peer <algorithm>.csv files")
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--out", help="also write the report to this file")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"momo: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ValueError, RuntimeError, KeyError) as exc:
        print(f"momo: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
