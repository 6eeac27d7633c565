"""
The four command handlers behind `topstmin.py`. Each returns a process exit
code: 0 on success, 2 when limits were hit or a batch partially failed, and
1 on errors. Result rows go to `out`; logging goes through `logger`.
"""
import asyncio
import logging
import sys
from pathlib import Path
from typing import List, Optional, TextIO

import config
from core_model.feasibility import check_solution
from core_model.instance_format import InstanceFormatError, load_instance
from core_model.solution_format import SolutionFormatError, load_solution, write_solution
from cpa_engine.branch_and_cut import solve
from cpa_engine.config_loader import ConfigError, load_solver_config
from cpa_engine.dto import SolverConfig
from instance_forge.manifest import ForgeJob
from instance_forge.schemes import GenScheme, GenerationError
from processors.bench.aggregate_processor import AggregateProcessor
from processors.bench.instance_load_processor import InstanceLoadProcessor
from processors.bench.report_write_processor import ReportWriteProcessor
from processors.bench.solve_processor import SolveProcessor
from processors.forge.generation_processor import GenerationProcessor
from processors.forge.instance_write_processor import InstanceWriteProcessor
from processors.forge.manifest_load_processor import ManifestLoadProcessor
from workflows.dto import BenchContext, BenchRun, ForgeContext
from workflows.pipeline import Pipeline
from .records import RESULT_COLUMNS, BenchRecord, render_records

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_LIMIT = 2


def parse_cut_option(value: Optional[str]) -> Optional[List[str]]:
    """`all`, `none` or a comma-separated family list; None keeps the configured families."""
    if value is None:
        return None
    token = value.strip().lower()
    if token == "all":
        return list(config.CUT_FAMILIES)
    if token == "none":
        return []
    return [part.strip().upper() for part in value.split(",") if part.strip()]


def _solver_config(config_path: Optional[str], formulation: Optional[str], cuts: Optional[str], no_cuts: bool,
                   time_limit: Optional[float], deterministic: bool) -> SolverConfig:
    overrides = {
        "formulation": formulation,
        "cut_families": [] if no_cuts else parse_cut_option(cuts),
        "time_limit": time_limit,
        "deterministic": deterministic or None,
    }
    return load_solver_config(config_path, overrides)


def append_csv_row(path: Path, row_text: str) -> None:
    new_file = not path.exists() or path.stat().st_size == 0
    with path.open("a", encoding="utf-8") as f:
        if new_file:
            f.write(",".join(RESULT_COLUMNS) + "\n")
        f.write(row_text)


# ==============================================================================
#  solve
# ==============================================================================

def cmd_solve(instance_path: str, logger: logging.Logger, config_path: Optional[str] = None,
              formulation: Optional[str] = None, cuts: Optional[str] = None, no_cuts: bool = False,
              time_limit: Optional[float] = None, variant: Optional[str] = None, deterministic: bool = False,
              solution_out: Optional[str] = None, csv_out: Optional[str] = None, out: TextIO = sys.stdout) -> int:
    try:
        instance = load_instance(instance_path)
        if variant:
            instance = instance.evolve(variant=variant)
        solver_config = _solver_config(config_path, formulation, cuts, no_cuts, time_limit, deterministic)
    except (InstanceFormatError, ConfigError, OSError) as e:
        logger.error(f"Cannot start solve: {e}")
        return EXIT_ERROR

    try:
        result = solve(instance, solver_config, logger)
    except Exception as e:
        logger.error(f"Solve of {instance.name} failed: {e}", exc_info=True)
        return EXIT_ERROR

    row = render_records([BenchRecord.from_result(instance, result)], solver_config.deterministic, header=False)
    out.write(row)
    if csv_out:
        append_csv_row(Path(csv_out), row)
    if solution_out and result.solution is not None:
        Path(solution_out).write_text(write_solution(result.solution), encoding="utf-8")
        logger.info(f"Solution written to {solution_out}")
    return EXIT_LIMIT if result.limit_hit else EXIT_OK


# ==============================================================================
#  verify
# ==============================================================================

def cmd_verify(instance_path: str, solution_path: str, logger: logging.Logger, out: TextIO = sys.stdout) -> int:
    try:
        instance = load_instance(instance_path)
        solution = load_solution(solution_path, instance)
        report = check_solution(instance, solution)
    except (InstanceFormatError, SolutionFormatError, OSError, ValueError) as e:
        logger.error(f"Cannot verify: {e}")
        return EXIT_ERROR

    if report.is_feasible:
        out.write(f"feasible profit {solution.profit:.{config.PROFIT_DECIMALS}f}\n")
        return EXIT_OK
    out.write(f"infeasible ({len(report.violations)} violations)\n")
    for violation in report.violations:
        out.write(f"  {violation.describe()}\n")
    return EXIT_ERROR


# ==============================================================================
#  generate
# ==============================================================================

def cmd_generate(logger: logging.Logger, manifest_path: Optional[str] = None, base_path: Optional[str] = None,
                 scheme_id: Optional[str] = None, seed: int = 0, out_path: Optional[str] = None,
                 output_dir: str = config.DEFAULT_OUTPUT_DIR, workers: int = config.DEFAULT_BENCH_WORKERS,
                 out: TextIO = sys.stdout) -> int:
    jobs = []
    if manifest_path is None:
        if not (base_path and scheme_id and out_path):
            logger.error("generate needs a manifest, or --base, --scheme and --out")
            return EXIT_ERROR
        try:
            GenScheme.from_id(scheme_id, seed=seed)
        except GenerationError as e:
            logger.error(str(e))
            return EXIT_ERROR
        jobs = [ForgeJob(base_file=Path(base_path), scheme_id=scheme_id.upper(), seed=seed, out_file=Path(out_path))]

    context = ForgeContext(manifest_path=manifest_path, output_dir=output_dir, workers=workers, jobs=jobs)
    pipeline = Pipeline([
        ManifestLoadProcessor(logger),
        GenerationProcessor(logger),
        InstanceWriteProcessor(logger),
    ], logger)
    final_context = asyncio.run(pipeline.run(context))

    if not final_context.is_successful:
        logger.error(f"Generation failed: {final_context.error_message}")
        return EXIT_ERROR
    out.write(final_context.summary_csv or "")
    if final_context.failed_jobs:
        logger.warning(f"{len(final_context.failed_jobs)} generation job(s) failed")
        return EXIT_LIMIT
    return EXIT_OK


# ==============================================================================
#  bench
# ==============================================================================

def bench_runs(base: SolverConfig, compare_formulations: bool, cut_impact: bool) -> List[BenchRun]:
    """The primary setting first, then the extra settings the requested tables need."""
    runs = [BenchRun(label=base.formulation if compare_formulations else "CPA", solver_config=base)]
    if compare_formulations:
        other = "mixed" if base.formulation == "compact" else "compact"
        runs.append(BenchRun(label=other, solver_config=base.model_copy(update={"formulation": other})))
    if cut_impact:
        compact = base.model_copy(update={"formulation": "compact"})
        settings = [("ALL", list(config.CUT_FAMILIES))] + [(f, [f]) for f in config.CUT_FAMILIES] + [("NONE", [])]
        for label, families in settings:
            runs.append(BenchRun(label=label, solver_config=compact.model_copy(update={"cut_families": families})))
    return runs


def cmd_bench(source: str, logger: logging.Logger, config_path: Optional[str] = None,
              output_dir: str = config.DEFAULT_OUTPUT_DIR, workers: int = config.DEFAULT_BENCH_WORKERS,
              deterministic: bool = False, formulation: Optional[str] = None, cuts: Optional[str] = None,
              no_cuts: bool = False, time_limit: Optional[float] = None, variant: Optional[str] = None,
              compare_formulations: bool = False, cut_impact: bool = False, out: TextIO = sys.stdout) -> int:
    try:
        base_config = _solver_config(config_path, formulation, cuts, no_cuts, time_limit, deterministic)
    except ConfigError as e:
        logger.error(f"Cannot start bench: {e}")
        return EXIT_ERROR

    context = BenchContext(
        source_input=source,
        output_dir=output_dir,
        runs=bench_runs(base_config, compare_formulations, cut_impact),
        workers=workers,
        deterministic=base_config.deterministic,
        variant_override=variant,
        compare_formulations=compare_formulations,
        cut_impact=cut_impact,
    )
    pipeline = Pipeline([
        InstanceLoadProcessor(logger),
        SolveProcessor(logger),
        AggregateProcessor(logger),
        ReportWriteProcessor(logger),
    ], logger)
    final_context = asyncio.run(pipeline.run(context))

    if not final_context.is_successful:
        logger.error(f"Benchmark failed: {final_context.error_message}")
        return EXIT_ERROR
    out.write("\n".join(final_context.tables[name] for name in ("results", "aggregate", "formulations", "cut_impact")
                        if name in final_context.tables))
    return EXIT_LIMIT if final_context.partially_failed else EXIT_OK
