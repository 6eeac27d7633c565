import argparse
import logging
import os
import sys
from datetime import datetime
from pathlib import Path

# Add project root to Python path
project_root = os.path.dirname(os.path.abspath(__file__))
if project_root not in sys.path:
    sys.path.insert(0, project_root)

import config
from cli_bench.commands import cmd_bench, cmd_generate, cmd_solve, cmd_verify
from common_utils.log_config import setup_task_logger


def _add_solver_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", dest="config_path", default=None,
                        help=f"Solver config file (key = value). Defaults to ${config.CONFIG_ENV_VAR}.")
    parser.add_argument("--variant", choices=["P", "PL"], default=None, help="Override the instance variant.")
    parser.add_argument("--formulation", choices=["compact", "mixed"], default=None)
    parser.add_argument("--cuts", default=None, help="Cut families: 'all', 'none' or a list such as RI,SEC.")
    parser.add_argument("--no-cuts", action="store_true", help="Plain branch-and-bound without separation.")
    parser.add_argument("--time-limit", type=float, default=None, help="Time limit in seconds.")
    parser.add_argument("--deterministic", action="store_true", help="Print '-' instead of wall-clock times.")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="TOP-ST-MIN toolkit: solve, generate, verify and benchmark.")
    parser.add_argument("--log_level", help="Set the logging level.", default="INFO",
                        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"])
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="Solve one instance and print its CSV row.")
    p_solve.add_argument("instance")
    _add_solver_flags(p_solve)
    p_solve.add_argument("--solution-out", default=None, help="Write the best solution to this file.")
    p_solve.add_argument("--csv", dest="csv_out", default=None, help="Append the result row to this CSV file.")

    p_gen = sub.add_parser("generate", help="Generate TOP-ST-MIN instances from a manifest or a single job.")
    p_gen.add_argument("manifest", nargs="?", default=None)
    p_gen.add_argument("--base", default=None, help="Base TOP instance (single-job mode).")
    p_gen.add_argument("--scheme", default=None, help="Scheme id such as SM-CPI or CM-DPI-NLI.")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--out", default=None, help="Output instance file (single-job mode).")
    p_gen.add_argument("--output_dir", default=config.DEFAULT_OUTPUT_DIR, help="Directory for the summary table.")
    p_gen.add_argument("--workers", type=int, default=config.DEFAULT_BENCH_WORKERS)

    p_verify = sub.add_parser("verify", help="Check a solution file against an instance.")
    p_verify.add_argument("instance")
    p_verify.add_argument("solution")

    p_bench = sub.add_parser("bench", help="Solve every instance of a directory and print the tables.")
    p_bench.add_argument("directory")
    _add_solver_flags(p_bench)
    p_bench.add_argument("--output_dir", default=config.DEFAULT_OUTPUT_DIR)
    p_bench.add_argument("--workers", type=int, default=config.DEFAULT_BENCH_WORKERS)
    p_bench.add_argument("--compare-formulations", action="store_true",
                         help="Also solve with the other formulation and print the comparison by fleet size.")
    p_bench.add_argument("--cut-impact", action="store_true",
                         help="Also solve once per single cut family, with all and with none.")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)

    logs_dir = Path(project_root) / config.LOGS_DIR
    logs_dir.mkdir(parents=True, exist_ok=True)
    log_file_name = f"run_{args.command}_{datetime.now().strftime('%Y%m%d_%H%M%S')}.log"
    log_file_path = logs_dir / log_file_name
    root_logger = setup_task_logger("RootLogger", str(log_file_path),
                                    level=getattr(logging, args.log_level.upper(), logging.INFO))

    if args.command == "solve":
        return cmd_solve(args.instance, root_logger, config_path=args.config_path, formulation=args.formulation,
                         cuts=args.cuts, no_cuts=args.no_cuts, time_limit=args.time_limit, variant=args.variant,
                         deterministic=args.deterministic, solution_out=args.solution_out, csv_out=args.csv_out)
    if args.command == "generate":
        return cmd_generate(root_logger, manifest_path=args.manifest, base_path=args.base, scheme_id=args.scheme,
                            seed=args.seed, out_path=args.out, output_dir=args.output_dir, workers=args.workers)
    if args.command == "verify":
        return cmd_verify(args.instance, args.solution, root_logger)
    return cmd_bench(args.directory, root_logger, config_path=args.config_path, output_dir=args.output_dir,
                     workers=args.workers, deterministic=args.deterministic, formulation=args.formulation,
                     cuts=args.cuts, no_cuts=args.no_cuts, time_limit=args.time_limit, variant=args.variant,
                     compare_formulations=args.compare_formulations, cut_impact=args.cut_impact)


if __name__ == "__main__":
    sys.exit(main())
