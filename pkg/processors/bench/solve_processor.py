# 处理器2：并发求解
import asyncio
import logging
from typing import List, Optional, Tuple

from ..base_processor import BaseProcessor
from cli_bench.records import BenchRecord
from core_model.instance_schema import Instance
from cpa_engine.branch_and_cut import solve
from cpa_engine.dto import SolveResult, SolverConfig
from workflows.dto import BenchContext


class SolveProcessor(BaseProcessor):
    """
    处理器第二步：对每个求解设置，求解全部实例。
    Solves run in worker threads bounded by `context.workers`; each solve is
    sequential, and results are kept in instance-name order.
    """
    def __init__(self, logger: logging.Logger):
        self.logger = logger

    async def _solve_one(self, semaphore: asyncio.Semaphore, instance: Instance,
                         solver_config: SolverConfig) -> Tuple[Optional[SolveResult], Optional[str]]:
        async with semaphore:
            try:
                result = await asyncio.to_thread(solve, instance, solver_config, self.logger)
                return result, None
            except Exception as e:
                self.logger.error(f"Solving {instance.name} failed: {e}", exc_info=True)
                return None, str(e)

    async def process(self, context: BenchContext) -> BenchContext:
        new_context = context.model_copy(deep=True)
        if not new_context.is_successful:
            return new_context

        try:
            semaphore = asyncio.Semaphore(max(1, new_context.workers))
            instances = sorted(new_context.instances, key=lambda inst: inst.name)
            for run in new_context.runs:
                self.logger.info(f"Solving {len(instances)} instances with setting '{run.label}'...")
                outcomes = await asyncio.gather(
                    *(self._solve_one(semaphore, inst, run.solver_config) for inst in instances))
                results: List[SolveResult] = []
                records: List[BenchRecord] = []
                for inst, (result, error) in zip(instances, outcomes):
                    if error is not None:
                        new_context.solve_errors[f"{run.label}:{inst.name}"] = error
                        continue
                    results.append(result)
                    records.append(BenchRecord.from_result(inst, result))
                new_context.results[run.label] = results
                new_context.records[run.label] = records
                self.logger.info(f"Setting '{run.label}': {sum(r.status == 'OPT' for r in records)} of "
                                 f"{len(records)} solved to optimality.")

        except Exception as e:
            self.logger.error(f"Benchmark solving failed: {e}", exc_info=True)
            new_context.is_successful = False
            new_context.error_message = f"Benchmark solving failed: {e}"

        return new_context
