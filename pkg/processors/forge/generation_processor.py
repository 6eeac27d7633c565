# 处理器2：生成实例
import asyncio
import logging
from functools import lru_cache
from pathlib import Path

from ..base_processor import BaseProcessor
from core_model.instance_format import load_instance
from core_model.instance_schema import Instance
from instance_forge.generator import generate, summarize
from instance_forge.repair import UnrepairableInstanceError
from instance_forge.manifest import ForgeJob
from workflows.dto import ForgeContext, ForgeOutcome


class GenerationProcessor(BaseProcessor):
    """
    处理器第二步：逐个执行生成任务。
    A failing job (unrepairable instance, bad base file) is recorded in its
    outcome and the batch continues.
    """
    def __init__(self, logger: logging.Logger):
        self.logger = logger

    def _run_job(self, job: ForgeJob, base: Instance) -> ForgeOutcome:
        scheme = job.scheme()
        # 文件名决定实例名
        instance = generate(base, scheme, self.logger).evolve(name=job.out_file.stem)
        return ForgeOutcome(job=job, instance=instance, summary=summarize(instance, scheme))

    async def _guarded(self, semaphore: asyncio.Semaphore, job: ForgeJob, base_loader) -> ForgeOutcome:
        async with semaphore:
            try:
                base = base_loader(job.base_file)
                return await asyncio.to_thread(self._run_job, job, base)
            except UnrepairableInstanceError as e:
                self.logger.warning(f"Job {job.out_file.name} produced an unrepairable instance: {e}")
                return ForgeOutcome(job=job, status="unrepairable", error=str(e))
            except Exception as e:
                self.logger.warning(f"Job {job.base_file.name} {job.scheme_id} seed {job.seed} failed: {e}")
                return ForgeOutcome(job=job, status="error", error=str(e))

    async def process(self, context: ForgeContext) -> ForgeContext:
        new_context = context.model_copy(deep=True)
        if not new_context.is_successful:
            return new_context

        try:
            base_loader = lru_cache(maxsize=None)(lambda path: load_instance(Path(path)))
            semaphore = asyncio.Semaphore(max(1, new_context.workers))
            new_context.outcomes = list(await asyncio.gather(
                *(self._guarded(semaphore, job, base_loader) for job in new_context.jobs)))
            failed = len(new_context.failed_jobs)
            self.logger.info(f"Generated {len(new_context.outcomes) - failed} instances, {failed} job(s) failed.")

        except Exception as e:
            self.logger.error(f"Instance generation failed: {e}", exc_info=True)
            new_context.is_successful = False
            new_context.error_message = f"Instance generation failed: {e}"

        return new_context
