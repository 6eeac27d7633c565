# 处理器3：写入实例文件与汇总表
import logging

from ..base_processor import BaseProcessor
from cli_bench.records import render_table
from common_utils.output_manager import OutputManager
from core_model.instance_format import write_instance
from workflows.dto import ForgeContext

SUMMARY_COLUMNS = ["instance", "scheme", "seed", "|N|", "|A|", "|M|", "|I|", "|C|", "status"]


class InstanceWriteProcessor(BaseProcessor):
    """
    处理器第三步（终点）：写出生成的实例文件以及 |N|/|A|/|M|/|I|/|C| 汇总表。
    """
    def __init__(self, logger: logging.Logger):
        self.logger = logger

    def process(self, context: ForgeContext) -> ForgeContext:
        if not context.is_successful:
            self.logger.warning("Skipping instance writing because the pipeline failed in a previous step.")
            return context

        try:
            output_manager = OutputManager(context.output_dir, self.logger)
            rows = []
            for outcome in context.outcomes:
                job = outcome.job
                if outcome.instance is None:
                    rows.append([job.out_file.stem, job.scheme_id, str(job.seed)] + ["-"] * 5 + [outcome.status])
                    continue
                output_manager.save_file(job.out_file, write_instance(outcome.instance))
                context.written_files.append(str(job.out_file))
                s = outcome.summary
                rows.append([s.instance, s.scheme, str(s.seed), str(s.nodes), str(s.arcs), str(s.mandatory),
                             str(s.physical), str(s.logical), s.status])

            context.summary_csv = render_table(SUMMARY_COLUMNS, rows)
            summary_path = output_manager.get_workflow_output_path("generation", "summary.csv")
            output_manager.save_file(summary_path, context.summary_csv)
            context.written_files.append(str(summary_path))

        except Exception as e:
            self.logger.error(f"Failed during instance writing: {e}", exc_info=True)
            context.is_successful = False
            context.error_message = f"Instance writing failed: {e}"

        return context
