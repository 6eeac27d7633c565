# 处理器4：写入文件
import logging
from pathlib import Path

from ..base_processor import BaseProcessor
from common_utils.file_helpers import sanitize_filename, with_suffix
from common_utils.output_manager import OutputManager
from core_model.solution_format import write_solution
from workflows.dto import BenchContext


class ReportWriteProcessor(BaseProcessor):
    """
    处理器第四步（终点）：把所有表格写到输出目录，处理文件IO的副作用。
    """
    def __init__(self, logger: logging.Logger):
        self.logger = logger

    def process(self, context: BenchContext) -> BenchContext:
        # 这是管道的终点，可以直接修改上下文，无需创建副本
        if not context.is_successful:
            self.logger.warning("Skipping report writing because the pipeline failed in a previous step.")
            return context

        self.logger.info("Writing benchmark tables to files...")
        try:
            source_metadata = context.source_metadata or {}
            task_output_dir = Path(context.output_dir) / sanitize_filename(source_metadata.get("title", "bench"))
            output_manager = OutputManager(str(task_output_dir), self.logger)

            for name, table in context.tables.items():
                path = output_manager.get_workflow_output_path("tables", with_suffix(name, ".csv"))
                output_manager.save_file(path, table)
                context.written_files.append(str(path))

            # 逐实例的解文件，便于用 verify 复核
            for label, results in context.results.items():
                for result in results:
                    if result.solution is None:
                        continue
                    path = output_manager.get_workflow_output_path(
                        f"solutions/{sanitize_filename(label)}", with_suffix(result.instance, ".sol"))
                    output_manager.save_file(path, write_solution(result.solution))
                    context.written_files.append(str(path))

            if context.load_errors or context.solve_errors:
                lines = [f"{key}: {msg}" for key, msg in sorted({**context.load_errors, **context.solve_errors}.items())]
                path = output_manager.get_workflow_output_path("tables", "errors.txt")
                output_manager.save_file(path, "\n".join(lines) + "\n")
                context.written_files.append(str(path))

        except Exception as e:
            self.logger.error(f"Failed during report writing: {e}", exc_info=True)
            context.is_successful = False
            context.error_message = f"Report writing failed: {e}"

        return context
