# 处理器3：生成汇总表
import logging

from ..base_processor import BaseProcessor
from cli_bench.aggregate import compare_formulations, cut_impact, render_aggregate
from cli_bench.records import render_records
from workflows.dto import BenchContext


class AggregateProcessor(BaseProcessor):
    """
    处理器第三步：把逐实例记录整理成 CSV 表格。
    """
    def __init__(self, logger: logging.Logger):
        self.logger = logger

    def process(self, context: BenchContext) -> BenchContext:
        new_context = context.model_copy(deep=True)
        if not new_context.is_successful:
            return new_context

        try:
            deterministic = new_context.deterministic
            primary = new_context.records.get(new_context.primary_run, [])
            new_context.tables["results"] = render_records(primary, deterministic)
            new_context.tables["aggregate"] = render_aggregate(primary, deterministic)

            if new_context.compare_formulations:
                new_context.tables["formulations"] = compare_formulations(
                    new_context.records.get("mixed", []), new_context.records.get("compact", []), deterministic)
            if new_context.cut_impact:
                settings = {run.label: new_context.records.get(run.label, []) for run in new_context.runs[1:]
                            if run.label not in ("compact", "mixed")}
                new_context.tables["cut_impact"] = cut_impact(settings, deterministic)
            self.logger.info(f"Built tables: {sorted(new_context.tables)}")

        except Exception as e:
            self.logger.error(f"Aggregation failed: {e}", exc_info=True)
            new_context.is_successful = False
            new_context.error_message = f"Aggregation failed: {e}"

        return new_context
