# 处理器1：加载实例
import logging
import os

from ..base_processor import BaseProcessor
from data_sources.directory_source import DirectoryInstanceSource
from data_sources.local_file_source import LocalInstanceSource
from workflows.dto import BenchContext


class InstanceLoadProcessor(BaseProcessor):
    """
    处理器第一步：根据输入（目录或单个文件）加载所有实例。
    """
    def __init__(self, logger: logging.Logger):
        self.logger = logger

    def process(self, context: BenchContext) -> BenchContext:
        new_context = context.model_copy(deep=True)

        self.logger.info(f"Loading instances from: {new_context.source_input}")
        try:
            if os.path.isdir(new_context.source_input):
                data_source = DirectoryInstanceSource(new_context.source_input, self.logger)
            elif os.path.isfile(new_context.source_input):
                data_source = LocalInstanceSource(new_context.source_input, self.logger)
            else:
                raise ValueError(f"Invalid input source: {new_context.source_input}")

            instances, errors = data_source.get_instances()
            if new_context.variant_override:
                instances = [inst.evolve(variant=new_context.variant_override) for inst in instances]
            new_context.instances = instances
            new_context.load_errors = errors
            new_context.source_metadata = data_source.get_metadata()
            if not instances:
                raise ValueError("no instance could be loaded")
            self.logger.info(f"Successfully loaded {len(instances)} instances ({len(errors)} skipped).")

        except Exception as e:
            self.logger.error(f"Instance loading failed: {e}", exc_info=True)
            new_context.is_successful = False
            new_context.error_message = f"Instance loading failed: {e}"

        return new_context
