# 处理器1：读取生成清单
import logging

from ..base_processor import BaseProcessor
from instance_forge.manifest import load_manifest
from workflows.dto import ForgeContext


class ManifestLoadProcessor(BaseProcessor):
    """
    处理器第一步：读取生成清单，得到生成任务列表。
    A context that already carries jobs (single-job CLI mode) passes through.
    """
    def __init__(self, logger: logging.Logger):
        self.logger = logger

    def process(self, context: ForgeContext) -> ForgeContext:
        new_context = context.model_copy(deep=True)
        if new_context.jobs:
            self.logger.info(f"Using {len(new_context.jobs)} job(s) given on the command line.")
            return new_context

        self.logger.info(f"Reading manifest: {new_context.manifest_path}")
        try:
            if not new_context.manifest_path:
                raise ValueError("no manifest and no job given")
            new_context.jobs = load_manifest(new_context.manifest_path)
            if not new_context.jobs:
                raise ValueError("the manifest lists no job")
            self.logger.info(f"Successfully read {len(new_context.jobs)} generation jobs.")

        except Exception as e:
            self.logger.error(f"Manifest loading failed: {e}", exc_info=True)
            new_context.is_successful = False
            new_context.error_message = f"Manifest loading failed: {e}"

        return new_context
