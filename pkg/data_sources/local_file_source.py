from pathlib import Path
from typing import Any, Dict, List, Tuple

from core_model.instance_format import InstanceFormatError, load_instance
from core_model.instance_schema import Instance
from .base_source import InstanceDataSource


class LocalInstanceSource(InstanceDataSource):
    """
    Data source implementation for a single local instance file.
    """
    def __init__(self, file_path: str, logger):
        self.file_path = Path(file_path)
        self.logger = logger
        if not self.file_path.is_file():
            self.logger.error(f"File not found: {self.file_path}")
            raise FileNotFoundError(f"The specified file was not found: {self.file_path}")

    def get_instances(self) -> Tuple[List[Instance], Dict[str, str]]:
        self.logger.info(f"Processing local instance file: {self.file_path}")
        try:
            return [load_instance(self.file_path)], {}
        except InstanceFormatError as e:
            self.logger.warning(f"Skipping {self.file_path.name}: {e}")
            return [], {self.file_path.name: str(e)}

    def get_metadata(self) -> Dict[str, Any]:
        return {
            "title": self.file_path.stem,
            "files": [self.file_path.name],
        }
