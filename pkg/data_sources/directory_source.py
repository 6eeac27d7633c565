from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import config
from core_model.instance_format import InstanceFormatError, load_instance
from core_model.instance_schema import Instance
from .base_source import InstanceDataSource


class DirectoryInstanceSource(InstanceDataSource):
    """
    Every instance file directly inside a directory, in file-name order.
    Files that fail to parse are reported, not fatal.
    """
    def __init__(self, directory: str, logger, suffixes: Optional[Sequence[str]] = None):
        self.directory = Path(directory)
        self.logger = logger
        self.suffixes = tuple(s.lower() for s in (suffixes or config.INSTANCE_FILE_SUFFIXES))
        if not self.directory.is_dir():
            self.logger.error(f"Directory not found: {self.directory}")
            raise NotADirectoryError(f"The specified directory was not found: {self.directory}")

    def _files(self) -> List[Path]:
        return sorted(p for p in self.directory.iterdir() if p.is_file() and p.suffix.lower() in self.suffixes)

    def get_instances(self) -> Tuple[List[Instance], Dict[str, str]]:
        files = self._files()
        self.logger.info(f"Loading {len(files)} instance files from {self.directory}")
        instances, errors = [], {}
        for path in files:
            try:
                instances.append(load_instance(path))
            except (InstanceFormatError, OSError) as e:
                self.logger.warning(f"Skipping {path.name}: {e}")
                errors[path.name] = str(e)
        instances.sort(key=lambda inst: inst.name)
        return instances, errors

    def get_metadata(self) -> Dict[str, Any]:
        return {
            "title": self.directory.name,
            "files": [p.name for p in self._files()],
        }
