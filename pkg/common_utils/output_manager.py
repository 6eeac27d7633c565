import logging
from pathlib import Path
from typing import Union


class OutputManager:
    """
    Owns one output directory: tables, solution files and generated
    instances are written through it so that every written path is logged.
    """
    def __init__(self, base_output_dir: Union[str, Path], logger: logging.Logger):
        self.base_output_dir = Path(base_output_dir)
        self.logger = logger
        self.base_output_dir.mkdir(parents=True, exist_ok=True)
        self.logger.info(f"Output directory set to: {self.base_output_dir}")

    def get_workflow_output_path(self, workflow_name: str, filename: str) -> Path:
        """`<base>/<workflow_name>/<filename>`; workflow_name may contain '/'."""
        workflow_dir = self.base_output_dir / workflow_name
        workflow_dir.mkdir(parents=True, exist_ok=True)
        return workflow_dir / filename

    def save_file(self, file_path: Union[str, Path], content: str) -> Path:
        """Writes text, creating parent directories. Paths outside the base directory are allowed."""
        file_path = Path(file_path)
        try:
            file_path.parent.mkdir(parents=True, exist_ok=True)
            file_path.write_text(content, encoding='utf-8')
            self.logger.debug(f"File saved: {file_path}")
        except OSError as e:
            self.logger.error(f"Error saving file {file_path}: {e}")
            raise
        return file_path
