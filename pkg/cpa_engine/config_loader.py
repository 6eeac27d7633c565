"""
Solver configuration files: `key = value` lines, `#` comments. Keys are the
SolverConfig field names; `cut_families` takes a comma-separated list.
"""
import logging
import os
from pathlib import Path
from typing import Any, Dict, Optional, Union

from dotenv import load_dotenv
from pydantic import ValidationError

import config
from .dto import SolverConfig

logger = logging.getLogger(__name__)

# 加载 .env 文件
project_root = Path(__file__).resolve().parent.parent
load_dotenv(dotenv_path=project_root / '.env')


class ConfigError(ValueError):
    """Unreadable or invalid solver configuration."""


def parse_config_text(text: str) -> Dict[str, Any]:
    values: Dict[str, Any] = {}
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {no}: expected 'key = value', got '{line}'")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in SolverConfig.model_fields:
            raise ConfigError(f"line {no}: unknown setting '{key}'")
        if key == "cut_families":
            values[key] = [f.strip() for f in value.split(",") if f.strip() and f.strip().lower() != "none"]
        else:
            values[key] = value
    return values


def load_solver_config(path: Optional[Union[str, Path]] = None, overrides: Optional[Dict[str, Any]] = None) -> SolverConfig:
    """
    Defaults, then the config file (explicit path or $TOPSTMIN_CONFIG), then
    overrides such as CLI flags. None-valued overrides are ignored.
    """
    values: Dict[str, Any] = {}
    path = path or os.getenv(config.CONFIG_ENV_VAR)
    if path:
        file_path = Path(path)
        if not file_path.is_file():
            raise ConfigError(f"config file not found: {file_path}")
        values.update(parse_config_text(file_path.read_text(encoding="utf-8")))
        logger.debug(f"Loaded solver settings from {file_path}: {sorted(values)}")
    values.update({k: v for k, v in (overrides or {}).items() if v is not None})
    try:
        return SolverConfig.model_validate(values)
    except ValidationError as e:
        raise ConfigError(f"invalid solver configuration: {e}") from e
