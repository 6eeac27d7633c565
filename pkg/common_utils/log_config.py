import logging
from typing import Optional, Sequence

# Packages whose module-level loggers (logging.getLogger(__name__)) follow the task logger.
LIBRARY_PACKAGES = (
    "core_model", "formulations", "separation", "lagrangian_bound",
    "cpa_engine", "instance_forge", "oracle_verify", "data_sources",
)


def setup_task_logger(logger_name, log_file_path: Optional[str], level=logging.INFO, console_level=logging.INFO,
                      library_packages: Sequence[str] = LIBRARY_PACKAGES):
    """
    Sets up a logger for one CLI run with a detailed file log and terse console output.

    Args:
        logger_name (str): The name for the logger.
        log_file_path (str): The path to the log file, or None for console output only.
        level (int, optional): The minimum level for logs to be written to the file. Defaults to logging.INFO.
        console_level (int, optional): The minimum level for logs shown on stderr. Defaults to logging.INFO.
        library_packages: Package loggers that receive the same handlers.
    """
    logger = logging.getLogger(logger_name)
    logger.setLevel(min(level, console_level))

    # Prevent duplicate handlers
    if logger.hasHandlers():
        logger.handlers.clear()
    logger.propagate = False

    handlers = []
    if log_file_path:
        file_handler = logging.FileHandler(log_file_path, mode='a', encoding='utf-8')
        file_handler.setLevel(level)
        file_handler.setFormatter(logging.Formatter('%(asctime)s - %(name)s - %(levelname)s - %(message)s'))
        handlers.append(file_handler)

    # stdout carries result rows, so the console log goes to stderr
    console_handler = logging.StreamHandler()
    console_handler.setLevel(console_level)
    console_handler.setFormatter(logging.Formatter('%(asctime)s - TOPSTMIN - %(levelname)s - %(message)s'))
    handlers.append(console_handler)

    for handler in handlers:
        logger.addHandler(handler)

    for package in library_packages:
        package_logger = logging.getLogger(package)
        package_logger.handlers.clear()
        package_logger.setLevel(min(level, console_level))
        package_logger.propagate = False
        for handler in handlers:
            package_logger.addHandler(handler)

    return logger
