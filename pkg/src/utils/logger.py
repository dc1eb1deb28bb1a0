#!/usr/bin/env python3
"""
Logging configuration
"""
import logging
import sys
from pathlib import Path


LOGGER_NAME = 'uniserial_lab'


def setup_logger(config: dict) -> logging.Logger:
    """
    Setup the project logger with file and console handlers

    Library modules log through children of this logger
    (``uniserial_lab.engine``, ``uniserial_lab.decompose`` ...), so calling
    this once from the CLI configures everything.

    Args:
        config: Logging configuration dict (level, file, console)

    Returns:
        Configured logger
    """
    logger = logging.getLogger(LOGGER_NAME)
    logger.setLevel(getattr(logging, config.get('level', 'INFO')))

    # Re-running the CLI in one process must not stack handlers
    for handler in list(logger.handlers):
        logger.removeHandler(handler)

    formatter = logging.Formatter(
        '%(asctime)s | %(levelname)8s | %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )

    if config.get('console', True):
        # Force UTF-8 encoding for Windows console
        if sys.platform == 'win32':
            import io
            sys.stdout = io.TextIOWrapper(sys.stdout.buffer, encoding='utf-8', errors='replace')

        # JSON reports own stdout, so the CLI may send logs to stderr
        stream = sys.stderr if config.get('stream') == 'stderr' else sys.stdout
        console_handler = logging.StreamHandler(stream)
        console_handler.setFormatter(formatter)
        logger.addHandler(console_handler)

    if config.get('file'):
        log_file = Path(config['file'])
        log_file.parent.mkdir(parents=True, exist_ok=True)

        file_handler = logging.FileHandler(log_file, encoding='utf-8')
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    return logger


def get_logger(area: str) -> logging.Logger:
    """Child logger for a library area, e.g. get_logger('engine')"""
    return logging.getLogger(f"{LOGGER_NAME}.{area}")
