"""Console output for the command line; reports go to stdout, progress to stderr."""

import logging
import sys

import colorama
from loguru import logger

from ..logging_config import ROOT_LOGGER_NAME, setup_logging

FORMAT = "<green>{time:YYYY-MM-DD HH:mm:ss}</green> | <level>{level: <8}</level> | {message}"


def setup_console(level: str = "INFO") -> None:
    """Configure loguru for progress lines and align the engine loggers with it."""
    # ANSI colours on legacy Windows consoles; a no-op elsewhere
    colorama.just_fix_windows_console()
    logger.remove()
    logger.add(sys.stderr, level=level.upper(), format=FORMAT, colorize=sys.stderr.isatty())
    engine = setup_logging()
    engine.setLevel(getattr(logging, level.upper()))
    logging.getLogger(ROOT_LOGGER_NAME).propagate = False


__all__ = ["logger", "setup_console"]
