"""
Logging configuration for the dioperad engine.
Provides structured logging with context and timing of long computations.
"""

import logging
import sys
import time
from datetime import datetime, timezone
from functools import wraps
from typing import Any, Dict

from pythonjsonlogger.json import JsonFormatter

from .config import get_settings

settings = get_settings()

ROOT_LOGGER_NAME = "dioperad_engine"


class StructuredFormatter(JsonFormatter):
    """
    JSON formatter with additional context and metadata.
    """

    def add_fields(
        self,
        log_record: Dict[str, Any],
        record: logging.LogRecord,
        message_dict: Dict[str, Any],
    ) -> None:
        """Add custom fields to log record."""
        super().add_fields(log_record, record, message_dict)

        log_record["timestamp"] = datetime.now(timezone.utc).isoformat()
        log_record["level"] = record.levelname
        log_record["environment"] = settings.environment
        log_record["engine_version"] = settings.engine_version

        if record.exc_info:
            log_record["exception"] = self.formatException(record.exc_info)

        # Flatten the computation coordinates so log searches can filter on them
        context = getattr(record, "context", None)
        if isinstance(context, dict):
            for field in ("slot", "window", "order", "stage", "command", "error_type"):
                if field in context:
                    log_record[field] = context[field]
            log_record["context"] = context

        slot = log_record.get("slot")
        if slot is not None:
            log_record["message"] = f"[slot {slot}] {log_record.get('message', '')}"


class ContextFormatter(logging.Formatter):
    """Readable development formatter that prefixes the slot when present."""

    def format(self, record: logging.LogRecord) -> str:
        prefix = ""
        context = getattr(record, "context", None)
        if isinstance(context, dict) and "slot" in context:
            prefix = f"[slot {context['slot']}] "

        original_format = self._style._fmt
        if prefix:
            self._style._fmt = original_format.replace(
                "%(message)s", f"{prefix}%(message)s"
            )
        result = super().format(record)
        self._style._fmt = original_format
        return result


def setup_logging() -> logging.Logger:
    """
    Configure logging for the engine.

    Returns:
        logging.Logger: Configured logger instance
    """
    logger = logging.getLogger(ROOT_LOGGER_NAME)
    logger.setLevel(getattr(logging, settings.log_level.upper()))
    logger.handlers.clear()

    # Engine logs go to stderr so stdout stays clean for reports
    console_handler = logging.StreamHandler(sys.stderr)

    formatter: logging.Formatter
    if settings.is_production:
        formatter = StructuredFormatter("%(timestamp)s %(level)s %(name)s %(message)s")
    else:
        formatter = ContextFormatter(
            "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
            datefmt="%Y-%m-%d %H:%M:%S",
        )

    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    if settings.log_file:
        file_handler = logging.FileHandler(settings.log_file)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    return logger


def get_logger(name: str) -> logging.Logger:
    """
    Get a logger instance for a specific module.

    Args:
        name: Logger name (usually __name__)

    Returns:
        logging.Logger: Logger instance
    """
    return logging.getLogger(f"{ROOT_LOGGER_NAME}.{name}")


def log_with_context(
    logger: logging.Logger, level: str, message: str, **context
) -> None:
    """
    Log a message with additional context.

    Args:
        logger: Logger instance
        level: Log level (debug, info, warning, error, critical)
        message: Log message
        **context: Additional context key-value pairs
    """
    log_func = getattr(logger, level.lower())
    log_func(message, extra={"context": context})


def log_timing(func):
    """
    Decorator to log a computation's duration and failure type.
    """

    @wraps(func)
    def wrapper(*args, **kwargs):
        logger = get_logger(func.__module__)
        context: Dict[str, Any] = {"function": func.__name__}
        start = time.perf_counter()
        try:
            result = func(*args, **kwargs)
        except Exception as e:
            context["duration_seconds"] = round(time.perf_counter() - start, 6)
            context["error_type"] = type(e).__name__
            log_with_context(logger, "error", f"{func.__name__} failed: {e}", **context)
            raise
        context["duration_seconds"] = round(time.perf_counter() - start, 6)
        log_with_context(logger, "debug", f"{func.__name__} completed", **context)
        return result

    return wrapper


# Initialize logging on module import
app_logger = setup_logging()
