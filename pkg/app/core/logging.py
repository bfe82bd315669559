"""Structured logging configuration"""

import logging
import sys
from typing import Any, Optional

import structlog

from app.core.config import settings


def configure_logging(level: Optional[str] = None) -> None:
    """Configure structured logging on stderr; stdout carries command output only

    Safe to call again: the handler is installed once, level and renderer follow settings.
    """
    level = (level or settings.LOG_LEVEL).upper()
    root = logging.getLogger()
    if not root.handlers:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter("%(message)s"))
        root.addHandler(handler)
    root.setLevel(getattr(logging, level, logging.WARNING))

    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.stdlib.filter_by_level,
            structlog.stdlib.add_logger_name,
            structlog.stdlib.add_log_level,
            structlog.stdlib.PositionalArgumentsFormatter(),
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            structlog.processors.UnicodeDecoder(),
            structlog.dev.ConsoleRenderer(colors=False) if settings.DEBUG
            else structlog.processors.JSONRenderer(),
        ],
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=False,
    )


def bind_run_context(**kwargs: Any) -> None:
    """Attach key/value pairs (command, seed, signature) to every later event"""
    structlog.contextvars.clear_contextvars()
    structlog.contextvars.bind_contextvars(**{k: v for k, v in kwargs.items() if v is not None})


_RESERVED = {"error", "error_type", "operation"}


def get_logger(name: str) -> structlog.BoundLogger:
    return structlog.get_logger(name)


class LoggerMixin:
    """Mixin to add logging capabilities to services"""

    @property
    def logger(self) -> structlog.BoundLogger:
        return get_logger(self.__class__.__name__)

    def log_operation(self, operation: str, **kwargs: Any) -> None:
        """One pipeline stage finished"""
        self.logger.info(f"Operation: {operation}", operation=operation, **kwargs)

    def log_error(self, error: Exception, operation: Optional[str] = None, **kwargs: Any) -> None:
        details = getattr(error, "details", None) or {}
        self.logger.error(
            f"Error in {operation or 'operation'}: {error}",
            error=str(error),
            error_type=type(error).__name__,
            operation=operation,
            **{k: str(v) for k, v in details.items() if k not in kwargs and k not in _RESERVED},
            **kwargs,
        )
