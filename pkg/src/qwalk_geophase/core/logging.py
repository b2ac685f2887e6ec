"""
Structured logging for numerical runs.

Results go to stdout; every log record goes to stderr. A run binds its
command name once and every service logger picks it up through contextvars.
"""

import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

import structlog
from structlog.stdlib import LoggerFactory
from structlog.types import Processor

from .config import get_settings

# Logged at WARNING or above only
_QUIET_LOGGERS = ("py.warnings", "asyncio")


def _renderer(environment: str) -> Processor:
    if environment == "production":
        return structlog.processors.JSONRenderer()
    return structlog.dev.ConsoleRenderer(colors=sys.stderr.isatty())


def setup_logging(level: Optional[str] = None) -> None:
    """Route structlog and standard logging to stderr.

    Args:
        level: Level name overriding ``LOG_LEVEL``
    """
    settings = get_settings()
    name = (level or settings.LOG_LEVEL).upper()
    log_level = logging.getLevelName(name)
    if not isinstance(log_level, int):
        log_level = logging.WARNING

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
            _renderer(settings.APP_ENVIRONMENT),
        ],
        context_class=dict,
        logger_factory=LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=True,
    )

    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(message)s"))
    root = logging.getLogger()
    root.handlers[:] = [handler]
    root.setLevel(log_level)

    # numpy/scipy RuntimeWarnings (overflow, ill-conditioning) become records
    logging.captureWarnings(True)
    for quiet in _QUIET_LOGGERS:
        logging.getLogger(quiet).setLevel(max(log_level, logging.WARNING))


def get_logger(name: str) -> structlog.stdlib.BoundLogger:
    """Get a structured logger instance for the given name."""
    return structlog.get_logger(name)


def bind_run_context(command: str, workers: int) -> None:
    """Attach the command and worker count to every record of this run."""
    structlog.contextvars.clear_contextvars()
    structlog.contextvars.bind_contextvars(command=command, workers=workers)


def log_run_summary(wall_time_s: float, outputs: Sequence[Path]) -> None:
    """Log the files a finished run wrote and clear the run context."""
    logger = get_logger(__name__)
    logger.info(
        "Run finished",
        wall_time_s=round(wall_time_s, 6),
        outputs=[str(p) for p in outputs],
    )
    structlog.contextvars.clear_contextvars()
