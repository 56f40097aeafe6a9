from __future__ import annotations

import logging
import logging.config
import os
import pathlib
from typing import TYPE_CHECKING, ClassVar

from .app import APP_CONFIG

if TYPE_CHECKING:
    from typing import Any

__all__ = ("LOG_FILE", "ColourFormatter", "configure_logging", "wants_colour")

LOG_FILE = "shapetaylor.log"
_MAX_BYTES = 32 * 1024 * 1024
_BACKUPS = 5
_DATEFMT = "%Y-%m-%d %H:%M:%S"


def wants_colour(stream: object) -> bool:
    """Colour only interactive streams, honouring ``NO_COLOR`` and ``FORCE_COLOR``."""
    if os.environ.get("NO_COLOR"):
        return False
    if os.environ.get("FORCE_COLOR"):
        return True
    isatty = getattr(stream, "isatty", None)
    return bool(isatty and isatty()) and os.environ.get("TERM") != "dumb"


class ColourFormatter(logging.Formatter):
    """Formatter that colours the level name with ANSI escapes."""

    _RESET = "\x1b[0m"
    _LEVELS: ClassVar[dict[int, str]] = {
        logging.DEBUG: "\x1b[40;1m",
        logging.INFO: "\x1b[34;1m",
        logging.WARNING: "\x1b[33;1m",
        logging.ERROR: "\x1b[31m",
        logging.CRITICAL: "\x1b[41m",
    }

    def __init__(self) -> None:
        super().__init__(datefmt=_DATEFMT)

    def format(self, record: logging.LogRecord) -> str:
        colour = self._LEVELS.get(record.levelno, self._LEVELS[logging.DEBUG])
        stamp = self.formatTime(record, self.datefmt)
        line = (
            f"\x1b[30;1m{stamp}{self._RESET} {colour}{record.levelname:<8}{self._RESET} "
            f"\x1b[35m{record.name}{self._RESET} {record.getMessage()}"
        )
        if record.exc_info:
            line += f"\n\x1b[31m{self.formatException(record.exc_info)}{self._RESET}"
        return line


def _handlers(log_dir: pathlib.Path, stream_formatter: str) -> dict[str, dict[str, Any]]:
    return {
        "file": {
            "class": "logging.handlers.RotatingFileHandler",
            "filename": str(log_dir / LOG_FILE),
            "mode": "w",
            "maxBytes": _MAX_BYTES,
            "backupCount": _BACKUPS,
            "encoding": "utf-8",
            "formatter": "standard",
        },
        "stream": {
            "class": "logging.StreamHandler",
            "formatter": stream_formatter,
        },
    }


def configure_logging(
    level: str | int | None = None, *, log_dir: str | pathlib.Path = "./logs/"
) -> None:
    """Install stream and rotating-file logging for the ``shapetaylor`` loggers.

    Warnings raised through :mod:`warnings` (mode truncation among them) are
    routed to the ``py.warnings`` logger and end up in the same handlers.
    """
    directory = pathlib.Path(log_dir)
    directory.mkdir(parents=True, exist_ok=True)
    resolved = APP_CONFIG.log_level if level is None else level
    if isinstance(resolved, int):
        resolved = logging.getLevelName(resolved)
    stream_formatter = "colour" if wants_colour(logging.StreamHandler().stream) else "standard"

    logging.config.dictConfig(
        {
            "version": 1,
            "disable_existing_loggers": False,
            "formatters": {
                "standard": {
                    "format": "[{asctime}] [{levelname}] {name}: {message}",
                    "datefmt": _DATEFMT,
                    "style": "{",
                },
                "colour": {"()": ColourFormatter},
            },
            "handlers": _handlers(directory, stream_formatter),
            "loggers": {
                "shapetaylor": {
                    "propagate": False,
                    "level": resolved,
                    "handlers": ["stream", "file"],
                },
                "py.warnings": {
                    "propagate": False,
                    "level": "WARNING",
                    "handlers": ["stream", "file"],
                },
            },
            "root": {"level": "WARNING", "handlers": ["stream"]},
        }
    )
    logging.captureWarnings(True)
