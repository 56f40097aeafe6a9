"""Configuration."""

from .app import APP_CONFIG, RunConfig
from .logging import configure_logging

__all__ = ("APP_CONFIG", "RunConfig", "configure_logging")
