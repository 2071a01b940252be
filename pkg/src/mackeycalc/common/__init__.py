"""Common utilities and configuration."""

from mackeycalc.common.config import settings
from mackeycalc.common.logging import get_logger

__all__ = ["settings", "get_logger"]
