"""
Logging setup for command-line entry points
"""

import logging

from ptampc.core.config import Settings


def configure_logging(settings: Settings) -> None:
    """
    Configure root logging once for a CLI invocation

    Logs go to stderr so that report output on stdout stays byte-stable.

    Args:
        settings: Toolkit settings providing level and format
    """
    logging.basicConfig(
        level=getattr(logging, settings.log_level, logging.INFO),
        format=settings.log_format,
    )
