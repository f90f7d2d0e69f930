import logging
from typing import Optional

from rich.console import Console
from rich.logging import RichHandler

from app.config.settings import settings


def configure_logging(level: Optional[str] = None, quiet: bool = False) -> None:
    """
    Install a rich handler on the root logger.

    Logs go to stderr so that stdout stays clean for JSON summaries.
    """
    if quiet:
        level = "WARNING"
    level = (level or settings.LOG_LEVEL).upper()

    handler = RichHandler(
        console=Console(stderr=True),
        show_path=settings.DEBUG,
        rich_tracebacks=settings.DEBUG,
    )
    logging.basicConfig(
        level=level,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[handler],
        force=True,
    )
