"""Entry point: ``python -m isoruled`` and the ``isoruled`` console script."""

import logging
import os
import sys
from typing import List, Optional

from isoruled.command import CommandRunner

LOG_LEVEL_ENV = "ISORULED_LOG_LEVEL"
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def configure_logging() -> None:
    level = os.environ.get(LOG_LEVEL_ENV, "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), format=LOG_FORMAT)


def main(argv: Optional[List[str]] = None) -> int:
    configure_logging()
    return CommandRunner().run(
        "isoruled.commands",
        prog="isoruled",
        description="Build and verify ruled submanifolds over 1-isotropic minimal surfaces",
        args=argv,
    )


if __name__ == "__main__":
    sys.exit(main())
