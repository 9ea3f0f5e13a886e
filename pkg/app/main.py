"""lwpt — command-line entry point.

Exit codes: 0 success, 2 invalid configuration or parameters, 3 runtime failure
(divergence, numerical errors), 4 I/O and file-format errors.
"""

from __future__ import annotations

import logging
import sys

import pydantic

from app.config import settings
from app.domain.errors import FormatError, IngestionError, LwptError, ValidationError
from app.infrastructure.cli.commands import run_command
from app.infrastructure.cli.parser import build_parser

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_RUNTIME = 3
EXIT_IO = 4


def main(argv: list[str] | None = None) -> int:
    args = vars(build_parser().parse_args(argv))
    command = args.pop("command")
    config_path = args.pop("config", None)
    level = args.pop("log_level", settings.log_level)
    logging.basicConfig(level=level.upper(), format="%(levelname)s | %(message)s")

    try:
        run_command(command, args, config_path)
    except pydantic.ValidationError as e:
        logger.error("Invalid %s configuration:\n%s", command, e)
        return EXIT_VALIDATION
    except ValidationError as e:
        logger.error("%s", e)
        return EXIT_VALIDATION
    except (FormatError, IngestionError, OSError) as e:
        logger.error("%s", e)
        return EXIT_IO
    except LwptError as e:
        logger.error("%s failed: %s", command, e)
        return EXIT_RUNTIME
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
