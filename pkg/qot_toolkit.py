#!/usr/bin/env python3
import os
import logging

from src.cli import COMMANDS, EXIT_INPUT, parse_args
from src.errors import InputError


logger = logging.getLogger(__name__)


def main(argv=None):
    # Configure basic logging; adjust level via LOG_LEVEL env if desired
    logging.basicConfig(level=os.environ.get("LOG_LEVEL", "INFO"))
    try:
        args = parse_args(argv)
    except FileNotFoundError as e:
        logger.error("Config file not found: %s", e)
        return EXIT_INPUT
    except InputError as e:
        logger.error("%s", e)
        return EXIT_INPUT
    return COMMANDS[args.command](args)


if __name__ == "__main__":
    raise SystemExit(main())
