import argparse
import logging
from functools import wraps

from src.errors import CheckFailure, InputError, SolverError

from .config import RunConfig, parse_args

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_SOLVER = 3
EXIT_CHECK = 4


def with_args_and_error_handling(func):
    """Decorator turning a `command(config: RunConfig) -> int` into a CLI-safe entry point.

    The wrapped command accepts a RunConfig, an argparse Namespace or an argv list, and maps
    failures to exit codes: input/config problems 2, solver failures 3, failed checks 4.
    """

    @wraps(func)
    def wrapper(config_or_args=None):
        try:
            if isinstance(config_or_args, RunConfig):
                config = config_or_args
            elif isinstance(config_or_args, argparse.Namespace):
                config = RunConfig.from_args(config_or_args)
            else:
                config = RunConfig.from_args(parse_args(config_or_args))
            return func(config)
        except FileNotFoundError as e:
            logger.error("File not found: %s", e)
            return EXIT_INPUT
        except InputError as e:
            logger.error("%s: %s", type(e).__name__, e)
            return EXIT_INPUT
        except SolverError as e:
            logger.error("%s: %s", type(e).__name__, e)
            return EXIT_SOLVER
        except CheckFailure as e:
            logger.error("%s: %s", type(e).__name__, e)
            return EXIT_CHECK

    return wrapper
