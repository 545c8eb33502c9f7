from .args import build_arg_parser
from .config import RunConfig, parse_args, resolve_reference
from .error_handling import (
    with_args_and_error_handling,
    EXIT_OK,
    EXIT_INPUT,
    EXIT_SOLVER,
    EXIT_CHECK,
)
from .run_solve import cmd_solve
from .run_verify import cmd_verify
from .run_constants import cmd_constants
from .run_compare import cmd_compare
from .run_oracle import cmd_oracle

COMMANDS = {
    "solve": cmd_solve,
    "verify": cmd_verify,
    "constants": cmd_constants,
    "compare": cmd_compare,
    "oracle": cmd_oracle,
}

__all__ = [
    "build_arg_parser",
    "RunConfig",
    "parse_args",
    "resolve_reference",
    "with_args_and_error_handling",
    "EXIT_OK",
    "EXIT_INPUT",
    "EXIT_SOLVER",
    "EXIT_CHECK",
    "cmd_solve",
    "cmd_verify",
    "cmd_constants",
    "cmd_compare",
    "cmd_oracle",
    "COMMANDS",
]
