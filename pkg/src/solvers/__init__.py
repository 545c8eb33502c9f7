from .config import (
    SolverConfig,
    ALGORITHMS,
    GRADIENT_ASCENT,
    COORDINATE_ASCENT,
    COORDINATE_GRADIENT_ASCENT,
    DEFAULT_MAX_ITERS,
    resolve_step,
    step_upper_bound,
)
from .trace import ConvergenceTrace, TraceRow, TRACE_COLUMNS, format_float
from .foc import solve_1d_foc, solve_1d_foc_rows
from .rates import align_reference, theoretical_rate, iterate_l2_constant
from .ascent import (
    gradient_ascent_run,
    coordinate_ascent_run,
    coordinate_gradient_ascent_run,
    run_solver,
)
from .bounds import (
    BoundViolation,
    check_monotone,
    check_rate_bound,
    check_l2_iterate_bound,
    check_iterate_bounds,
    check_pl_rows,
)

__all__ = [
    "SolverConfig",
    "ALGORITHMS",
    "GRADIENT_ASCENT",
    "COORDINATE_ASCENT",
    "COORDINATE_GRADIENT_ASCENT",
    "DEFAULT_MAX_ITERS",
    "resolve_step",
    "step_upper_bound",
    "ConvergenceTrace",
    "TraceRow",
    "TRACE_COLUMNS",
    "format_float",
    "solve_1d_foc",
    "solve_1d_foc_rows",
    "align_reference",
    "theoretical_rate",
    "iterate_l2_constant",
    "gradient_ascent_run",
    "coordinate_ascent_run",
    "coordinate_gradient_ascent_run",
    "run_solver",
    "BoundViolation",
    "check_monotone",
    "check_rate_bound",
    "check_l2_iterate_bound",
    "check_iterate_bounds",
    "check_pl_rows",
]
