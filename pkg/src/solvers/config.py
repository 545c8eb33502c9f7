import logging
import math
from dataclasses import dataclass
from typing import Optional

from src.constants import PLConstants
from src.dual_core import DualPotentials
from src.errors import InputError, StepSizeOutOfRange

logger = logging.getLogger(__name__)

GRADIENT_ASCENT = "gradient_ascent"
COORDINATE_ASCENT = "coordinate_ascent"
COORDINATE_GRADIENT_ASCENT = "coordinate_gradient_ascent"
ALGORITHMS = (GRADIENT_ASCENT, COORDINATE_ASCENT, COORDINATE_GRADIENT_ASCENT)

DEFAULT_MAX_ITERS = 100000
GRAD_TOL_SCALE = 1e-10


@dataclass(frozen=True)
class SolverConfig:
    """Settings of one ascent run.

    `step_size` defaults to eps/2 for both gradient methods and is ignored by coordinate ascent.
    `grad_tol` defaults to 1e-10 * max(1, |Gamma(initial point)|). `pl_constants` together with
    `reference_potentials` enables the pl_ratio and error-bound columns of the trace.
    """

    algorithm: str = COORDINATE_ASCENT
    step_size: Optional[float] = None
    max_iters: int = DEFAULT_MAX_ITERS
    grad_tol: Optional[float] = None
    record_trace: bool = True
    reference_potentials: Optional[DualPotentials] = None
    unsafe_step: bool = False
    pl_constants: Optional[PLConstants] = None
    log_every: int = 1000

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise InputError(f"unknown algorithm {self.algorithm!r}; expected one of {', '.join(ALGORITHMS)}")
        if self.max_iters < 0:
            raise InputError("max_iters must be nonnegative")
        if self.grad_tol is not None and self.grad_tol < 0:
            raise InputError("grad_tol must be nonnegative")


def step_upper_bound(algorithm: str, eps: float) -> float:
    """Largest admissible step (exclusive): eps for gradient ascent, eps/sqrt(2) for the coordinate variant."""
    if algorithm == GRADIENT_ASCENT:
        return eps
    if algorithm == COORDINATE_GRADIENT_ASCENT:
        return eps / math.sqrt(2.0)
    raise InputError(f"{algorithm} takes no step size")


def resolve_step(config: SolverConfig, eps: float) -> float:
    eta = 0.5 * eps if config.step_size is None else float(config.step_size)
    bound = step_upper_bound(config.algorithm, eps)
    if 0 < eta < bound:
        return eta
    if config.unsafe_step and eta > 0 and math.isfinite(eta):
        logger.warning("Step %.6g is outside (0, %.6g); running anyway (unsafe step)", eta, bound)
        return eta
    raise StepSizeOutOfRange(
        f"{config.algorithm} requires step size in (0, {bound:.6g}) for eps={eps:.6g}, got {eta!r}"
    )
