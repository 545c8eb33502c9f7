import logging
from dataclasses import replace
from typing import Optional, Tuple

import numpy as np

from src.constants import ensure_reference_optimal, error_bound_ratio, pl_ratio
from src.dual_core import (
    DualPotentials,
    ProblemInstance,
    gamma_gradient,
    gamma_objective,
    gradient_l2_norm,
    oplus_l2_distance,
    oplus_sup_distance,
    partial_gradient_f,
    partial_gradient_g,
    sup_distance,
)
from src.errors import InputError, NonFiniteIterate

from .config import (
    COORDINATE_ASCENT,
    COORDINATE_GRADIENT_ASCENT,
    GRAD_TOL_SCALE,
    GRADIENT_ASCENT,
    SolverConfig,
    resolve_step,
    step_upper_bound,
)
from .foc import solve_1d_foc_rows
from .rates import align_reference
from .trace import ConvergenceTrace, TraceRow

logger = logging.getLogger(__name__)

Result = Tuple[DualPotentials, ConvergenceTrace]


class _TraceRecorder:
    """Computes trace rows and owns the stopping test shared by the three algorithms."""

    def __init__(
        self,
        inst: ProblemInstance,
        config: SolverConfig,
        algorithm: str,
        step: Optional[float],
        reference: Optional[DualPotentials],
    ):
        self.inst = inst
        self.config = config
        self.reference = reference
        self.trace = ConvergenceTrace(
            algorithm=algorithm,
            step_size=step,
            unsafe=config.unsafe_step and step is not None and not self._step_is_safe(algorithm, step),
        )
        self.grad_tol = config.grad_tol
        self._pending: Optional[TraceRow] = None
        self._ref_value = None
        if reference is not None:
            reference.check_dims(inst)
            self._ref_value = gamma_objective(inst, reference)
            if config.pl_constants is not None:
                ensure_reference_optimal(inst, reference)

    def _step_is_safe(self, algorithm: str, step: float) -> bool:
        return 0 < step < step_upper_bound(algorithm, self.inst.eps)

    def make_row(self, it: int, pot: DualPotentials, grad) -> TraceRow:
        inst = self.inst
        objective = gamma_objective(inst, pot)
        row = TraceRow(iter=it, objective=objective, grad_l2=gradient_l2_norm(inst, grad))
        if self.grad_tol is None:
            self.grad_tol = GRAD_TOL_SCALE * max(1.0, abs(objective))
        ref = self.reference
        if ref is not None:
            row.gap = self._ref_value - objective
            row.sup_dist = oplus_sup_distance(pot, ref)
            row.l2_dist = oplus_l2_distance(inst, pot, ref)
            row.f_sup_dist = sup_distance(pot.f, ref.f)
            row.g_sup_dist = sup_distance(pot.g, ref.g)
            consts = self.config.pl_constants
            if consts is not None:
                row.pl_ratio = pl_ratio(inst, pot, ref, consts, check_reference=False)
                row.eb_ratio = error_bound_ratio(inst, pot, ref, consts, check_reference=False)
        return row

    def record(self, it: int, pot: DualPotentials, grad) -> bool:
        """Record iterate `it`; True when the stopping tolerance is met."""
        row = self.make_row(it, pot, grad)
        if not np.isfinite(row.objective):
            raise NonFiniteIterate(f"non-finite objective at iteration {it}", trace=self.trace)
        if self.config.record_trace:
            self.trace.append(row)
        else:
            self._pending = row
        every = self.config.log_every
        if every and it % every == 0:
            logger.debug("%s iter %d: objective=%.12g grad_l2=%.3e", self.trace.algorithm, it, row.objective, row.grad_l2)
        return row.grad_l2 <= self.grad_tol

    def finish(self, pot: DualPotentials, converged: bool) -> Result:
        if self._pending is not None:
            self.trace.append(self._pending)
        self.trace.converged = converged
        last = self.trace.last
        logger.info(
            "%s finished after %d iterations (converged=%s): objective=%.12g grad_l2=%.3e",
            self.trace.algorithm, last.iter, converged, last.objective, last.grad_l2,
        )
        return pot, self.trace

    def potentials(self, f: np.ndarray, g: np.ndarray, it: int) -> DualPotentials:
        if not (np.all(np.isfinite(f)) and np.all(np.isfinite(g))):
            if self._pending is not None:
                self.trace.append(self._pending)
            raise NonFiniteIterate(f"non-finite iterate at iteration {it}", trace=self.trace)
        return DualPotentials(f, g)


def _start(inst: ProblemInstance, pot0: DualPotentials) -> DualPotentials:
    pot0.check_dims(inst)
    return pot0


def gradient_ascent_run(inst: ProblemInstance, pot0: DualPotentials, config: SolverConfig) -> Result:
    """(f, g) <- (f, g) + eta * DGamma(f, g) until the gradient norm reaches grad_tol."""
    config = _for_algorithm(config, GRADIENT_ASCENT)
    eta = resolve_step(config, inst.eps)
    rec = _TraceRecorder(inst, config, GRADIENT_ASCENT, eta, config.reference_potentials)
    pot = _start(inst, pot0)
    for it in range(config.max_iters + 1):
        grad = gamma_gradient(inst, pot)
        if rec.record(it, pot, grad):
            return rec.finish(pot, True)
        if it == config.max_iters:
            break
        pot = rec.potentials(pot.f + eta * grad[0], pot.g + eta * grad[1], it + 1)
    return rec.finish(pot, False)


def coordinate_ascent_run(inst: ProblemInstance, g0, config: SolverConfig) -> Result:
    """Alternating exact maximization: f_n = argmax Gamma(., g_n), then g_n+1 = argmax Gamma(f_n, .).

    Row n of the trace holds (f_n, g_n). The reference, when given, is shift-aligned once against g0.
    """
    config = _for_algorithm(config, COORDINATE_ASCENT)
    g = np.asarray(g0.g if isinstance(g0, DualPotentials) else g0, dtype=float).reshape(-1)
    if g.shape[0] != inst.m:
        raise InputError(f"g0 has length {g.shape[0]}, expected {inst.m}")
    if not np.all(np.isfinite(g)):
        raise InputError("g0 must be finite")
    reference = config.reference_potentials
    if reference is not None:
        reference = align_reference(g, reference)
    rec = _TraceRecorder(inst, config, COORDINATE_ASCENT, None, reference)
    C, p, q, eps = inst.cost, inst.p, inst.q, inst.eps

    f = solve_1d_foc_rows(C - g[None, :], q, eps)
    pot = rec.potentials(f, g, 0)
    for it in range(config.max_iters + 1):
        if rec.record(it, pot, gamma_gradient(inst, pot)):
            return rec.finish(pot, True)
        if it == config.max_iters:
            break
        g = solve_1d_foc_rows(C.T - pot.f[None, :], p, eps)
        f = solve_1d_foc_rows(C - g[None, :], q, eps)
        pot = rec.potentials(f, g, it + 1)
    return rec.finish(pot, False)


def coordinate_gradient_ascent_run(inst: ProblemInstance, pot0: DualPotentials, config: SolverConfig) -> Result:
    """Gauss-Seidel gradient steps: the g-step uses the partial gradient at the updated f."""
    config = _for_algorithm(config, COORDINATE_GRADIENT_ASCENT)
    eta = resolve_step(config, inst.eps)
    rec = _TraceRecorder(inst, config, COORDINATE_GRADIENT_ASCENT, eta, config.reference_potentials)
    pot = _start(inst, pot0)
    for it in range(config.max_iters + 1):
        if rec.record(it, pot, gamma_gradient(inst, pot)):
            return rec.finish(pot, True)
        if it == config.max_iters:
            break
        f = pot.f + eta * partial_gradient_f(inst, pot.f, pot.g)
        g = pot.g + eta * partial_gradient_g(inst, f, pot.g)
        pot = rec.potentials(f, g, it + 1)
    return rec.finish(pot, False)


def _for_algorithm(config: SolverConfig, algorithm: str) -> SolverConfig:
    if config.algorithm == algorithm:
        return config
    return replace(config, algorithm=algorithm)


_RUNNERS = {
    GRADIENT_ASCENT: gradient_ascent_run,
    COORDINATE_ASCENT: coordinate_ascent_run,
    COORDINATE_GRADIENT_ASCENT: coordinate_gradient_ascent_run,
}


def run_solver(inst: ProblemInstance, start: DualPotentials, config: SolverConfig) -> Result:
    """Dispatch on config.algorithm; coordinate ascent only reads start.g."""
    runner = _RUNNERS[config.algorithm]
    if config.algorithm == COORDINATE_ASCENT:
        return runner(inst, start.g, config)
    return runner(inst, start, config)
