from typing import Union

import numpy as np

from src.dual_core import DualPotentials, ProblemInstance, oplus_sup_distance
from src.errors import InputError, MissingReference

from .config import COORDINATE_ASCENT, GRADIENT_ASCENT, SolverConfig, resolve_step

StartPoint = Union[DualPotentials, np.ndarray]


def align_reference(g0: np.ndarray, reference: DualPotentials) -> DualPotentials:
    """Shift (f*, g*) to (f* + a, g* - a) with a minimizing |g0 - g* + a|_inf."""
    d = np.asarray(g0, dtype=float) - reference.g
    return reference.shifted(-0.5 * (d.max() + d.min()))


def _start_distance(config: SolverConfig, start: StartPoint, reference: DualPotentials) -> float:
    if config.algorithm == COORDINATE_ASCENT:
        g0 = start.g if isinstance(start, DualPotentials) else np.asarray(start, dtype=float)
        d = g0 - reference.g
        # inf over a of |g0 - g* + a|_inf
        return float(0.5 * (d.max() - d.min()))
    return oplus_sup_distance(start, reference)


def _reference(config: SolverConfig) -> DualPotentials:
    if config.reference_potentials is None:
        raise MissingReference("rate constants need reference potentials")
    return config.reference_potentials


def theoretical_rate(inst: ProblemInstance, config: SolverConfig, start: StartPoint, gamma_eps: float) -> float:
    """Contraction factor q of the configured algorithm: gap_n <= (1 - q)^n gap_0."""
    if not gamma_eps > 0:
        raise InputError(f"gamma_eps must be positive, got {gamma_eps!r}")
    eps = inst.eps
    scale = max(2.0 * _start_distance(config, start, _reference(config)), eps)
    if config.algorithm == COORDINATE_ASCENT:
        return eps / (2.0 * gamma_eps * scale)
    eta = resolve_step(config, eps)
    if config.algorithm == GRADIENT_ASCENT:
        return eta * (1.0 - eta / eps) / (gamma_eps * scale)
    return eta * (1.0 - eta / (2.0 * eps)) / (2.0 * gamma_eps * scale)


def iterate_l2_constant(inst: ProblemInstance, config: SolverConfig, start: StartPoint, gamma_eps: float) -> float:
    """K with |f_n+g_n - f*-g*|^2_L2 <= K * gap_0 * (1 - q)^n."""
    if not gamma_eps > 0:
        raise InputError(f"gamma_eps must be positive, got {gamma_eps!r}")
    eps = inst.eps
    scale = max(2.0 * _start_distance(config, start, _reference(config)), eps)
    spread = (gamma_eps * scale) ** 2
    if config.algorithm == COORDINATE_ASCENT:
        return 2.0 * spread / eps
    eta = resolve_step(config, eps)
    if config.algorithm == GRADIENT_ASCENT:
        return spread / (eta * (1.0 - eta / eps))
    return 2.0 * spread / (eta * (1.0 - eta / (2.0 * eps)))
