import math
from typing import Optional, Tuple

from src.dual_core import (
    DualPotentials,
    ProblemInstance,
    foc_residual,
    gamma_gradient,
    gamma_objective,
    gradient_l2_norm,
    oplus_l2_distance,
    oplus_sup_distance,
)
from src.errors import ReferenceNotOptimal

from .pl_constants import PLConstants

GAP_FLOOR = 1e-14
REFERENCE_FOC_TOL = 1e-8


def localization_radius(inst: ProblemInstance, pot: DualPotentials, pot_star: DualPotentials) -> Tuple[float, float]:
    """(C_fg, r0) with C_fg the sup distance of the sums and r0 = min(eps / 2C_fg, 1)."""
    c_fg = oplus_sup_distance(pot_star, pot)
    if c_fg == 0:
        return 0.0, 1.0
    return c_fg, min(inst.eps / (2.0 * c_fg), 1.0)


def ensure_reference_optimal(inst: ProblemInstance, pot_star: DualPotentials, tol: float = REFERENCE_FOC_TOL) -> None:
    residual = foc_residual(inst, pot_star)
    if residual > tol:
        raise ReferenceNotOptimal(f"reference potentials violate the first-order conditions by {residual:.3g}")


def pl_ratio(
    inst: ProblemInstance,
    pot: DualPotentials,
    pot_star: DualPotentials,
    consts: PLConstants,
    *,
    check_reference: bool = True,
) -> float:
    """|DGamma|^2 * gamma * max(C_fg, eps) / gap; at least one where the PL inequality holds.

    Returns inf when the gap is below the floor, where the ratio is undefined.
    """
    if check_reference:
        ensure_reference_optimal(inst, pot_star)
    gap = gamma_objective(inst, pot_star) - gamma_objective(inst, pot)
    if gap < GAP_FLOOR:
        return math.inf
    grad_sq = gradient_l2_norm(inst, gamma_gradient(inst, pot)) ** 2
    c_fg = oplus_sup_distance(pot_star, pot)
    return grad_sq * consts.gamma_eps * max(c_fg, inst.eps) / gap


def error_bound_ratio(
    inst: ProblemInstance,
    pot: DualPotentials,
    pot_star: DualPotentials,
    consts: PLConstants,
    *,
    check_reference: bool = True,
) -> float:
    """gamma * max(C_fg, eps) * |DGamma| / |f+g - f*-g*|_L2; inf at the optimum."""
    if check_reference:
        ensure_reference_optimal(inst, pot_star)
    dist = oplus_l2_distance(inst, pot, pot_star)
    if dist < GAP_FLOOR:
        return math.inf
    grad = gradient_l2_norm(inst, gamma_gradient(inst, pot))
    c_fg = oplus_sup_distance(pot_star, pot)
    return consts.gamma_eps * max(c_fg, inst.eps) * grad / dist


def empirical_pl_constant(trace, eps: float, gap_floor: float = 1e-13) -> Optional[float]:
    """Smallest gamma for which the PL inequality holds on every recorded iterate.

    Max over rows of gap / (max(sup_dist, eps) * grad_l2^2); None when no row carries a usable gap.
    """
    best = None
    for row in trace.rows:
        if row.gap is None or row.sup_dist is None or not math.isfinite(row.gap) or row.gap <= gap_floor:
            continue
        if row.grad_l2 <= 0:
            continue
        value = row.gap / (max(row.sup_dist, eps) * row.grad_l2 ** 2)
        best = value if best is None else max(best, value)
    return best
