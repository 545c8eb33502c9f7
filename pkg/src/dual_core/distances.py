import numpy as np

from .instance import DualPotentials, ProblemInstance


def oplus_sup_distance(potA: DualPotentials, potB: DualPotentials) -> float:
    """max_ij |(fA_i + gA_j) - (fB_i + gB_j)| without forming the n x m matrix."""
    df = potA.f - potB.f
    dg = potA.g - potB.g
    return float(max(df.max() + dg.max(), -(df.min() + dg.min())))


def oplus_l2_distance(inst: ProblemInstance, potA: DualPotentials, potB: DualPotentials) -> float:
    """L2(P x Q) distance of the sums, as Var_P(df) + Var_Q(dg) + (E_P df + E_Q dg)^2."""
    df = potA.f - potB.f
    dg = potA.g - potB.g
    mean_f = inst.p @ df
    mean_g = inst.q @ dg
    var_f = inst.p @ (df - mean_f) ** 2
    var_g = inst.q @ (dg - mean_g) ** 2
    return float(np.sqrt(max(var_f + var_g + (mean_f + mean_g) ** 2, 0.0)))


def sup_distance(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.max(np.abs(a - b)))
