from typing import Tuple

import numpy as np

from .instance import DualPotentials, ProblemInstance

Gradient = Tuple[np.ndarray, np.ndarray]


def slack(inst: ProblemInstance, f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """The n x m matrix f_i + g_j - C_ij."""
    return f[:, None] + g[None, :] - inst.cost


def _positive_slack(inst: ProblemInstance, pot: DualPotentials) -> np.ndarray:
    pot.check_dims(inst)
    return np.maximum(slack(inst, pot.f, pot.g), 0.0)


def gamma_objective(inst: ProblemInstance, pot: DualPotentials) -> float:
    """Dual objective: <p, f> + <q, g> - (1/2eps) sum_ij p_i q_j (f_i + g_j - C_ij)_+^2."""
    pos = _positive_slack(inst, pot)
    # numpy reduces each row and then the row totals with pairwise summation
    penalty = np.sum((pos ** 2 @ inst.q) * inst.p)
    return float(inst.p @ pot.f + inst.q @ pot.g - penalty / (2.0 * inst.eps))


def gamma_gradient(inst: ProblemInstance, pot: DualPotentials) -> Gradient:
    """(D1, D2) with D1_i = 1 - (1/eps) sum_j q_j (f_i + g_j - C_ij)_+ and symmetrically D2."""
    pos = _positive_slack(inst, pot)
    return 1.0 - (pos @ inst.q) / inst.eps, 1.0 - (inst.p @ pos) / inst.eps


def partial_gradient_f(inst: ProblemInstance, f: np.ndarray, g: np.ndarray) -> np.ndarray:
    return 1.0 - (np.maximum(slack(inst, f, g), 0.0) @ inst.q) / inst.eps


def partial_gradient_g(inst: ProblemInstance, f: np.ndarray, g: np.ndarray) -> np.ndarray:
    return 1.0 - (inst.p @ np.maximum(slack(inst, f, g), 0.0)) / inst.eps


def gradient_l2_norm(inst: ProblemInstance, grad: Gradient) -> float:
    """Norm in L2(P) x L2(Q)."""
    u, v = grad
    return float(np.sqrt(inst.p @ (u * u) + inst.q @ (v * v)))


def phi_gradient_norm_sq(inst: ProblemInstance, pot: DualPotentials) -> float:
    """Squared norm of the gradient of the objective viewed on the sum space: |DGamma|^2 - I0^2."""
    pos = _positive_slack(inst, pot)
    grad = 1.0 - (pos @ inst.q) / inst.eps, 1.0 - (inst.p @ pos) / inst.eps
    i0 = 1.0 - float(inst.p @ pos @ inst.q) / inst.eps
    return max(gradient_l2_norm(inst, grad) ** 2 - i0 * i0, 0.0)


def gradient_lipschitz_bounds(eps: float) -> Tuple[float, float]:
    """(joint, partial) Lipschitz constants of DGamma: 2/eps and 1/eps."""
    return 2.0 / eps, 1.0 / eps
