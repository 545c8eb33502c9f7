from typing import NamedTuple

import numpy as np

from src.errors import TOutOfRange

from .instance import DualPotentials, ProblemInstance
from .objective import gamma_objective, slack


class PhiDerivatives(NamedTuple):
    phi: float
    phi_prime: float
    phi_second: float


def _check_t(t: float) -> None:
    if not 0.0 <= t <= 1.0:
        raise TOutOfRange(f"t must lie in [0, 1], got {t!r}")


def phi_path(inst: ProblemInstance, pot_star: DualPotentials, pot: DualPotentials, t: float) -> DualPotentials:
    """(f_t, g_t) = (1 - t)(f*, g*) + t(f, g)."""
    _check_t(t)
    pot.check_dims(inst)
    pot_star.check_dims(inst)
    return DualPotentials((1.0 - t) * pot_star.f + t * pot.f, (1.0 - t) * pot_star.g + t * pot.g)


def phi_derivatives(
    inst: ProblemInstance, pot_star: DualPotentials, pot: DualPotentials, t: float
) -> PhiDerivatives:
    """phi(t) = -Gamma(f_t, g_t) and its first two derivatives.

    The second derivative integrates over the closed set {f_t + g_t >= C}.
    """
    pot_t = phi_path(inst, pot_star, pot, t)
    s = slack(inst, pot_t.f, pot_t.g)
    w = (pot_star.f - pot.f)[:, None] + (pot_star.g - pot.g)[None, :]
    weights = inst.p[:, None] * inst.q[None, :]
    phi_prime = np.sum(weights * w * (1.0 - np.maximum(s, 0.0) / inst.eps))
    phi_second = np.sum(weights * w * w * (s >= 0)) / inst.eps
    return PhiDerivatives(-gamma_objective(inst, pot_t), float(phi_prime), float(phi_second))
