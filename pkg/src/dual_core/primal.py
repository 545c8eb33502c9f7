import logging
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from src.errors import ZeroWeightCell
from src.measures import Coupling

from .instance import DualPotentials, ProblemInstance
from .objective import gamma_objective, slack

logger = logging.getLogger(__name__)

FEASIBILITY_TOL = 1e-9


def primal_from_dual(inst: ProblemInstance, pot: DualPotentials) -> Coupling:
    """Candidate coupling p_i q_j (f_i + g_j - C_ij)_+ / eps; only positive entries are stored."""
    pot.check_dims(inst)
    density = np.maximum(slack(inst, pot.f, pot.g), 0.0) / inst.eps
    plan = inst.p[:, None] * density * inst.q[None, :]
    return Coupling.from_dense(plan)


def marginal_residual(inst: ProblemInstance, coupling: Coupling) -> Tuple[float, float]:
    return coupling.marginal_residual(inst.p, inst.q)


def primal_objective(inst: ProblemInstance, coupling: Coupling) -> float:
    """<C, pi> + (eps/2) sum pi_ij^2 / (p_i q_j)."""
    if coupling.support_size == 0:
        return 0.0
    base = inst.p[coupling.rows] * inst.q[coupling.cols]
    if np.any(base <= 0):
        raise ZeroWeightCell("coupling puts mass on a cell with p_i q_j = 0")
    transport = inst.cost[coupling.rows, coupling.cols] @ coupling.masses
    penalty = np.sum(coupling.masses ** 2 / base)
    return float(transport + 0.5 * inst.eps * penalty)


@dataclass(frozen=True)
class DualityGap:
    """Primal minus dual value of the candidate coupling; `value` is inf when it is infeasible."""

    value: float
    dual_value: float
    primal_value: float
    feasible: bool

    @property
    def status(self) -> str:
        return "ok" if self.feasible else "infeasible-candidate"


def duality_gap(inst: ProblemInstance, pot: DualPotentials, feas_tol: float = FEASIBILITY_TOL) -> DualityGap:
    dual = gamma_objective(inst, pot)
    coupling = primal_from_dual(inst, pot)
    if max(marginal_residual(inst, coupling)) > feas_tol:
        return DualityGap(value=math.inf, dual_value=dual, primal_value=math.nan, feasible=False)
    primal = primal_objective(inst, coupling)
    return DualityGap(value=max(primal - dual, 0.0), dual_value=dual, primal_value=primal, feasible=True)


def foc_residual(inst: ProblemInstance, pot: DualPotentials) -> float:
    """Largest violation of the first-order conditions, in units of eps."""
    pot.check_dims(inst)
    pos = np.maximum(slack(inst, pot.f, pot.g), 0.0)
    rows = np.abs(pos @ inst.q - inst.eps)
    cols = np.abs(inst.p @ pos - inst.eps)
    return float(max(rows.max(), cols.max()))
