from dataclasses import dataclass

from src.dual_core import (
    DualPotentials,
    ProblemInstance,
    duality_gap,
    foc_residual,
    gamma_objective,
    marginal_residual,
    primal_from_dual,
)
from src.errors import InputError


@dataclass(frozen=True)
class KKTReport:
    foc_residual: float
    marginal_residual: float
    duality_gap: float
    objective: float
    tol: float

    @property
    def passed(self) -> bool:
        return (
            self.foc_residual <= self.tol
            and self.marginal_residual <= self.tol
            and abs(self.duality_gap) <= self.tol * (1.0 + abs(self.objective))
        )

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self) -> dict:
        return {
            "foc_residual": self.foc_residual,
            "marginal_residual": self.marginal_residual,
            "duality_gap": self.duality_gap,
            "objective": self.objective,
            "tol": self.tol,
            "pass": self.passed,
        }


def kkt_certificate(inst: ProblemInstance, pot: DualPotentials, tol: float) -> KKTReport:
    """First-order conditions, feasibility of the induced coupling and a vanishing duality gap."""
    if not tol > 0:
        raise InputError(f"tol must be positive, got {tol!r}")
    return KKTReport(
        foc_residual=foc_residual(inst, pot),
        marginal_residual=max(marginal_residual(inst, primal_from_dual(inst, pot))),
        duality_gap=duality_gap(inst, pot, feas_tol=tol).value,
        objective=gamma_objective(inst, pot),
        tol=tol,
    )
