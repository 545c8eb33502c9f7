from .instance import ProblemInstance, DualPotentials
from .objective import (
    slack,
    gamma_objective,
    gamma_gradient,
    partial_gradient_f,
    partial_gradient_g,
    gradient_l2_norm,
    phi_gradient_norm_sq,
    gradient_lipschitz_bounds,
)
from .primal import (
    DualityGap,
    primal_from_dual,
    marginal_residual,
    primal_objective,
    duality_gap,
    foc_residual,
)
from .distances import oplus_sup_distance, oplus_l2_distance, sup_distance
from .path import PhiDerivatives, phi_path, phi_derivatives

__all__ = [
    "ProblemInstance",
    "DualPotentials",
    "slack",
    "gamma_objective",
    "gamma_gradient",
    "partial_gradient_f",
    "partial_gradient_g",
    "gradient_l2_norm",
    "phi_gradient_norm_sq",
    "gradient_lipschitz_bounds",
    "DualityGap",
    "primal_from_dual",
    "marginal_residual",
    "primal_objective",
    "duality_gap",
    "foc_residual",
    "oplus_sup_distance",
    "oplus_l2_distance",
    "sup_distance",
    "PhiDerivatives",
    "phi_path",
    "phi_derivatives",
]
