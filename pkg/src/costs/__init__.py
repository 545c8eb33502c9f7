from .modulus import Modulus, power_modulus, modulus_from_dict, modulus_radius
from .cost_spec import CostSpec, LipschitzConstant, build_cost_matrix, lipschitz_constant

__all__ = [
    "Modulus",
    "power_modulus",
    "modulus_from_dict",
    "modulus_radius",
    "CostSpec",
    "LipschitzConstant",
    "build_cost_matrix",
    "lipschitz_constant",
]
