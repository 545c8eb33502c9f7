from .pl_constants import (
    PLConstants,
    ConnectedGeometry,
    VARIANTS,
    segment_count,
    compute_pl_constants,
    compute_pl_constants_modulus,
    compute_pl_constants_connected,
)
from .ratios import (
    localization_radius,
    ensure_reference_optimal,
    pl_ratio,
    error_bound_ratio,
    empirical_pl_constant,
)

__all__ = [
    "PLConstants",
    "ConnectedGeometry",
    "VARIANTS",
    "segment_count",
    "compute_pl_constants",
    "compute_pl_constants_modulus",
    "compute_pl_constants_connected",
    "localization_radius",
    "ensure_reference_optimal",
    "pl_ratio",
    "error_bound_ratio",
    "empirical_pl_constant",
]
