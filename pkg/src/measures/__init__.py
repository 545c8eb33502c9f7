from .discrete_measure import (
    DiscreteMeasure,
    GridInfo,
    make_measure,
    grid_discretize,
    ball_measure_inf,
    diameter,
    empirical_cone_constant,
)
from .geometry import GeometryConstants, empirical_geometry
from .coupling import Coupling

__all__ = [
    "DiscreteMeasure",
    "GridInfo",
    "make_measure",
    "grid_discretize",
    "ball_measure_inf",
    "diameter",
    "empirical_cone_constant",
    "GeometryConstants",
    "empirical_geometry",
    "Coupling",
]
