import logging
from dataclasses import dataclass
from functools import partial
from typing import Callable, Optional, Tuple

from src.errors import InputError, MissingDensityBounds, MissingGeometry

from .discrete_measure import DiscreteMeasure, ball_measure_inf, diameter

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GeometryConstants:
    """Raw geometric inputs of every explicit PL constant.

    `ball_inf_fn(r)` returns inf_y Q(B_r(y)); `empirical` is set when any field was inferred
    from the discrete data instead of being supplied.
    """

    lambda_P: float
    Lambda_P: float
    delta_P: float
    diam_Omega: float
    lipschitz_L: float
    ball_inf_fn: Callable[[float], float]
    dim: int = 1
    diam_Omega_prime: float = 0.0
    empirical: bool = False
    inferred: Tuple[str, ...] = ()

    def __post_init__(self):
        if not (0 < self.lambda_P <= self.Lambda_P):
            raise InputError(f"need 0 < lambda_P <= Lambda_P, got {self.lambda_P!r}, {self.Lambda_P!r}")
        if not (0 < self.delta_P <= 1):
            raise InputError(f"delta_P must lie in (0, 1], got {self.delta_P!r}")
        if self.diam_Omega < 0 or self.diam_Omega_prime < 0:
            raise InputError("diameters must be nonnegative")
        if not self.lipschitz_L > 0:
            raise InputError(f"Lipschitz constant must be positive, got {self.lipschitz_L!r}")
        if self.dim < 1:
            raise InputError("dimension must be a positive integer")

    def to_dict(self) -> dict:
        return {
            "lambda_P": self.lambda_P,
            "Lambda_P": self.Lambda_P,
            "delta_P": self.delta_P,
            "diam_Omega": self.diam_Omega,
            "diam_Omega_prime": self.diam_Omega_prime,
            "lipschitz_L": self.lipschitz_L,
            "dim": self.dim,
            "empirical": self.empirical,
            "inferred": list(self.inferred),
        }


def empirical_geometry(
    P: DiscreteMeasure,
    Q: DiscreteMeasure,
    density_bounds: Optional[Tuple[float, float]] = None,
    delta_P: Optional[float] = None,
    *,
    lipschitz_L: float,
) -> GeometryConstants:
    """Assemble GeometryConstants for a discrete instance.

    Density bounds default to the extremes of the cell densities when P comes from
    `grid_discretize`; delta_P defaults to 1 on such grids. Other measures must supply both.
    """
    inferred = []
    if density_bounds is not None:
        lam, Lam = (float(b) for b in density_bounds)
    elif P.grid is not None:
        dens = P.cell_densities()
        lam, Lam = float(dens.min()), float(dens.max())
        inferred += ["lambda_P", "Lambda_P"]
    else:
        raise MissingDensityBounds("P is not grid-discretized; supply (lambda_P, Lambda_P)")

    if delta_P is not None:
        delta = float(delta_P)
    elif P.grid is not None:
        delta = 1.0
        inferred.append("delta_P")
    else:
        raise MissingGeometry("P is not grid-discretized; supply delta_P")

    geom = GeometryConstants(
        lambda_P=lam,
        Lambda_P=Lam,
        delta_P=delta,
        diam_Omega=diameter(P),
        lipschitz_L=float(lipschitz_L),
        ball_inf_fn=partial(ball_measure_inf, Q),
        dim=P.dim,
        diam_Omega_prime=diameter(Q),
        empirical=bool(inferred),
        inferred=tuple(inferred),
    )
    if inferred:
        logger.debug("Inferred geometry fields: %s", ", ".join(inferred))
    return geom
