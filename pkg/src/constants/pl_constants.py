import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

from src.costs import Modulus, modulus_radius
from src.errors import CheckFailure, COmegaLessThanOne, InputError, MissingGeometry
from src.measures import GeometryConstants

logger = logging.getLogger(__name__)

VARIANTS = ("lipschitz", "modulus", "connected_lipschitz")

CEIL_NUDGE = 1e-12
LITERAL_RTOL = 1e-10


@dataclass(frozen=True)
class PLConstants:
    """Explicit coercivity and PL constants for one geometry, one eps and one variant.

    `gamma_literal` is the expanded closed form of gamma_eps, evaluated independently of the
    kappa/alpha chain.
    """

    kappa: float
    alpha: float
    beta_eps: float
    gamma_eps: float
    radius: float
    variant: str
    empirical_flag: bool = False
    gamma_literal: float = math.nan
    inputs: Dict[str, Any] = field(default_factory=dict)

    def to_report(self) -> Dict[str, Any]:
        return {
            "variant": self.variant,
            "kappa": self.kappa,
            "alpha": self.alpha,
            "beta_eps": self.beta_eps,
            "gamma_eps": self.gamma_eps,
            "radius": self.radius,
            "empirical": self.empirical_flag,
            "inputs": dict(self.inputs),
        }


@dataclass(frozen=True)
class ConnectedGeometry:
    """User-supplied data for a connected, non-convex support: either delta_P_tilde directly or delta_Omega."""

    C_Omega: float
    delta_Omega: Optional[float] = None
    delta_P_tilde: Optional[float] = None

    def resolve_delta(self, lambda_P: float) -> float:
        if self.delta_P_tilde is not None:
            return float(self.delta_P_tilde)
        if self.delta_Omega is None:
            raise MissingGeometry("connected variant needs delta_Omega or delta_P_tilde")
        return min(1.0, lambda_P * float(self.delta_Omega))


def segment_count(x: float) -> int:
    """Ceiling of x with a relative downward nudge; never less than one segment."""
    if not x > 0:
        return 1
    return max(1, math.ceil(x - CEIL_NUDGE * max(1.0, abs(x))))


def _check_inputs(geom: Optional[GeometryConstants], eps: float) -> GeometryConstants:
    if geom is None:
        raise MissingGeometry("geometry constants are required")
    if not eps > 0:
        raise InputError(f"eps must be positive, got {eps!r}")
    return geom


def _assemble(
    *,
    variant: str,
    geom: GeometryConstants,
    delta: float,
    radius: float,
    segments: int,
    d: int,
    extra_factor: float = 1.0,
    inputs: Dict[str, Any],
) -> PLConstants:
    ball = float(geom.ball_inf_fn(radius))
    if not 0 < ball <= 1:
        raise InputError(f"ball mass at radius {radius!r} must lie in (0, 1], got {ball!r}")
    density_ratio = (geom.lambda_P / geom.Lambda_P) ** 2
    kappa = delta * min(radius, 1.0) ** d
    alpha = density_ratio * ball / (extra_factor * segments ** (d + 2))
    beta = kappa * alpha / 4.0
    gamma = 4.0 / beta

    literal = (
        16.0 / delta * max(1.0 / radius, 1.0) ** d / density_ratio * extra_factor * segments ** (d + 2) / ball
    )
    if abs(literal - gamma) > LITERAL_RTOL * gamma:
        raise CheckFailure(f"gamma_eps {gamma!r} disagrees with its closed form {literal!r}")

    inputs = dict(inputs, ball_inf=ball, segments=segments, dim=d)
    logger.debug("%s constants: radius=%.6g kappa=%.6g alpha=%.6g gamma=%.6g", variant, radius, kappa, alpha, gamma)
    return PLConstants(
        kappa=kappa,
        alpha=alpha,
        beta_eps=beta,
        gamma_eps=gamma,
        radius=radius,
        variant=variant,
        empirical_flag=geom.empirical,
        gamma_literal=literal,
        inputs=inputs,
    )


def compute_pl_constants(geom: Optional[GeometryConstants], eps: float, d: Optional[int] = None) -> PLConstants:
    """Constants for an L-Lipschitz cost on a convex support, at ball radius eps / 8L."""
    geom = _check_inputs(geom, eps)
    d = geom.dim if d is None else int(d)
    L = geom.lipschitz_L
    radius = eps / (8.0 * L)
    return _assemble(
        variant="lipschitz",
        geom=geom,
        delta=geom.delta_P,
        radius=radius,
        segments=segment_count(8.0 * L * geom.diam_Omega / eps),
        d=d,
        inputs=dict(geom.to_dict(), eps=eps),
    )


def compute_pl_constants_modulus(
    geom: Optional[GeometryConstants],
    modulus: Modulus,
    eps: float,
    d: Optional[int] = None,
    R: Optional[float] = None,
) -> PLConstants:
    """Constants for a cost with modulus of continuity omega; R defaults to max(1, diam Omega, diam Omega')."""
    geom = _check_inputs(geom, eps)
    d = geom.dim if d is None else int(d)
    if R is None:
        R = max(1.0, geom.diam_Omega, geom.diam_Omega_prime)
    radius = modulus_radius(modulus, eps, R)
    return _assemble(
        variant="modulus",
        geom=geom,
        delta=geom.delta_P,
        radius=radius,
        segments=segment_count(geom.diam_Omega / radius),
        d=d,
        inputs=dict(geom.to_dict(), eps=eps, R=R, coordinatewise=modulus.coordinatewise),
    )


def compute_pl_constants_connected(
    geom_tilde: ConnectedGeometry,
    geom: Optional[GeometryConstants],
    eps: float,
    d: Optional[int] = None,
) -> PLConstants:
    """Lipschitz-case constants on a connected support: delta_P replaced by its tilde version, times C_Omega."""
    geom = _check_inputs(geom, eps)
    if not geom_tilde.C_Omega >= 1:
        raise COmegaLessThanOne(f"C_Omega must be >= 1, got {geom_tilde.C_Omega!r}")
    d = geom.dim if d is None else int(d)
    delta = geom_tilde.resolve_delta(geom.lambda_P)
    if not 0 < delta <= 1:
        raise InputError(f"delta_P_tilde must lie in (0, 1], got {delta!r}")
    L = geom.lipschitz_L
    return _assemble(
        variant="connected_lipschitz",
        geom=geom,
        delta=delta,
        radius=eps / (8.0 * L),
        segments=segment_count(8.0 * L * geom.diam_Omega / eps),
        d=d,
        extra_factor=float(geom_tilde.C_Omega),
        inputs=dict(geom.to_dict(), eps=eps, C_Omega=geom_tilde.C_Omega, delta_P_tilde=delta),
    )
