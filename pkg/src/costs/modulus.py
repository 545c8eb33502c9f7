import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from src.errors import ConfigError, InputError, InvalidModulus, ZeroRadius

logger = logging.getLogger(__name__)

BISECTION_RTOL = 1e-12
_LADDER = np.concatenate(([0.0], np.logspace(-6, 3, 64)))


@dataclass(frozen=True)
class Modulus:
    """Modulus of continuity omega of the cost.

    `coordinatewise` records that |c(x,y) - c(x',y')| <= omega(|x-x'|) + omega(|y-y'|) holds,
    which allows the radius omega^{-1}(eps/8).
    """

    eval: Callable[[float], float]
    inverse_eval: Optional[Callable[[float], float]] = None
    coordinatewise: bool = False

    def __post_init__(self):
        values = np.array([float(self.eval(r)) for r in _LADDER])
        if values[0] != 0:
            raise InvalidModulus(f"omega(0) must be 0, got {values[0]!r}")
        if np.any(np.diff(values) < 0) or np.any(values < 0):
            raise InvalidModulus("omega must be nonnegative and nondecreasing")

    def __call__(self, r: float) -> float:
        return float(self.eval(r))


def power_modulus(scale: float, exponent: float = 1.0, coordinatewise: bool = False) -> Modulus:
    """omega(r) = scale * r**exponent, with its closed-form inverse."""
    if not (scale > 0 and exponent > 0):
        raise InvalidModulus(f"need scale > 0 and exponent > 0, got {scale!r}, {exponent!r}")
    return Modulus(
        eval=lambda r: scale * r ** exponent,
        inverse_eval=lambda s: (s / scale) ** (1.0 / exponent),
        coordinatewise=coordinatewise,
    )


def modulus_from_dict(data: dict) -> Modulus:
    if not isinstance(data, dict):
        raise ConfigError("modulus JSON must be an object")
    kind = data.get("kind", "power")
    if kind != "power":
        raise InvalidModulus(f"unsupported modulus kind {kind!r}")
    if "scale" not in data:
        raise ConfigError("power modulus needs 'scale'")
    try:
        scale = float(data["scale"])
        exponent = float(data.get("exponent", 1.0))
    except (TypeError, ValueError) as e:
        raise ConfigError(f"invalid power modulus: {e}") from e
    return power_modulus(scale, exponent, coordinatewise=bool(data.get("coordinatewise", False)))


def _sup_sublevel(fn: Callable[[float], float], level: float, R: float) -> float:
    """sup{r in [0, R]: fn(r) <= level} for nondecreasing fn with fn(0) = 0."""
    if fn(R) <= level:
        return R
    lo, hi = 0.0, R
    for _ in range(2000):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if fn(mid) <= level:
            lo = mid
        else:
            hi = mid
        if hi - lo <= BISECTION_RTOL * hi:
            break
    return lo


def modulus_radius(modulus: Modulus, eps: float, R: float) -> float:
    """Radius at which the cost oscillates by at most eps/8 per coordinate, truncated at R."""
    if not (eps > 0 and R > 0):
        raise InputError(f"need eps > 0 and R > 0, got {eps!r}, {R!r}")
    if modulus.coordinatewise and modulus.inverse_eval is not None:
        radius = min(float(modulus.inverse_eval(eps / 8.0)), R)
    elif modulus.coordinatewise:
        radius = _sup_sublevel(modulus, eps / 8.0, R)
    else:
        radius = _sup_sublevel(lambda r: 2.0 * modulus(r) + modulus(2.0 * r), eps / 2.0, R)
    if not radius > 0 or not math.isfinite(radius):
        raise ZeroRadius(f"no positive radius satisfies the modulus condition at eps={eps!r}")
    logger.debug("Modulus radius %.6g at eps=%.6g (R=%.6g)", radius, eps, R)
    return radius
