import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from src.constants import PLConstants, localization_radius
from src.dual_core import DualPotentials, ProblemInstance, oplus_l2_distance, phi_derivatives
from src.errors import RSampleOutOfRange

from .operator import OperatorM, build_sections, min_eigenvalue_H

logger = logging.getLogger(__name__)

EIGEN_SLACK = 1e-12
SAMPLE_FRACTIONS = (0.0, 0.25, 0.5, 0.75, 1.0)


def section_margin(op: OperatorM, lambda0: float) -> float:
    """min over row and column section masses, minus lambda0."""
    s = op.sections
    return float(min(s.row_masses.min(), s.col_masses.min()) - lambda0)


def variance_coercivity_ratio(op: OperatorM, u, v, alpha: float) -> float:
    """<u+v, M(u+v)> / (alpha Var_P(u)); at least one where coordinatewise coercivity holds."""
    u = np.asarray(u, dtype=float)
    mean = op.p @ u
    var = float(op.p @ (u - mean) ** 2)
    if var * alpha <= 0:
        return math.inf
    return op.quadratic_form(u, v) / (alpha * var)


@dataclass
class CoercivitySample:
    r: float
    lambda0: float
    beta_eps: float
    passed: bool
    phi_second: float
    phi_bound_pass: bool
    margin: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            "r": self.r,
            "lambda0": self.lambda0,
            "beta_eps": self.beta_eps,
            "pass": self.passed,
            "phi_second": self.phi_second,
            "phi_bound_pass": self.phi_bound_pass,
            "margin": self.margin,
        }


@dataclass
class CoercivityReport:
    r0: float
    C_fg: float
    beta_eps: float
    empirical: bool
    samples: List[CoercivitySample] = field(default_factory=list)

    @property
    def min_lambda0(self) -> float:
        return min((s.lambda0 for s in self.samples), default=math.nan)

    @property
    def passed(self) -> bool:
        return all(s.passed and s.phi_bound_pass for s in self.samples)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "r0": self.r0,
            "C_fg": self.C_fg,
            "beta_eps": self.beta_eps,
            "empirical": self.empirical,
            "exact_finite_eigenproblem": True,
            "samples": [s.to_dict() for s in self.samples],
            "min_lambda0": self.min_lambda0,
            "pass": self.passed,
        }


def coercivity_certificate(
    inst: ProblemInstance,
    pot_star: DualPotentials,
    pot: DualPotentials,
    consts: PLConstants,
    r_samples: Optional[Sequence[float]] = None,
) -> CoercivityReport:
    """Check lambda0(r) >= beta_eps and |(f*-f)+(g*-g)|^2 <= (eps/beta) phi''(r) on samples of [0, r0]."""
    c_fg, r0 = localization_radius(inst, pot, pot_star)
    if r_samples is None:
        r_samples = [frac * r0 for frac in SAMPLE_FRACTIONS]
    for r in r_samples:
        if not 0.0 <= r <= r0:
            raise RSampleOutOfRange(f"sample r={r!r} outside [0, r0={r0!r}]")

    beta = consts.beta_eps
    dist_sq = oplus_l2_distance(inst, pot_star, pot) ** 2
    report = CoercivityReport(r0=r0, C_fg=c_fg, beta_eps=beta, empirical=consts.empirical_flag)
    for r in r_samples:
        op = OperatorM.from_instance(inst, build_sections(inst, pot_star, pot, r))
        lam, _ = min_eigenvalue_H(op)
        phi_second = phi_derivatives(inst, pot_star, pot, r).phi_second
        sample = CoercivitySample(
            r=float(r),
            lambda0=lam,
            beta_eps=beta,
            passed=lam >= beta - EIGEN_SLACK,
            phi_second=phi_second,
            phi_bound_pass=dist_sq <= inst.eps / beta * phi_second + EIGEN_SLACK,
            margin=section_margin(op, lam),
        )
        if not sample.passed:
            logger.warning("lambda0(%.6g) = %.6g below beta_eps = %.6g", r, lam, beta)
        report.samples.append(sample)
    return report
