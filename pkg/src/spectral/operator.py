import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np
import scipy.linalg

from src.dual_core import DualPotentials, ProblemInstance, slack
from src.errors import DimensionMismatch, ROutOfRange, SingularGram

logger = logging.getLogger(__name__)

# relative to max |C|
SECTION_TOL = 1e-12

Pair = Tuple[np.ndarray, np.ndarray]


@dataclass(frozen=True, eq=False)
class SectionSets:
    """Closed active set {f_r + g_r >= c} and its row/column sections' masses."""

    indicator: np.ndarray
    row_masses: np.ndarray
    col_masses: np.ndarray

    @classmethod
    def from_indicator(cls, indicator: np.ndarray, p: np.ndarray, q: np.ndarray) -> "SectionSets":
        ind = np.asarray(indicator, dtype=bool)
        return cls(indicator=ind, row_masses=ind @ q, col_masses=p @ ind)


def build_sections(inst: ProblemInstance, pot_star: DualPotentials, pot: DualPotentials, r: float) -> SectionSets:
    if not 0.0 <= r <= 1.0:
        raise ROutOfRange(f"r must lie in [0, 1], got {r!r}")
    pot.check_dims(inst)
    pot_star.check_dims(inst)
    f_r = (1.0 - r) * pot_star.f + r * pot.f
    g_r = (1.0 - r) * pot_star.g + r * pot.g
    tol = SECTION_TOL * max(1.0, float(np.abs(inst.cost).max()))
    return SectionSets.from_indicator(slack(inst, f_r, g_r) >= -tol, inst.p, inst.q)


@dataclass(frozen=True, eq=False)
class OperatorM:
    """The active-set restricted form on the sum space, <w', M w> = sum over the active set of p q w' w."""

    sections: SectionSets
    p: np.ndarray
    q: np.ndarray

    @classmethod
    def from_instance(cls, inst: ProblemInstance, sections: SectionSets) -> "OperatorM":
        if sections.indicator.shape != (inst.n, inst.m):
            raise DimensionMismatch(f"indicator has shape {sections.indicator.shape}, expected ({inst.n}, {inst.m})")
        return cls(sections=sections, p=inst.p, q=inst.q)

    def _check(self, u: np.ndarray, v: np.ndarray) -> Pair:
        u = np.asarray(u, dtype=float).reshape(-1)
        v = np.asarray(v, dtype=float).reshape(-1)
        if u.shape[0] != self.p.shape[0] or v.shape[0] != self.q.shape[0]:
            raise DimensionMismatch(f"(u, v) lengths ({u.shape[0]}, {v.shape[0]}) do not match the operator")
        return u, v

    def apply(self, u, v) -> Pair:
        u, v = self._check(u, v)
        s = self.sections
        ind = s.indicator.astype(float)
        mean = self.p @ (u * s.row_masses) + self.q @ (v * s.col_masses)
        first = u * s.row_masses + ind @ (self.q * v) - 0.5 * mean
        second = v * s.col_masses + ind.T @ (self.p * u) - 0.5 * mean
        return first, second

    def quadratic_form(self, u, v) -> float:
        u, v = self._check(u, v)
        w = u[:, None] + v[None, :]
        weights = self.p[:, None] * self.q[None, :] * self.sections.indicator
        return float(np.sum(weights * w * w))

    def gram_matrices(self) -> Tuple[np.ndarray, np.ndarray]:
        """(A, B) on coordinates x = (u, v): x^T A x is the restricted form, x^T B x the sum-space norm."""
        p, q = self.p, self.q
        s = self.sections
        K = p[:, None] * q[None, :] * s.indicator
        A = np.block([[np.diag(p * s.row_masses), K], [K.T, np.diag(q * s.col_masses)]])
        B = np.block([[np.diag(p), np.outer(p, q)], [np.outer(q, p), np.diag(q)]])
        return A, B


def apply_M(op: OperatorM, u, v) -> Pair:
    return op.apply(u, v)


def sum_space_inner(p: np.ndarray, q: np.ndarray, a: Pair, b: Pair) -> float:
    """<a1 + a2, b1 + b2> in L2(P x Q) from the block coordinates."""
    return float(
        p @ (a[0] * b[0]) + q @ (a[1] * b[1]) + (p @ a[0]) * (q @ b[1]) + (q @ a[1]) * (p @ b[0])
    )


def min_eigenvalue_H(op: OperatorM) -> Tuple[float, Pair]:
    """Smallest eigenvalue of M on the quotient by the shift direction (1, -1).

    Both Gram matrices vanish along (1, -1), so any complement of it carries the quotient;
    the eigenvector is normalized to unit sum-space norm.
    """
    n = op.p.shape[0]
    A, B = op.gram_matrices()
    shift = np.concatenate([np.ones(n), -np.ones(op.q.shape[0])])
    Z = scipy.linalg.null_space(shift[None, :])
    try:
        values, vectors = scipy.linalg.eigh(Z.T @ A @ Z, Z.T @ B @ Z, subset_by_index=[0, 0])
    except np.linalg.LinAlgError as e:
        raise SingularGram("sum-space Gram matrix is not positive definite (zero weights?)") from e
    x = Z @ vectors[:, 0]
    lam = float(values[0])
    logger.debug("lambda_0 = %.12g on a %d-dimensional quotient", lam, Z.shape[1])
    return lam, (x[:n], x[n:])
