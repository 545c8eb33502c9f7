"""Checks of the convergence guarantees against a recorded trace.

Each check returns the list of violations; an empty list means the bound held on every row.
"""
import logging
import math
from typing import List, NamedTuple

from .config import COORDINATE_ASCENT, COORDINATE_GRADIENT_ASCENT, GRADIENT_ASCENT
from .trace import ConvergenceTrace

logger = logging.getLogger(__name__)

RATE_SLACK = 1e-12
ITERATE_SLACK = 1e-10
RATIO_SLACK = 1e-9
RATIO_GAP_FLOOR = 1e-13


class BoundViolation(NamedTuple):
    check: str
    iter: int
    lhs: float
    rhs: float

    def to_dict(self) -> dict:
        return self._asdict()


def check_monotone(trace: ConvergenceTrace, slack: float = RATE_SLACK) -> List[BoundViolation]:
    out = []
    for prev, row in zip(trace.rows, trace.rows[1:]):
        if row.objective < prev.objective - slack * max(1.0, abs(prev.objective)):
            out.append(BoundViolation("monotone", row.iter, row.objective, prev.objective))
    return out


def _skip_unsafe(trace: ConvergenceTrace, check: str) -> bool:
    if trace.unsafe:
        logger.info("Skipping %s check: trace ran with an unsafe step size", check)
    return trace.unsafe


def check_rate_bound(trace: ConvergenceTrace, q: float, slack: float = RATE_SLACK) -> List[BoundViolation]:
    """gap_n <= (1 - q)^n gap_0 on every row carrying a gap."""
    if _skip_unsafe(trace, "rate"):
        return []
    rows = [row for row in trace.rows if row.gap is not None]
    if not rows:
        return []
    gap0 = rows[0].gap
    iter0 = rows[0].iter
    out = []
    for row in rows[1:]:
        bound = (1.0 - q) ** (row.iter - iter0) * gap0
        if row.gap > bound + slack:
            out.append(BoundViolation("rate", row.iter, row.gap, bound))
    return out


def check_l2_iterate_bound(
    trace: ConvergenceTrace, q: float, constant: float, slack: float = RATE_SLACK
) -> List[BoundViolation]:
    """|f_n+g_n - f*-g*|^2_L2 <= K gap_0 (1 - q)^n."""
    if _skip_unsafe(trace, "l2 iterate"):
        return []
    rows = [row for row in trace.rows if row.gap is not None and row.l2_dist is not None]
    if not rows:
        return []
    gap0 = max(rows[0].gap, 0.0)
    iter0 = rows[0].iter
    out = []
    for row in rows:
        bound = constant * gap0 * (1.0 - q) ** (row.iter - iter0)
        if row.l2_dist ** 2 > bound + slack:
            out.append(BoundViolation("l2_iterate", row.iter, row.l2_dist ** 2, bound))
    return out


def check_iterate_bounds(trace: ConvergenceTrace, slack: float = ITERATE_SLACK) -> List[BoundViolation]:
    """Sup-norm iterate bounds of the trace's algorithm.

    gradient ascent: sup_dist_n <= 2 sup_dist_0.
    coordinate ascent: |g_n+1 - g*| <= |f_n - f*| <= |g_n - g*| against the aligned reference.
    coordinate gradient ascent: max(|f_n - f*|, |g_n - g*|) is nonincreasing.
    """
    if _skip_unsafe(trace, "iterate"):
        return []
    rows = [row for row in trace.rows if row.sup_dist is not None]
    if not rows:
        return []
    out = []
    if trace.algorithm == GRADIENT_ASCENT:
        bound = 2.0 * rows[0].sup_dist
        for row in rows[1:]:
            if row.sup_dist > bound + slack:
                out.append(BoundViolation("gd_iterate", row.iter, row.sup_dist, bound))
    elif trace.algorithm == COORDINATE_ASCENT:
        for row in rows:
            if row.f_sup_dist > row.g_sup_dist + slack:
                out.append(BoundViolation("ca_iterate_f", row.iter, row.f_sup_dist, row.g_sup_dist))
        for prev, row in zip(rows, rows[1:]):
            if row.iter == prev.iter + 1 and row.g_sup_dist > prev.f_sup_dist + slack:
                out.append(BoundViolation("ca_iterate_g", row.iter, row.g_sup_dist, prev.f_sup_dist))
    elif trace.algorithm == COORDINATE_GRADIENT_ASCENT:
        for prev, row in zip(rows, rows[1:]):
            now = max(row.f_sup_dist, row.g_sup_dist)
            before = max(prev.f_sup_dist, prev.g_sup_dist)
            if now > before + slack:
                out.append(BoundViolation("cga_iterate", row.iter, now, before))
    return out


def check_pl_rows(
    trace: ConvergenceTrace, slack: float = RATIO_SLACK, gap_floor: float = RATIO_GAP_FLOOR
) -> List[BoundViolation]:
    """pl_ratio >= 1 and error-bound ratio >= 1 at every row with gap above the floor."""
    out = []
    for row in trace.rows:
        if row.gap is None or row.gap <= gap_floor:
            continue
        for name, value in (("pl_ratio", row.pl_ratio), ("error_bound", row.eb_ratio)):
            if value is None or math.isinf(value):
                continue
            if value < 1.0 - slack:
                out.append(BoundViolation(name, row.iter, value, 1.0))
    return out
