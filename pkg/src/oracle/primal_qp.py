"""Brute-force primal solver for small instances.

Works on the coupling alone: nothing here evaluates dual objectives or gradients, so agreement
with the dual solvers is independent evidence.
"""
import hashlib
import json
import logging
import os
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
import scipy.linalg

from src.dual_core.instance import ProblemInstance
from src.errors import InfeasibleMarginals, InstanceTooLarge
from src.measures import Coupling

logger = logging.getLogger(__name__)

MAX_CELLS = 64
KKT_TOL = 1e-11
PROJECTION_TOL = 1e-13
MARGINAL_TOL = 1e-10
SUPPORT_THRESHOLDS = (1e-12, 1e-10, 1e-8, 1e-6)
POLISH_EVERY = 25

PARAMETERIZED_QP = "parameterized_qp"
KKT_CERTIFIED = "kkt_certified"


@dataclass(frozen=True)
class OracleSolution:
    coupling: Coupling
    primal_value: float
    method: str
    tolerance_achieved: float

    def to_dict(self) -> dict:
        c = self.coupling
        return {
            "n": c.n,
            "m": c.m,
            "entries": [[int(i), int(j), float(v)] for i, j, v in zip(c.rows, c.cols, c.masses)],
            "primal_value": self.primal_value,
            "method": self.method,
            "tolerance_achieved": self.tolerance_achieved,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "OracleSolution":
        entries = np.asarray(data["entries"], dtype=float).reshape(-1, 3)
        coupling = Coupling(
            rows=entries[:, 0].astype(int),
            cols=entries[:, 1].astype(int),
            masses=entries[:, 2],
            n=int(data["n"]),
            m=int(data["m"]),
        )
        return cls(coupling, float(data["primal_value"]), data["method"], float(data["tolerance_achieved"]))


def _validate(inst: ProblemInstance) -> Tuple[np.ndarray, np.ndarray]:
    if inst.n * inst.m > MAX_CELLS:
        raise InstanceTooLarge(f"oracle handles n*m <= {MAX_CELLS}, got {inst.n}x{inst.m}")
    p, q = inst.p, inst.q
    for name, w in (("p", p), ("q", q)):
        if np.any(w < 0) or abs(w.sum() - 1.0) > 1e-9:
            raise InfeasibleMarginals(f"{name} is not a probability vector")
    return p, q


def _objective(plan: np.ndarray, cost: np.ndarray, base: np.ndarray, eps: float) -> float:
    return float(np.sum(cost * plan) + 0.5 * eps * np.sum(plan ** 2 / base))


def project_affine(X: np.ndarray, p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Orthogonal projection onto {X 1 = p, X^T 1 = q}."""
    n, m = X.shape
    r = X.sum(axis=1) - p
    c = X.sum(axis=0) - q
    s = r.sum()
    return X - (r / m - s / (n * m))[:, None] - (c / n)[None, :]


def project_polytope(X: np.ndarray, p: np.ndarray, q: np.ndarray, tol: float = PROJECTION_TOL,
                     max_iters: int = 100000) -> np.ndarray:
    """Dykstra's alternating projection onto the transport polytope.

    The affine set needs no correction term; only the orthant step carries one.
    """
    x = X
    corr = np.zeros_like(X)
    for _ in range(max_iters):
        y = project_affine(x, p, q)
        x = np.maximum(y + corr, 0.0)
        corr = y + corr - x
        if np.max(np.abs(x - y)) <= tol:
            break
    return x


def _kkt_polish(plan: np.ndarray, inst: ProblemInstance, threshold: float) -> Optional[np.ndarray]:
    """Solve the stationarity system on the support {plan > threshold * max plan} exactly.

    Returns the polished plan when it is feasible and the multipliers are sign-consistent off the
    support, else None.
    """
    p, q, C, eps = inst.p, inst.q, inst.cost, inst.eps
    n, m = C.shape
    S = plan > threshold * plan.max()
    Sf = S.astype(float)
    top = np.hstack([np.diag(Sf @ q), Sf * q[None, :]])
    bottom = np.hstack([(Sf * p[:, None]).T, np.diag(p @ Sf)])
    rhs = eps + np.concatenate([(Sf * C) @ q, p @ (Sf * C)])
    sol, *_ = scipy.linalg.lstsq(np.vstack([top, bottom]), rhs)
    a, b = sol[:n], sol[n:]
    excess = a[:, None] + b[None, :] - C
    polished = np.where(S, p[:, None] * q[None, :] * excess / eps, 0.0)
    if np.any(polished < -MARGINAL_TOL):
        return None
    polished = np.maximum(polished, 0.0)
    if _marginal_error(polished, p, q) > MARGINAL_TOL:
        return None
    if np.any(excess[~S] > 1e-10 * max(1.0, np.abs(C).max())):
        return None
    return polished


def _marginal_error(plan: np.ndarray, p: np.ndarray, q: np.ndarray) -> float:
    return float(max(np.max(np.abs(plan.sum(axis=1) - p)), np.max(np.abs(plan.sum(axis=0) - q))))


def _try_polish(plan: np.ndarray, inst: ProblemInstance) -> Optional[np.ndarray]:
    for threshold in SUPPORT_THRESHOLDS:
        polished = _kkt_polish(plan, inst, threshold)
        if polished is not None:
            return polished
    return None


def solve_primal_small(
    inst: ProblemInstance,
    *,
    start: Optional[np.ndarray] = None,
    tol: float = KKT_TOL,
    max_iters: int = 20000,
) -> OracleSolution:
    """Minimize <C, pi> + (eps/2) sum pi^2 / (p q) over couplings of (P, Q).

    Projected gradient with exact line search from the product coupling (or `start`). Every
    POLISH_EVERY iterations the support is guessed and the stationarity system solved on it; a
    guess passing every KKT condition is the exact minimizer and ends the search.
    """
    p, q = _validate(inst)
    C, eps = inst.cost, inst.eps
    base = p[:, None] * q[None, :]
    step = float(base.min()) / eps
    plan = base.copy() if start is None else project_polytope(np.asarray(start, dtype=float), p, q)

    residual = np.inf
    polished = None
    it = 0
    for it in range(max_iters):
        grad = C + eps * plan / base
        direction = project_polytope(plan - step * grad, p, q) - plan
        residual = float(np.max(np.abs(direction)) / step)
        if residual <= tol:
            break
        curvature = eps * float(np.sum(direction ** 2 / base))
        if curvature <= 0:
            break
        tau = min(max(-float(np.sum(grad * direction)) / curvature, 0.0), 1.0)
        plan = plan + tau * direction
        if (it + 1) % POLISH_EVERY == 0:
            polished = _try_polish(plan, inst)
            if polished is not None:
                break
    logger.debug("Projected gradient stopped at iteration %d with residual %.3e", it, residual)

    if polished is None:
        polished = _try_polish(plan, inst)
    if polished is not None:
        plan, method = polished, KKT_CERTIFIED
        residual = _marginal_error(plan, p, q)
    else:
        method = PARAMETERIZED_QP
        logger.warning("KKT polish failed; returning the projected-gradient coupling")

    return OracleSolution(
        coupling=Coupling.from_dense(plan),
        primal_value=_objective(plan, C, base, eps),
        method=method,
        tolerance_achieved=residual,
    )


def instance_key(inst: ProblemInstance) -> str:
    """sha256 over the weights, the cost and eps."""
    h = hashlib.sha256()
    for arr in (inst.p, inst.q, inst.cost):
        a = np.ascontiguousarray(arr, dtype=np.float64)
        h.update(str(a.shape).encode())
        h.update(a.tobytes())
    h.update(repr(float(inst.eps)).encode())
    return h.hexdigest()


class OracleCache:
    """JSON cache of oracle solutions, one file per instance hash."""

    def __init__(self, cache_dir: str):
        self.cache_dir = cache_dir

    def _path(self, inst: ProblemInstance) -> str:
        return os.path.join(self.cache_dir, f"{instance_key(inst)}.json")

    def get(self, inst: ProblemInstance) -> Optional[OracleSolution]:
        path = self._path(inst)
        if not os.path.exists(path):
            return None
        with open(path, "r", encoding="utf-8") as fh:
            return OracleSolution.from_dict(json.load(fh))

    def put(self, inst: ProblemInstance, solution: OracleSolution) -> str:
        os.makedirs(self.cache_dir, exist_ok=True)
        path = self._path(inst)
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(solution.to_dict(), fh, sort_keys=True, indent=2)
        return path

    def solve(self, inst: ProblemInstance) -> OracleSolution:
        cached = self.get(inst)
        if cached is not None:
            logger.debug("Oracle cache hit %s", instance_key(inst)[:12])
            return cached
        solution = solve_primal_small(inst)
        self.put(inst, solution)
        return solution
