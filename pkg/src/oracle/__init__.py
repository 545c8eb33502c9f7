from .primal_qp import (
    OracleSolution,
    OracleCache,
    solve_primal_small,
    project_affine,
    project_polytope,
    instance_key,
    KKT_CERTIFIED,
    PARAMETERIZED_QP,
)
from .kkt import KKTReport, kkt_certificate

__all__ = [
    "OracleSolution",
    "OracleCache",
    "solve_primal_small",
    "project_affine",
    "project_polytope",
    "instance_key",
    "KKT_CERTIFIED",
    "PARAMETERIZED_QP",
    "KKTReport",
    "kkt_certificate",
]
