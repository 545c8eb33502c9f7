import numpy as np

from src.costs import CostSpec
from src.dual_core import DualPotentials, ProblemInstance
from src.measures import make_measure
from src.solvers import COORDINATE_ASCENT, SolverConfig, coordinate_ascent_run


def random_instance(seed: int, n: int = 4, m: int = 3, eps: float = 0.5, dim: int = 1) -> ProblemInstance:
    rng = np.random.default_rng(seed)
    P = make_measure(rng.uniform(0.0, 1.0, size=(n, dim)), rng.dirichlet(np.ones(n) * 2.0))
    Q = make_measure(rng.uniform(0.0, 1.0, size=(m, dim)), rng.dirichlet(np.ones(m) * 2.0))
    return ProblemInstance.build(P, Q, CostSpec("sqeuclidean"), eps)


def one_atom(eps: float = 1.0) -> ProblemInstance:
    P = make_measure([[0.0]], [1.0])
    return ProblemInstance(P=P, Q=P, cost=np.zeros((1, 1)), eps=eps)


def two_by_two(eps: float = 1.0) -> ProblemInstance:
    P = make_measure([[0.0], [1.0]], [0.5, 0.5])
    return ProblemInstance.build(P, P, CostSpec("euclidean"), eps)


def reference_potentials(inst: ProblemInstance, tol: float = 1e-12) -> DualPotentials:
    config = SolverConfig(algorithm=COORDINATE_ASCENT, grad_tol=tol, record_trace=False)
    pot, trace = coordinate_ascent_run(inst, np.zeros(inst.m), config)
    assert trace.converged
    return pot
