import numpy as np
import pytest

from src.costs import CostSpec
from src.dual_core import DualPotentials, ProblemInstance
from src.measures import empirical_geometry, grid_discretize, make_measure
from tests.helpers import one_atom, two_by_two


@pytest.fixture
def one_atom_instance():
    return one_atom()


@pytest.fixture
def two_by_two_instance():
    return two_by_two()


@pytest.fixture
def two_by_two_optimum():
    return DualPotentials([0.75, 0.75], [0.75, 0.75])


@pytest.fixture
def grid_instance():
    P = grid_discretize(lambda x: float(np.exp(-10.0 * (x[0] - 0.5) ** 2)), (0.0, 1.0), 6)
    Q = make_measure([[0.25], [0.75]], [0.5, 0.5])
    return ProblemInstance.build(P, Q, CostSpec("sqeuclidean"), 0.5)


@pytest.fixture
def grid_geometry(grid_instance):
    return empirical_geometry(grid_instance.P, grid_instance.Q, lipschitz_L=2.0)
