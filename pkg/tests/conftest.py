import pytest

from relrep.path_algebra import AlgebraPresentation, cyclic_quiver
from relrep.rep import parse_module_expression

M1_EXPR = "P(1)+P(2)+P(3)+S(1)+P(3)/rad^2"
M2_EXPR = "P(1)+P(2)+P(3)+S(1)+P(1)/rad^2"


@pytest.fixture(scope="session")
def cyc3_5():
    """Cyclic 3-vertex quiver with paths of length 5 truncated; dim 15."""
    return AlgebraPresentation.truncated(cyclic_quiver(3), 5, name="cyc3-trunc5")


@pytest.fixture(scope="session")
def m1(cyc3_5):
    return parse_module_expression(cyc3_5, M1_EXPR)


@pytest.fixture(scope="session")
def m2(cyc3_5):
    return parse_module_expression(cyc3_5, M2_EXPR)
