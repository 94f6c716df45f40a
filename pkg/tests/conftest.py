import pytest

from trivext.presets import TWO_VERTEX_EXAMPLE, TWO_VERTEX_SUBALGEBRA, square_zero_source
from trivext.quiver import build_algebra, enumerate_path_basis, parse_presentation


@pytest.fixture(scope="session")
def example_pres():
    return parse_presentation(TWO_VERTEX_EXAMPLE)


@pytest.fixture(scope="session")
def example_basis(example_pres):
    return enumerate_path_basis(example_pres)


@pytest.fixture(scope="session")
def example_alg(example_pres, example_basis):
    return build_algebra(example_pres, example_basis)


@pytest.fixture(scope="session")
def sub_pres():
    return parse_presentation(TWO_VERTEX_SUBALGEBRA)


@pytest.fixture(scope="session")
def sub_basis(sub_pres):
    return enumerate_path_basis(sub_pres)


@pytest.fixture(scope="session")
def sub_alg(sub_pres, sub_basis):
    return build_algebra(sub_pres, sub_basis)


def _square_zero(n):
    return build_algebra(parse_presentation(square_zero_source(n)))


@pytest.fixture(scope="session")
def b1_alg():
    return _square_zero(1)


@pytest.fixture(scope="session")
def b2_alg():
    return _square_zero(2)
