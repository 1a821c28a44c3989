import pytest
from fractions import Fraction

from tropfan.fan import dataset
from tropfan.tropical import SignomialParams, TropicalRationalParams, signomial


@pytest.fixture(scope="session")
def running_theta4() -> SignomialParams:
    """Four-term signomial of the two-point running example."""
    return signomial([(0, (-1, 1)), (0, (0, 0)), (-1, ("3/2", "1/2")), (-2, (0, 2))])


@pytest.fixture(scope="session")
def running_theta_split(running_theta4) -> TropicalRationalParams:
    num = SignomialParams(running_theta4.terms[:2], 2)
    den = SignomialParams(running_theta4.terms[2:], 2)
    return TropicalRationalParams(num, den)


@pytest.fixture(scope="session")
def two_points():
    return dataset([(0, 0), (1, 0)])


@pytest.fixture(scope="session")
def five_line():
    return dataset([(1,), (2,), (3,), (4,), (5,)])


@pytest.fixture(scope="session")
def four_line():
    return dataset([(1,), (2,), (3,), (4,)])


@pytest.fixture(scope="session")
def diag4():
    return dataset([(0, 0), (1, 1), (2, 2), (3, 3)])


@pytest.fixture(scope="session")
def nine_points():
    return dataset(
        [(-2, 3), (3, 3), (1, 2), (0, 1), (0, 0), (-2, -1), (1, -2), (-7, -3), (3, -4)]
    )
