import pytest

from coxspine.verify import shared_ball


@pytest.fixture(scope="session")
def ball4():
    return shared_ball(4, 4)


@pytest.fixture(scope="session")
def ball5():
    return shared_ball(5, 4)
