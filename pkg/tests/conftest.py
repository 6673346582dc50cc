import pytest

from hermcodes import make_tower


@pytest.fixture(scope="session")
def tower_q2():
    return make_tower(2, 1, 3)


@pytest.fixture(scope="session")
def tower_q3():
    return make_tower(3, 1, 3)


@pytest.fixture(scope="session")
def tower_q5():
    return make_tower(5, 1, 3)


@pytest.fixture(scope="session")
def tower_q2_n2():
    return make_tower(2, 1, 2)
