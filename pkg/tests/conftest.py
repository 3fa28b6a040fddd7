import pytest

from ijobstruct.delsarte import ExponentMatrix, fermat_matrix, klein_matrix

CONE_ROWS = (
    (4, 0, 0, 0, 0),
    (0, 4, 0, 0, 0),
    (0, 0, 4, 0, 0),
    (0, 0, 0, 4, 0),
    (3, 1, 0, 0, 0),
)

CHAIN_ROWS = (
    (3, 1, 0, 0, 0),
    (0, 3, 1, 0, 0),
    (0, 0, 3, 1, 0),
    (0, 0, 0, 3, 1),
    (0, 0, 0, 0, 4),
)


@pytest.fixture
def klein():
    return klein_matrix()


@pytest.fixture
def klein_curve():
    return klein_matrix(2)


@pytest.fixture
def fermat():
    return fermat_matrix()


@pytest.fixture
def cone():
    return ExponentMatrix(CONE_ROWS)


@pytest.fixture
def chain():
    return ExponentMatrix(CHAIN_ROWS)
