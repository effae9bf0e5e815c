import pytest

from homconformal import adjoint_rep
from homconformal.fixtures import (
    cur_borel,
    rotated_cross_current,
    super_heisenberg,
)


@pytest.fixture(scope="session")
def sh_plus():
    return super_heisenberg(1)


@pytest.fixture(scope="session")
def sh_minus():
    return super_heisenberg(-1)


@pytest.fixture(scope="session")
def curb():
    return cur_borel()


@pytest.fixture(scope="session")
def rotated():
    return rotated_cross_current()


@pytest.fixture(scope="session")
def sh_plus_adj(sh_plus):
    return adjoint_rep(sh_plus)


@pytest.fixture(scope="session")
def curb_adj(curb):
    return adjoint_rep(curb)
