import numpy as np
import pytest

from agibtc.hermitian import build_code


@pytest.fixture(scope="session")
def c49():
    return build_code(49)


@pytest.fixture(scope="session")
def c44():
    return build_code(44)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
