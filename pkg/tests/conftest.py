"""Shared fixtures and the ``slow`` marker (skipped unless --runslow)."""

import numpy as np
import pytest

from ybsimple.core.abgroup import FinAbGroup, aut_from_matrix, identity_aut
from ybsimple.core.constructions import construct_newsol, make_jfamily


def pytest_addoption(parser):
    parser.addoption('--runslow', action='store_true', default=False, help='run slow sweeps')


def pytest_configure(config):
    config.addinivalue_line('markers', 'slow: exhaustive sweep, needs --runslow')


def pytest_collection_modifyitems(config, items):
    if config.getoption('--runslow'):
        return
    skip_slow = pytest.mark.skip(reason='needs --runslow')
    for item in items:
        if 'slow' in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def z2():
    return FinAbGroup((2,))


@pytest.fixture
def v4():
    return FinAbGroup((2, 2))


@pytest.fixture
def j4(z2):
    """A = Z2, t = id, j = (0, 1)."""
    return make_jfamily(z2, identity_aut(z2), np.array([0, 1]))


@pytest.fixture
def j16(v4):
    """A = Z2 x Z2, t of order 3, j_a = a."""
    t = aut_from_matrix(v4, [[0, 1], [1, 1]])
    return make_jfamily(v4, t, np.arange(4))


@pytest.fixture
def s4(j4):
    return construct_newsol(j4)


@pytest.fixture
def s16(j16):
    return construct_newsol(j16)
