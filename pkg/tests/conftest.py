import logging

import pytest

from .sample_data.instances import line_instance, matrix_instance


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False,
                     help="run the full seeded corpora (several minutes)")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full-size seeded corpus, needs --runslow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def logger():
    log = logging.getLogger("tests")
    log.setLevel(logging.DEBUG)
    return log


@pytest.fixture
def line():
    return line_instance()


@pytest.fixture
def triangle():
    """
    Customers a=2, b=3, c=4 one unit apart and five units from either
    depot. Routes through two of them fit T_max = 11.5, through all three
    they do not.
    """
    travel = [
        [0, 5, 5, 5, 10],
        [5, 0, 1, 1, 5],
        [5, 1, 0, 1, 5],
        [5, 1, 1, 0, 5],
        [10, 5, 5, 5, 0],
    ]
    return matrix_instance(travel, profits=[0, 1, 1, 1, 0], services=[0, 0, 0, 0, 0], t_max=11.5,
                           name="triangle")
