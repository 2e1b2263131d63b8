import pytest

from sptri.core import QuadratureConfig

pytest_plugins = ("pytest_asyncio",)


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run full-size sweeps")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def cfg():
    """Default quadrature parameters."""
    return QuadratureConfig()


@pytest.fixture
def rng():
    import numpy as np

    return np.random.default_rng(1234)
