import numpy as np
import pytest

from FSEE.models.fermi_sea import DispersionSea, IntervalProductSea
from FSEE.models.hopping_model import HoppingModel


def pytest_addoption(parser):
    parser.addoption("--slow", action="store_true", default=False,
                     help="run acceptance-scale tests marked with @pytest.mark.slow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--slow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def half_filled_chain():
    return IntervalProductSea(dimension=1, half_widths=(np.pi / 2,))


@pytest.fixture
def half_filled_square():
    return DispersionSea(model=HoppingModel.nearest_neighbour(2, t=1.0))
