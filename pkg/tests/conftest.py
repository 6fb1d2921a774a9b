import math

import pytest

from wedgespectra import config
from wedgespectra.symbols import WedgeParams


@pytest.fixture(autouse=True)
def fresh_settings():
    saved = config.current()
    config.install(config.Settings())
    yield
    config.install(saved)


@pytest.fixture
def sixty():
    return WedgeParams(math.pi / 3, 0.0)


@pytest.fixture
def right():
    return WedgeParams(math.pi / 2, 0.0)


@pytest.fixture
def right_energy():
    return WedgeParams(math.pi / 2, 1.0)
