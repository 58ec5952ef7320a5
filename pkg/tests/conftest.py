import random

import pytest

from heckelab import FieldTower, IsogenyClassifier, RunConfig


@pytest.fixture(scope="session")
def config():
    return RunConfig(seed=20260808)


@pytest.fixture(scope="session")
def tower5(config):
    return FieldTower(5, config)


@pytest.fixture(scope="session")
def tower7(config):
    return FieldTower(7, config)


@pytest.fixture(scope="session")
def tower13(config):
    return FieldTower(13, config)


@pytest.fixture(scope="session")
def classifier5(tower5):
    return IsogenyClassifier(tower5)


@pytest.fixture()
def rng():
    return random.Random(0xC0FFEE)
