"""Shared desk-scale instances, built once per test session."""

import random

import pytest

from pairnet.config.fixtures import FixtureStore
from pairnet.costmodel.cost_table import CostTable

# Families cheap enough for full pairing computations in every test
LIGHT_FAMILIES = ("bn", "bls12", "kss16")
ALL_FAMILIES = ("bn", "bls12", "kss16", "bls24", "bls48")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: pairings and parallel steps on the BLS24 and BLS48 towers")


@pytest.fixture(scope="session")
def store():
    return FixtureStore.load()


@pytest.fixture(scope="session")
def cost_table():
    return CostTable.load()


@pytest.fixture(scope="session")
def bn(store):
    return store.get("bn")


@pytest.fixture(scope="session")
def bls12(store):
    return store.get("bls12")


@pytest.fixture(scope="session")
def kss16(store):
    return store.get("kss16")


@pytest.fixture(scope="session")
def bls24(store):
    return store.get("bls24")


@pytest.fixture(scope="session")
def bls48(store):
    return store.get("bls48")


@pytest.fixture
def rng():
    return random.Random(20240607)
