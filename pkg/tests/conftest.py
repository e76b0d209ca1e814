"""Shared graphs and settings for the test suite."""

import pytest

from ortholat.config import Settings, get_settings
from ortholat.core.graph import Graph, build_graph, complete_graph, null_graph, path_graph


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    """Drop cached settings so environment changes in a test take effect."""
    for name in (
        "ORTHOLAT_LOG_LEVEL",
        "ORTHOLAT_AUT_CAP",
        "ORTHOLAT_MAX_GROUP_ORDER",
        "ORTHOLAT_SCAN_LIMIT",
        "ORTHOLAT_RANDOM_SEED",
        "ORTHOLAT_RANDOM_TRIALS",
        "ORTHOLAT_EXHAUSTIVE_LIMIT",
    ):
        monkeypatch.delenv(name, raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def base_settings() -> Settings:
    return Settings()


@pytest.fixture
def fast_settings() -> Settings:
    return Settings(random_trials=40)


@pytest.fixture
def p4() -> Graph:
    """The path a-b-c-d."""
    return path_graph(4, names=["a", "b", "c", "d"])


@pytest.fixture
def s3() -> Graph:
    """An edge a-b plus an isolated vertex d."""
    return build_graph(3, [(0, 1)], names=["a", "b", "d"])


@pytest.fixture
def k3() -> Graph:
    return complete_graph(3)


@pytest.fixture
def n3() -> Graph:
    return null_graph(3)


@pytest.fixture
def two_edges() -> Graph:
    """K2 ⊔ K2."""
    return build_graph(4, [(0, 1), (2, 3)])
