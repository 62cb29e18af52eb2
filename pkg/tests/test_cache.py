"""Tests for the disk caches of exact treewidth and Ramsey values."""
import pytest

from src.cache import CacheManager
from tests.conftest import cycle


@pytest.fixture
def cache(tmp_path):
    manager = CacheManager(str(tmp_path))
    yield manager
    manager.close()


class TestTreewidthCache:
    def test_miss_then_hit(self, cache):
        assert cache.get_treewidth(cycle(5)) is None
        cache.set_treewidth(cycle(5), {"treewidth": 2, "exact": True})
        assert cache.get_treewidth(cycle(5)) == {"treewidth": 2, "exact": True}
        stats = cache.get_stats()["treewidth"]
        assert (stats["hits"], stats["misses"]) == (1, 1)
        assert stats["hit_rate"] == 0.5

    def test_bounds_are_not_stored(self, cache):
        cache.set_treewidth(cycle(5), {"treewidth": None, "exact": False})
        assert cache.get_treewidth(cycle(5)) is None

    def test_key_depends_on_graph(self, cache):
        cache.set_treewidth(cycle(5), {"treewidth": 2, "exact": True})
        assert cache.get_treewidth(cycle(6)) is None


class TestRamseyCache:
    def test_tuple_keys(self, cache):
        cache.set_ramsey(("ramsey", 3, 3), {"value": 6})
        assert cache.get_ramsey(("ramsey", 3, 3)) == {"value": 6}
        assert cache.get_ramsey(("ramsey", 3, 4)) is None


class TestManagement:
    def test_clear_all_resets(self, cache):
        cache.set_ramsey(("ramsey", 3, 3), {"value": 6})
        cache.get_ramsey(("ramsey", 3, 3))
        cache.clear_all()
        assert cache.get_stats()["ramsey"]["hits"] == 0
        assert cache.get_ramsey(("ramsey", 3, 3)) is None

    def test_size_reported(self, cache):
        assert cache.get_stats()["cache_size_mb"] >= 0
