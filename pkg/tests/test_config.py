"""Validate that config constants are internally consistent."""
import pytest

import src.config as config


class TestSearchCaps:
    def test_caps_positive(self):
        for name in (
            "TREEWIDTH_EXACT_CAP",
            "THETA_CAP",
            "PYRAMID_CAP",
            "PRISM_CAP",
            "CLEAN_SEARCH_CAP",
            "STRONG_BLOCK_MAX_N",
            "CONNECTIFY_MAX_N",
            "TRICHOTOMY_MAX_N",
        ):
            assert getattr(config, name) > 0, name

    def test_harness_hosts_fit_under_detector_caps(self):
        assert config.DEFAULT_MAX_N <= config.THETA_CAP
        assert config.DEFAULT_MAX_N <= config.PYRAMID_CAP
        assert config.DEFAULT_MAX_N <= config.PRISM_CAP

    def test_extraction_cap_covers_detectors(self):
        assert config.OBSTRUCTION_EXTRACT_CAP >= config.THETA_CAP


class TestSampling:
    def test_budget_positive(self):
        assert config.REJECTION_BUDGET > 0
        assert config.DEFAULT_SAMPLES > 0

    def test_density_positive(self):
        assert config.RANDOM_EDGE_DENSITY > 0

    def test_exhaustive_floor_below_random_range(self):
        assert config.EXHAUSTIVE_PATH_SIZE >= 1
        assert config.EXHAUSTIVE_MAX_N <= config.DEFAULT_MAX_N


class TestEnvOverrides:
    def test_default_when_unset(self, monkeypatch):
        monkeypatch.delenv("THETAPRISM_SOME_CAP", raising=False)
        assert config._env_int("SOME_CAP", 7) == 7

    def test_blank_means_default(self, monkeypatch):
        monkeypatch.setenv("THETAPRISM_SOME_CAP", "  ")
        assert config._env_int("SOME_CAP", 7) == 7

    def test_override(self, monkeypatch):
        monkeypatch.setenv("THETAPRISM_SOME_CAP", "12")
        assert config._env_int("SOME_CAP", 7) == 12

    def test_invalid_override(self, monkeypatch):
        monkeypatch.setenv("THETAPRISM_SOME_CAP", "many")
        with pytest.raises(ValueError, match="THETAPRISM_SOME_CAP"):
            config._env_int("SOME_CAP", 7)


class TestCaching:
    def test_ttls_positive(self):
        assert config.TREEWIDTH_CACHE_TTL_DAYS > 0
        assert config.RAMSEY_CACHE_TTL_DAYS > 0
