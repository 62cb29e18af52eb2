"""Tests for SAT-backed Ramsey numbers and the derived constants."""
import pytest

import src.ramsey as ramsey
from src.cache import CacheManager
from src.errors import GraphInputError
from src.ramsey import (
    BOUND,
    EXACT,
    SYMBOLIC,
    constants,
    constants_dict,
    jewel_bound,
    ramsey_bound,
    ramsey_instance,
    ramsey_number,
    seed_bound,
    sigma_bound,
    tournament_ramsey,
)


class TestRamseyNumbers:
    @pytest.mark.parametrize("a, b, expected", [(3, 3, 6), (3, 4, 9), (4, 3, 9)])
    def test_small_values(self, a, b, expected):
        q = ramsey_number(a, b)
        assert q.value == expected
        assert q.tag == EXACT

    def test_trivial_values(self):
        assert ramsey_number(1, 5).value == 1
        assert ramsey_number(2, 5).value == 5

    def test_binomial_bound(self):
        assert ramsey_bound(3, 3) == 6
        assert ramsey_bound(4, 4) == 20

    def test_above_sat_cap_uses_bound(self, monkeypatch):
        monkeypatch.setattr(ramsey, "RAMSEY_SAT_MAX_N", 5)
        q = ramsey_number(3, 4)
        assert q.tag == BOUND
        assert q.value == 10

    def test_invalid(self):
        with pytest.raises(GraphInputError):
            ramsey_number(0, 3)

    def test_instance_shape(self):
        cnf, edge_var = ramsey_instance(5, 3, 3)
        assert len(edge_var) == 10
        assert len(cnf) == 20


class TestTournaments:
    def test_small_values(self):
        assert tournament_ramsey(1).value == 1
        assert tournament_ramsey(3).value == 4
        assert tournament_ramsey(4).value == 8

    def test_invalid(self):
        with pytest.raises(GraphInputError):
            tournament_ramsey(0)


class TestCache:
    def test_exact_values_cached(self, tmp_path):
        cache = CacheManager(str(tmp_path))
        first = ramsey_number(3, 3, cache=cache)
        second = ramsey_number(3, 3, cache=cache)
        assert first == second
        assert cache.get_stats()["ramsey"]["hits"] == 1
        cache.close()


class TestDerivedConstants:
    def test_jewel_and_sigma(self):
        assert jewel_bound(3, 3).value == 18
        assert sigma_bound(3, 3).value == 126
        assert seed_bound(3).value == 126

    def test_constants_table(self):
        values = constants(3)
        assert values["R(t,3)"].value == 6
        assert values["R_tourn(nu+1)"].value == 4
        assert values["mu"].tag == SYMBOLIC
        assert values["mu"].expr == "mu(253)"
        assert values["gamma"].expr == "R(4, mu(253))"
        assert values["m_r"].expr == "psi(3, (2+1)*2)"

    def test_radius_one_is_exact(self):
        m = constants(3, r=1)["m_r"]
        assert m.value == 2
        assert m.tag == EXACT

    def test_invalid_input(self):
        with pytest.raises(GraphInputError, match="delta"):
            constants(3, delta=0)

    def test_dict_form(self):
        data = constants_dict(3)
        assert data["inputs"] == {"t": 3, "delta": 3, "nu": 2, "d": 2, "r": 2}
        assert data["constants"]["sigma"]["value"] == 126
