"""Tests for how outside paths attach to a pyramid with a trapped apex."""
import pytest

from src.embeddings import ThetaEmbedding
from src.errors import GraphInputError, HypothesisViolation, ObstructionFound
from src.pyramids import (
    Outcome,
    attachments,
    classify_wrt_pyramid,
    is_corner_path,
    is_jewel,
    is_trapped,
    is_wide,
    local_in_pyramid,
    obstruction_in,
)
from tests.conftest import make_configuration

# Long pyramid (3,3,3): apex 0, base 1,2,3, P1 = 0-4-5-1, P2 = 0-6-7-2, P3 = 0-8-9-3.
HOST = frozenset(range(10))


def decorated(*neighbours):
    """The long pyramid plus vertex 10 adjacent to the given vertices."""
    G, sigma = make_configuration(lengths=(3, 3, 3))
    return G.with_vertices(1, [(10, v) for v in neighbours]), sigma


class TestTrapped:
    def test_bare_pyramid_apex_trapped(self):
        G, _ = make_configuration(lengths=(3, 3, 3))
        assert is_trapped(G, HOST, 0)

    def test_second_neighbourhood_outside(self):
        G, _ = decorated(4)
        assert not is_trapped(G, HOST, 0)

    def test_apex_must_be_in_set(self):
        G, _ = make_configuration(lengths=(3, 3, 3))
        with pytest.raises(GraphInputError):
            is_trapped(G, [1, 2, 3], 0)


class TestLocality:
    def test_locations(self):
        _, sigma = make_configuration(lengths=(3, 3, 3))
        assert local_in_pyramid(sigma, []) == "empty"
        assert local_in_pyramid(sigma, [4, 5]) == "P1"
        assert local_in_pyramid(sigma, [1, 2]) == "base"
        assert local_in_pyramid(sigma, [5, 7]) is None

    def test_attachments_and_width(self):
        G, sigma = decorated(5, 7)
        assert attachments(G, sigma, [10]) == frozenset({5, 7})
        assert is_wide(G, sigma, 10)


class TestPredicates:
    def test_jewel(self):
        G, sigma = decorated(2, 7, 3, 9)
        assert is_jewel(G, sigma, 10, 0)
        assert not is_jewel(G, sigma, 10, 1)

    def test_corner_path(self):
        G, sigma = decorated(5, 2, 3)
        assert is_corner_path(G, sigma, (10,), 0)
        assert not is_corner_path(G, sigma, (10,), 1)


class TestClassify:
    def test_local(self):
        G, sigma = decorated(1, 5)
        result = classify_wrt_pyramid(G, HOST, 0, sigma, [10])
        assert result.outcome == Outcome.LOCAL
        assert result.location == "P1"
        assert result.index == 0

    def test_jewel(self):
        G, sigma = decorated(2, 7, 3, 9)
        result = classify_wrt_pyramid(G, HOST, 0, sigma, [10])
        assert result.outcome == Outcome.JEWEL
        assert result.location == "b1"
        assert result.witness == (10,)

    def test_corner_path(self):
        G, sigma = decorated(5, 2, 3)
        result = classify_wrt_pyramid(G, HOST, 0, sigma, [10])
        assert result.outcome == Outcome.CORNER_PATH
        assert result.to_dict() == {"outcome": "corner_path", "location": "b1", "index": 0, "witness": [10]}

    def test_wide_path_yields_obstruction(self):
        G, sigma = decorated(5, 7)
        with pytest.raises(ObstructionFound) as info:
            classify_wrt_pyramid(G, HOST, 0, sigma, [10])
        assert isinstance(info.value.witness, ThetaEmbedding)

    def test_untrapped_apex(self):
        G, sigma = decorated(4)
        with pytest.raises(HypothesisViolation):
            classify_wrt_pyramid(G, HOST, 0, sigma, [10])

    def test_path_meeting_host(self):
        G, sigma = decorated(5)
        with pytest.raises(GraphInputError, match="meets H"):
            classify_wrt_pyramid(G, HOST, 0, sigma, [9, 10])

    def test_apex_mismatch(self):
        G, sigma = decorated(5)
        with pytest.raises(GraphInputError, match="apex"):
            classify_wrt_pyramid(G, HOST, 1, sigma, [10])


class TestObstructionIn:
    def test_none_in_pyramid(self):
        G, sigma = make_configuration(lengths=(3, 3, 3))
        assert obstruction_in(G, sigma.vertices()) is None

    def test_labels_mapped_back(self):
        G, sigma = decorated(5, 7)
        theta = obstruction_in(G, sigma.vertices() | {10})
        assert theta.vertices() <= sigma.vertices() | {10}
