"""Tests for strip saturation: augmentation, absorption and failure witnesses."""
import pytest

from src.embeddings import ThetaEmbedding
from src.errors import ObstructionFound, PreconditionError
from src.saturation import absorb, find_violating_path, locate_edge, residual_violation, saturate, saturate_strip
from src.strips import find_strip_jewels, validate_strip
from tests.conftest import canonical_strip

# Long pyramid (3,3,3): apex 0, base 1,2,3, P1 = 0-4-5-1, P2 = 0-6-7-2, P3 = 0-8-9-3.
# Strip of tree edge {0, i}: P_i minus the apex, with interface {b_i} at the centre
# and the apex neighbour on P_i at leaf i.


def decorated(count, edges):
    G, sigma, S = canonical_strip(lengths=(3, 3, 3))
    return G.with_vertices(count, edges), S


class TestSaturate:
    def test_bare_pyramid_is_saturated(self):
        G, _, S = canonical_strip(lengths=(3, 3, 3))
        result = saturate(G, S)
        assert result.strip == S
        assert result.augmentations == ()
        assert result.residual == frozenset()

    def test_absorbs_interior_component(self):
        G, S = decorated(3, [(10, 7), (11, 10)])
        result = saturate(G, S)
        assert result.absorbed_edge == {(0, 2): (10, 11)}
        assert result.residual == frozenset({12})
        assert result.strip.eta_e((0, 2)) == frozenset({2, 6, 7, 10, 11})
        assert validate_strip(G, result.strip).ok

    def test_absorbs_into_tree_vertex(self):
        G, S = decorated(1, [(10, 1), (10, 2)])
        result = saturate(G, S)
        assert result.absorbed_vertex == {0: (10,)}
        assert result.strip.eta_v(0) == frozenset({10})

    def test_absorbs_two_components_at_one_tree_vertex(self):
        G, S = decorated(2, [(10, 1), (11, 2)])
        result = saturate(G, S)
        assert result.absorbed_vertex == {0: (10, 11)}
        assert result.strip.eta_v(0) == frozenset({10, 11})
        assert result.residual == frozenset()

    def test_augmentation_joins_near_interface(self):
        G, S = decorated(1, [(10, 2), (10, 3), (10, 5)])
        result = saturate(G, S)
        assert len(result.augmentations) == 1
        step = result.augmentations[0]
        assert step.path == (10,)
        assert step.pair == (2, 5)
        assert step.edge == (0, 1)
        assert not step.far_in_interface
        assert result.strip.eta_ev((0, 1), 0) == frozenset({1, 10})
        assert S.leq(result.strip)

    def test_wide_attachment_raises_obstruction(self):
        G, S = decorated(1, [(10, 5), (10, 7)])
        with pytest.raises(ObstructionFound) as info:
            saturate(G, S)
        assert isinstance(info.value.witness, ThetaEmbedding)

    def test_requires_rich_structure(self):
        G, S = decorated(1, [(10, 4)])
        with pytest.raises(PreconditionError, match="rich"):
            saturate(G, S)

    def test_saturate_strip_returns_structure(self):
        G, S = decorated(1, [(10, 7)])
        assert saturate_strip(G, S).eta_e((0, 2)) == frozenset({2, 6, 7, 10})


class TestSteps:
    def test_violating_path(self):
        G, S = decorated(1, [(10, 2), (10, 3), (10, 5)])
        jewels = find_strip_jewels(G, S)
        assert find_violating_path(G, S, jewels) == ((10,), (2, 5))

    def test_locate_edge(self):
        _, _, S = canonical_strip(lengths=(3, 3, 3))
        assert locate_edge(S, 2, 5) == ((0, 1), 0, 1, 0)
        assert locate_edge(S, 5, 7) is None

    def test_residual_violation(self):
        G, S = decorated(1, [(10, 7)])
        jewels = find_strip_jewels(G, S)
        assert residual_violation(G, S, jewels) == (10, 7)

    def test_absorb_keeps_every_component(self):
        G, S = decorated(2, [(10, 1), (11, 2)])
        zeta, by_vertex, by_edge, residual = absorb(G, S, find_strip_jewels(G, S))
        assert by_vertex == {0: (10, 11)}
        assert by_edge == {}
        assert zeta.eta_v(0) == frozenset({10, 11})
        assert residual == frozenset()
