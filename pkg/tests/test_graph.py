"""Tests for the graph substrate: construction, queries, paths and separations."""
import pytest

from src.errors import GraphInputError
from src.graph import (
    Graph,
    Path,
    PathSystem,
    Relation,
    certify_separator,
    edge_key,
    from_mask,
    iter_bits,
    neighborhood,
    relation,
    separates,
    simplicial_set,
    to_mask,
)
from tests.conftest import complete, cycle, make_graph, path_graph


class TestMasks:
    def test_iter_bits_ascending(self):
        assert list(iter_bits(0b101001)) == [0, 3, 5]

    def test_mask_roundtrip(self):
        assert from_mask(to_mask([4, 1, 7])) == frozenset({1, 4, 7})

    def test_edge_key_orders_pair(self):
        assert edge_key(5, 2) == (2, 5)
        assert edge_key(2, 5) == (2, 5)


class TestConstruction:
    def test_loop_rejected(self):
        with pytest.raises(GraphInputError, match="loops"):
            make_graph(3, [(1, 1)])

    def test_out_of_range_rejected(self):
        with pytest.raises(GraphInputError, match="out of range"):
            make_graph(3, [(0, 3)])

    def test_negative_vertex_count_rejected(self):
        with pytest.raises(GraphInputError):
            Graph(-1)

    def test_parallel_edges_collapse(self):
        G = make_graph(2, [(0, 1), (1, 0)])
        assert G.edges == frozenset({(0, 1)})

    def test_equal_graphs_compare_equal(self):
        assert make_graph(3, [(0, 1), (1, 2)]) == path_graph(3)


class TestQueries:
    def test_neighbors_and_degree(self):
        G = cycle(5)
        assert G.neighbors(0) == [1, 4]
        assert G.degree(3) == 2
        assert G.max_degree() == 2

    def test_check_vertex(self):
        with pytest.raises(GraphInputError, match="Invalid vertex"):
            path_graph(3).check_vertex(3)

    def test_clique_and_stable(self):
        G = complete(4)
        assert G.is_clique([0, 1, 2, 3])
        assert not path_graph(3).is_clique([0, 1, 2])
        assert path_graph(3).is_stable([0, 2])

    def test_neighbors_of_set_is_open(self):
        assert path_graph(5).neighbors_of_set([1, 2]) == frozenset({0, 3})

    def test_induced_subgraph_relabels_in_order(self):
        sub, labels = cycle(6).induced_subgraph([5, 0, 1])
        assert labels == [0, 1, 5]
        assert sub.sorted_edges() == [(0, 1), (0, 2)]

    def test_with_edges_and_vertices(self):
        G = path_graph(3).with_edges(added=[(0, 2)], removed=[(0, 1)])
        assert G.sorted_edges() == [(0, 2), (1, 2)]
        H = path_graph(2).with_vertices(1, added=[(1, 2)])
        assert H == path_graph(3)

    def test_disjoint_union(self):
        G = path_graph(2).disjoint_union(path_graph(2))
        assert G.sorted_edges() == [(0, 1), (2, 3)]


class TestConnectivity:
    def test_components_ordered_by_smallest_vertex(self):
        G = make_graph(5, [(3, 4), (0, 2)])
        assert G.components() == [frozenset({0, 2}), frozenset({1}), frozenset({3, 4})]

    def test_is_connected_within(self):
        G = path_graph(5)
        assert G.is_connected()
        assert not G.is_connected(within=[0, 1, 3])
        assert G.is_connected(within=[])

    def test_shortest_path_prefers_small_vertices(self):
        assert cycle(4).shortest_path(0, 2) == [0, 1, 2]

    def test_shortest_path_respects_mask(self):
        assert cycle(4).shortest_path(0, 2, within=to_mask([3])) == [0, 3, 2]
        assert path_graph(3).shortest_path(0, 2, within=0) is None

    def test_tree_and_forest(self):
        assert path_graph(4).is_tree()
        assert not cycle(4).is_forest()
        assert make_graph(4, [(0, 1), (2, 3)]).is_forest()


class TestPaths:
    def test_repeated_vertex_rejected(self):
        with pytest.raises(GraphInputError, match="repeated"):
            Path((0, 1, 0))

    def test_path_properties(self):
        P = Path((3, 1, 4, 5))
        assert P.length == 3
        assert P.ends == (3, 5)
        assert P.interior == (1, 4)
        assert P.reversed().vertices == (5, 4, 1, 3)

    def test_chord_detected_only_when_induced(self):
        G = complete(3)
        assert Path((0, 1, 2)).check_in(G) == "chord 0-2"
        assert Path((0, 1, 2)).check_in(G, induced=False) is None

    def test_non_adjacent_step(self):
        assert "not adjacent" in Path((0, 2)).check_in(path_graph(3))

    def test_path_system_shared_interior(self):
        G = cycle(4).with_edges(added=[(1, 3)])
        system = PathSystem(0, 2, (Path((0, 1, 2)), Path((0, 1, 2))))
        assert "shares interior vertex 1" in system.check_in(G, induced=False)

    def test_path_system_first_neighbors(self):
        system = PathSystem(0, 2, (Path((0, 1, 2)), Path((0, 3, 2))))
        assert system.first_neighbors() == [1, 3]
        assert system.check_in(cycle(4)) is None


class TestSeparations:
    def test_separates_cycle(self):
        separation = separates(cycle(6), [1, 5], 0, [3])
        assert separation is not None
        assert separation.left == frozenset({0})
        assert separation.is_valid_in(cycle(6))

    def test_does_not_separate(self):
        assert separates(cycle(6), [1], 0, [3]) is None

    def test_certificate_verified(self):
        cert = certify_separator(path_graph(5), 0, [4], [2])
        assert cert.verified
        assert cert.size == 1
        assert cert.within_bound is None
        assert cert.to_dict()["S"] == [2]

    def test_certificate_rejects_target_inside(self):
        assert not certify_separator(path_graph(5), 0, [2], [2]).verified


class TestNeighbourhoods:
    def test_closed_ball(self):
        assert neighborhood(path_graph(6), 2, 2) == frozenset({0, 1, 2, 3, 4})

    def test_negative_radius(self):
        with pytest.raises(GraphInputError):
            neighborhood(path_graph(3), 0, -1)

    def test_relation(self):
        G = make_graph(4, [(0, 2), (0, 3), (1, 2)])
        assert relation(G, [0], [2, 3]) == Relation.COMPLETE
        assert relation(G, [1], [3]) == Relation.ANTICOMPLETE
        assert relation(G, [0, 1], [2, 3]) == Relation.MIXED

    def test_relation_empty_side_is_anticomplete(self):
        assert relation(complete(3), [], [0, 1]) == Relation.ANTICOMPLETE

    def test_relation_overlap_rejected(self):
        with pytest.raises(GraphInputError, match="overlap"):
            relation(complete(3), [0, 1], [1])

    def test_simplicial_set(self):
        assert simplicial_set(path_graph(3)) == frozenset({0, 2})
        assert simplicial_set(complete(3)) == frozenset({0, 1, 2})
        assert simplicial_set(make_graph(2, [])) == frozenset({0, 1})
