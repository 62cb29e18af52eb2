"""Tests for banana selection, tree growth, connectify, the trichotomy and the forest pipeline."""
import pytest

from src.errors import CapExceededError, GraphInputError, Inconclusive, PreconditionError
from src.extraction import (
    INSUFFICIENT,
    PATH,
    SUBDIVIDED_STAR,
    Tournament,
    TreeFailure,
    TreeWitness,
    banana,
    connectify,
    extract_tree,
    forest_pipeline,
    forest_shape,
    kp_trichotomy,
    paths_needed,
    transitive_subtournament,
    validate_connector,
    validate_tree_witness,
    validate_trichotomy,
    verify_banana,
)
from src.generators import layered_path_system
from src.graph import Path, PathSystem
from tests.conftest import complete, complete_bipartite, cycle, path_graph


class TestTournament:
    def test_vertices_sorted(self):
        assert Tournament((2, 0, 1)).vertices == (0, 1, 2)

    def test_invalid_arc(self):
        with pytest.raises(GraphInputError, match="Invalid arc"):
            Tournament((0, 1), frozenset({(0, 2)}))

    def test_transitive_subtournament_from_order(self):
        D = Tournament.transitive([2, 0, 1])
        assert D.is_tournament
        assert transitive_subtournament(D, 3) == (2, 0, 1)

    def test_cyclic_triangle(self):
        D = Tournament((0, 1, 2), frozenset({(0, 1), (1, 2), (2, 0)}))
        assert transitive_subtournament(D, 3) is None
        assert transitive_subtournament(D, 2) == (0, 1)

    def test_missing_pair_is_not_a_tournament(self):
        assert not Tournament((0, 1, 2), frozenset({(0, 1)})).is_tournament

    def test_underlying_merges_both_arcs(self):
        D = Tournament((5, 7), frozenset({(5, 7), (7, 5)}))
        assert D.underlying().sorted_edges() == [(0, 1)]

    def test_size_checks(self):
        D = Tournament.transitive(range(3))
        with pytest.raises(GraphInputError):
            transitive_subtournament(D, 0)
        with pytest.raises(CapExceededError):
            transitive_subtournament(D, 9)


class TestBanana:
    def test_wired_system_keeps_later_paths(self):
        G, system = layered_path_system(3, 2)
        result = banana(G, 0, 1, system, 2)
        assert result.ok
        assert result.stage == 0
        assert result.order == (1, 2)
        assert [P.vertices for P in result.paths] == [(0, 4, 5, 1), (0, 6, 7, 1)]
        assert verify_banana(G, 0, 1, result.paths) is None

    def test_too_few_paths_fail_at_stage_one(self):
        G, system = layered_path_system(3, 2)
        result = banana(G, 0, 1, system, 3)
        assert not result.ok
        assert result.stage == 1
        assert result.witness == {"stable": [2, 4, 6]}

    def test_first_neighbours_seeing_b(self):
        G, system = layered_path_system(3, 1)
        result = banana(G, 0, 1, system, 1)
        assert result.stage == 1
        assert result.witness == {"stable": []}

    def test_unwired_system_fails_at_stage_three(self):
        G, system = layered_path_system(3, 2, wired=False)
        result = banana(G, 0, 1, system, 1)
        assert result.stage == 3
        assert result.witness["stable_in_D"] == [0, 1, 2]
        assert result.witness["first_neighbors"] == [2, 4, 6]
        assert result.witness["arcs"] == []

    def test_adjacent_ends_rejected(self):
        G = cycle(4)
        system = PathSystem(0, 1, (Path((0, 1)),))
        with pytest.raises(PreconditionError, match="adjacent"):
            banana(G, 0, 1, system, 1)

    def test_wrong_ends_rejected(self):
        G, system = layered_path_system(3, 2)
        with pytest.raises(GraphInputError, match="runs from"):
            banana(G, 1, 0, system, 1)

    def test_verify_reports_broken_order(self):
        G, system = layered_path_system(3, 2)
        reverse = (system.paths[2], system.paths[1])
        assert "far interior" in verify_banana(G, 0, 1, reverse)

    def test_to_dict(self):
        G, system = layered_path_system(3, 2)
        data = banana(G, 0, 1, system, 2).to_dict()
        assert data["order"] == [1, 2]
        assert data["paths"] == [[0, 4, 5, 1], [0, 6, 7, 1]]


class TestPathsNeeded:
    @pytest.mark.parametrize("d,r,expected", [(2, 1, 2), (2, 2, 7), (3, 2, 13), (2, 3, 17)])
    def test_values(self, d, r, expected):
        assert paths_needed(d, r) == expected

    def test_invalid(self):
        with pytest.raises(GraphInputError):
            paths_needed(0, 2)


class TestExtractTree:
    def test_binary_depth_two(self):
        G, system = layered_path_system(7, 2)
        tree = extract_tree(G, 0, 1, system, 2, 2)
        assert isinstance(tree, TreeWitness)
        assert tree.children(0) == [4, 10]
        assert tree.children(4) == [7, 9]
        assert tree.children(10) == [13, 15]
        assert len(tree.vertices) == 7
        assert validate_tree_witness(G, tree, 0, 1, 2, 2, system.paths) is None

    def test_ternary_depth_two(self):
        G, system = layered_path_system(13, 2)
        tree = extract_tree(G, 0, 1, system, 3, 2)
        assert isinstance(tree, TreeWitness)
        assert len(tree.vertices) == 13

    def test_binary_depth_three(self):
        G, system = layered_path_system(17, 3)
        tree = extract_tree(G, 0, 1, system, 2, 3)
        assert isinstance(tree, TreeWitness)
        assert len(tree.vertices) == 15
        assert max(tree.depth.values()) == 3

    def test_one_path_short(self):
        G, system = layered_path_system(6, 2)
        failure = extract_tree(G, 0, 1, system, 2, 2)
        assert isinstance(failure, TreeFailure)
        assert failure.depth == 0
        assert failure.partial is None
        assert "7 needed" in failure.reason

    def test_unwired_system_starves(self):
        G, system = layered_path_system(7, 2, wired=False)
        failure = extract_tree(G, 0, 1, system, 2, 2)
        assert isinstance(failure, TreeFailure)
        assert "stage 3" in failure.reason

    def test_depth_one_takes_first_neighbours(self):
        G, system = layered_path_system(3, 2)
        tree = extract_tree(G, 0, 1, system, 3, 1)
        assert tree.children(0) == [2, 4, 6]


class TestValidateTreeWitness:
    def test_wrong_root(self):
        J = TreeWitness(1, {}, {1: 0})
        assert "root is 1" in validate_tree_witness(path_graph(3), J, 0, 2, 1, 1)

    def test_missing_child(self):
        J = TreeWitness(1, {0: 1}, {1: 0, 0: 1})
        assert "children" in validate_tree_witness(path_graph(3), J, 1, -1, 2, 1)

    def test_non_edge(self):
        J = TreeWitness(0, {2: 0}, {0: 0, 2: 1})
        assert "not an edge" in validate_tree_witness(path_graph(3), J, 0, -1, 1, 1)

    def test_b_inside(self):
        J = TreeWitness(1, {0: 1}, {1: 0, 0: 1})
        assert "b=0" in validate_tree_witness(path_graph(3), J, 1, 0, 1, 1)


class TestConnectify:
    def test_induced_path(self):
        G = path_graph(5)
        result = connectify(G, {0, 2, 4}, 3)
        assert result.outcome == PATH
        assert result.path == (0, 1, 2, 3, 4)
        assert result.hits == frozenset({0, 2, 4})
        assert validate_connector(G, {0, 2, 4}, 3, result) is None

    def test_claw_gives_subdivided_star(self):
        G = complete_bipartite(1, 3)
        result = connectify(G, {1, 2, 3}, 3)
        assert result.outcome == SUBDIVIDED_STAR
        assert result.root == 0
        assert result.H == frozenset({0, 1, 2, 3})
        assert validate_connector(G, {1, 2, 3}, 3, result) is None
        assert result.to_dict()["root"] == 0

    def test_small_s_is_insufficient(self):
        result = connectify(path_graph(4), {0}, 2)
        assert result.outcome == INSUFFICIENT
        assert not result.found

    def test_above_cap(self):
        assert isinstance(connectify(path_graph(6), range(6), 5), Inconclusive)

    def test_disconnected_rejected(self):
        G = path_graph(2).disjoint_union(path_graph(2))
        with pytest.raises(PreconditionError, match="connected"):
            connectify(G, {0, 3}, 2)

    def test_h_must_be_positive(self):
        with pytest.raises(GraphInputError):
            connectify(path_graph(3), {0}, 0)


class TestTrichotomy:
    def test_biclique_first(self):
        result = kp_trichotomy(cycle(4), 2, 1, 2, 3)
        assert result.outcome == "biclique"
        assert result.sides == ((0, 2), (1, 3))
        assert validate_trichotomy(cycle(4), result, 2, 1, 2, 3) is None

    def test_clique(self):
        result = kp_trichotomy(complete(4), 2, 1, 2, 3)
        assert result.outcome == "clique"
        assert result.vertices == (0, 1, 2)
        assert validate_trichotomy(complete(4), result, 2, 1, 2, 3) is None

    def test_tree(self):
        G = path_graph(3)
        result = kp_trichotomy(G, 2, 1, 2, 3)
        assert result.outcome == "tree"
        assert result.tree.root == 1
        assert result.vertices == (0, 1, 2)
        assert validate_trichotomy(G, result, 2, 1, 2, 3) is None

    def test_nothing_found(self):
        assert kp_trichotomy(path_graph(2), 2, 1, 2, 3) is None

    def test_above_cap(self):
        assert isinstance(kp_trichotomy(path_graph(21), 2, 1, 2, 3), Inconclusive)

    def test_invalid_parameters(self):
        with pytest.raises(GraphInputError):
            kp_trichotomy(path_graph(3), 0, 1, 2, 3)


class TestForestPipeline:
    def test_forest_shape(self):
        assert forest_shape(path_graph(4)) == (2, 2)
        assert forest_shape(complete_bipartite(1, 3)) == (3, 1)

    def test_forest_shape_rejects_cycle(self):
        with pytest.raises(GraphInputError, match="forest"):
            forest_shape(cycle(3))

    def test_stops_at_membership(self):
        report = forest_pipeline(cycle(6), path_graph(4), 3)
        assert report.stopped_at == "membership"
        assert report.stages[0].status == "failed"
        assert report.to_dict()["d"] == 2

    def test_large_host_is_inconclusive(self):
        report = forest_pipeline(cycle(15), path_graph(4), 3)
        assert report.inconclusive
        assert report.stopped_at == "membership"

    def test_stops_at_strong_block(self):
        report = forest_pipeline(cycle(5), complete_bipartite(1, 3), 3)
        assert [stage.name for stage in report.stages] == ["membership", "treewidth", "strong_block"]
        assert report.stopped_at == "strong_block"
        assert report.stages[-1].detail == {"k": 4, "needed": 4}
