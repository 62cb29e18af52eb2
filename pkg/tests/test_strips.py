"""Tests for strip-structures: axioms, rungs, locality, eta-pyramids and jewels."""
from dataclasses import replace

import pytest

from src.errors import GraphInputError, ParseError, PreconditionError
from src.generators import CaterpillarSpec, make_a_seed
from src.graph import Graph, Path
from src.strips import (
    Rung,
    SmoothTree,
    canonical_pyramid_strip,
    caterpillar_strip,
    check_claw,
    eta_pyramids,
    find_strip_jewels,
    is_local,
    locality,
    read_strip,
    require_strip,
    rungs,
    strip_from_dict,
    validate_strip,
)
from tests.conftest import make_configuration, path_graph

# Pyramid (2,3,3): apex 0, base 1,2,3, P1 = 0-4-1, P2 = 0-5-6-2, P3 = 0-7-8-3.
CLAW = ((0, 1), (0, 2), (0, 3))


class TestSmoothTree:
    def test_star(self):
        T = SmoothTree(Graph.from_edges(4, CLAW))
        assert T.leaves == (1, 2, 3)
        assert T.branch_vertices == (0,)
        assert T.routes(0, (0, 1)) == [[(0, 1)]]

    def test_degree_two_rejected(self):
        with pytest.raises(GraphInputError, match="degree 2"):
            SmoothTree(path_graph(3))

    def test_too_small(self):
        with pytest.raises(GraphInputError):
            SmoothTree(path_graph(2))


class TestCanonicalStrip:
    def test_valid_and_flagged(self, pyramid_strip):
        G, _, S = pyramid_strip
        report = validate_strip(G, S)
        assert report.ok
        assert report.tame and report.substantial and report.rich

    def test_layout(self, pyramid_strip):
        _, _, S = pyramid_strip
        assert S.eta_e((0, 2)) == frozenset({2, 5, 6})
        assert S.eta_ev((0, 2), 0) == frozenset({2})
        assert S.eta_ev((0, 2), 2) == frozenset({5})
        assert S.interior((0, 2)) == frozenset({6})
        assert S.boundary(0) == frozenset({1, 2, 3})

    def test_needs_long_pyramid(self):
        G, sigma = make_configuration(lengths=(1, 2, 2))
        with pytest.raises(PreconditionError, match="long"):
            canonical_pyramid_strip(G, sigma)


class TestAxioms:
    def test_s1_overlap(self, pyramid_strip):
        G, _, S = pyramid_strip
        report = validate_strip(G, S.with_sets(vmap={0: frozenset({4})}))
        assert report.axiom == "S1"
        assert report.witness == (4,)

    def test_s2_leaf_set(self, pyramid_strip):
        G, _, S = pyramid_strip
        G = G.with_vertices(1)
        report = validate_strip(G, S.with_sets(vmap={1: frozenset({9})}))
        assert report.axiom == "S2"

    def test_s3_empty_interface(self, pyramid_strip):
        G, _, S = pyramid_strip
        evmap = dict(S.evmap)
        del evmap[((0, 1), 1)]
        assert validate_strip(G, S.with_sets(evmap=evmap)).axiom == "S3"

    def test_s4_edge_between_strips(self, pyramid_strip):
        G, _, S = pyramid_strip
        report = validate_strip(G.with_edges(added=[(4, 6)]), S)
        assert report.axiom == "S4"
        assert report.witness == (4, 6)

    def test_s8_apex_sees_strip_interior(self, pyramid_strip):
        G, _, S = pyramid_strip
        assert validate_strip(G.with_edges(added=[(0, 6)]), S).axiom == "S8"

    def test_require_rich(self, pyramid_strip):
        G, _, S = pyramid_strip
        G = G.with_vertices(1, [(9, 4)])
        with pytest.raises(PreconditionError, match="rich"):
            require_strip(replace(S, host=G), rich=True)


class TestRungs:
    def test_single_rung_per_edge(self, pyramid_strip):
        _, _, S = pyramid_strip
        found, leftover = rungs(S, (0, 2))
        assert found == [Rung((0, 2), Path((2, 6, 5)))]
        assert leftover == frozenset()
        assert found[0].from_end(2) == (5, 6, 2)

    def test_unknown_edge(self, pyramid_strip):
        _, _, S = pyramid_strip
        with pytest.raises(GraphInputError):
            rungs(S, (1, 2))


class TestLocality:
    def test_edge_local(self, pyramid_strip):
        _, _, S = pyramid_strip
        result = locality(S, [1, 4])
        assert result.local
        assert (result.kind, result.where) == ("edge", (0, 1))

    def test_vertex_local(self, pyramid_strip):
        _, _, S = pyramid_strip
        result = locality(S, [1, 2])
        assert (result.kind, result.where) == ("vertex", 0)

    def test_nonlocal_pair(self, pyramid_strip):
        _, _, S = pyramid_strip
        result = locality(S, [4, 6])
        assert not result.local
        assert set(result.pair) == {4, 6}
        assert not is_local(S, result.pair)

    def test_outside_eta(self, pyramid_strip):
        _, _, S = pyramid_strip
        with pytest.raises(GraphInputError, match="eta"):
            locality(S, [0])


class TestEtaPyramids:
    def test_recovers_the_pyramid(self, pyramid_strip):
        _, sigma, S = pyramid_strip
        assert list(eta_pyramids(S, 0, CLAW)) == [sigma]

    def test_bad_claw(self, pyramid_strip):
        _, _, S = pyramid_strip
        with pytest.raises(GraphInputError, match="claw"):
            check_claw(S, 0, ((0, 1), (0, 2)), 3)


class TestJewels:
    def test_jewel_at_first_base_vertex(self, pyramid_strip):
        G, _, S = pyramid_strip
        G = G.with_vertices(1, [(9, 2), (9, 6), (9, 3), (9, 8)])
        index = find_strip_jewels(G, S)
        assert index.all_jewels() == frozenset({9})
        assert index.by_seagull[(0, (0, 2), (0, 3))] == frozenset({9})
        assert index.by_seagull[(0, (0, 1), (0, 2))] == frozenset()
        assert index.to_dict()["per_vertex"] == {"0": [9]}

    def test_no_jewels_in_bare_pyramid(self, pyramid_strip):
        G, _, S = pyramid_strip
        assert find_strip_jewels(G, S).all_jewels() == frozenset()

    def test_invalid_strip_rejected(self, pyramid_strip):
        G, _, S = pyramid_strip
        with pytest.raises(PreconditionError):
            find_strip_jewels(G, S.with_sets(vmap={0: frozenset({4})}))


class TestSerialization:
    def test_dict_round_trip(self, pyramid_strip):
        G, _, S = pyramid_strip
        assert strip_from_dict(G, S.to_dict()) == S

    def test_interface_key_must_name_an_end(self, pyramid_strip):
        G, _, S = pyramid_strip
        data = S.to_dict()
        data["evmap"]["0-1@2"] = [4]
        with pytest.raises(GraphInputError, match="not an end"):
            strip_from_dict(G, data)

    def test_emap_key_must_be_tree_edge(self, pyramid_strip):
        G, _, S = pyramid_strip
        data = S.to_dict()
        data["emap"]["1-2"] = [4]
        with pytest.raises(GraphInputError, match="not an edge of T"):
            strip_from_dict(G, data)

    def test_malformed_json(self, pyramid_strip):
        G, _, _ = pyramid_strip
        with pytest.raises(ParseError):
            read_strip("{", G)


class TestCaterpillarStrip:
    def test_claw_seed_strip(self):
        G, apex, seed = make_a_seed("L")
        C = CaterpillarSpec.parse("L").build()
        S = caterpillar_strip(G, apex, seed, C)
        assert S.tree.leaves == (1, 2, 3)
        assert S.eta_e((0, 1)) == frozenset({0, 3})
        report = validate_strip(G, S)
        assert report.ok
        assert report.rich

    def test_size_mismatch(self):
        G, apex, seed = make_a_seed("L")
        C = CaterpillarSpec.parse("L.L").build()
        with pytest.raises(GraphInputError, match="Invalid seed"):
            caterpillar_strip(G, apex, seed, C)
