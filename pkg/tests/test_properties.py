"""Property tests over small generated graphs."""
from itertools import combinations

from hypothesis import given, settings
from hypothesis import strategies as st

from src.embeddings import validate_embedding
from src.extraction import Tournament, banana, transitive_subtournament
from src.generators import layered_path_system, make_config, random_class_graph
from src.graph import Graph, PathSystem, separates
from src.menger import local_connectivity, menger
from src.obstructions import (
    find_clique,
    find_prism,
    find_pyramid,
    find_theta,
    in_class,
    is_prism_graph,
    is_pyramid_graph,
    is_theta_graph,
)
from src.treewidth import lower_bound, treewidth, validate_decomposition


@st.composite
def small_graphs(draw, max_n=8):
    n = draw(st.integers(min_value=1, max_value=max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen)


lengths = st.tuples(*(st.integers(min_value=2, max_value=4) for _ in range(3)))
# prisms stay under the theta search cap
prism_lengths = st.tuples(*(st.integers(min_value=1, max_value=3) for _ in range(3)))


def min_separator_size(G, a, b):
    """Smallest vertex set splitting a from b, by trying every subset."""
    others = [v for v in G.vertices if v not in (a, b)]
    for size in range(len(others) + 1):
        if any(separates(G, M, a, {b}) for M in combinations(others, size)):
            return size


def has_induced(G, recognise):
    """Whether some vertex subset induces a graph the recogniser accepts."""
    return any(
        recognise(G.induced_subgraph(X)[0])
        for size in range(4, G.n + 1)
        for X in combinations(G.vertices, size)
    )


class TestTreewidthProperties:
    @settings(max_examples=40, deadline=None)
    @given(small_graphs())
    def test_decomposition_is_valid_and_bounds_hold(self, G):
        result = treewidth(G)
        assert result.exact
        report = validate_decomposition(G, result.decomposition)
        assert report.ok
        assert report.width == result.width
        assert lower_bound(G) <= result.width


class TestConfigurationProperties:
    @settings(max_examples=20, deadline=None)
    @given(lengths)
    def test_theta_is_found_and_valid(self, ls):
        G, _ = make_config("theta", ls)
        witness = find_theta(G)
        assert witness is not None
        assert validate_embedding(G, witness) is None
        assert find_prism(G) is None

    @settings(max_examples=20, deadline=None)
    @given(prism_lengths)
    def test_prism_is_found_and_valid(self, ls):
        G, _ = make_config("prism", ls)
        witness = find_prism(G)
        assert witness is not None
        assert validate_embedding(G, witness) is None
        assert find_theta(G) is None

    @settings(max_examples=20, deadline=None)
    @given(lengths)
    def test_pyramid_is_long_and_valid(self, ls):
        G, _ = make_config("pyramid", ls)
        witness = find_pyramid(G, long_only=True)
        assert witness is not None
        assert validate_embedding(G, witness) is None
        assert in_class(G)


class TestMengerProperties:
    @settings(max_examples=50, deadline=None)
    @given(small_graphs(), st.integers(min_value=1, max_value=4))
    def test_paths_or_small_separator(self, G, k):
        pairs = [(a, b) for a in G.vertices for b in G.vertices if a < b and not G.has_edge(a, b)]
        for a, b in pairs[:3]:
            result = menger(G, a, b, k)
            if isinstance(result, PathSystem):
                assert len(result) == k
                assert result.check_in(G) is None
            else:
                assert result.verified
                assert result.size < k


class TestGeneratorProperties:
    @settings(max_examples=15, deadline=None)
    @given(st.integers(min_value=1, max_value=8), st.integers(min_value=0, max_value=10_000))
    def test_random_members_are_in_class(self, n, seed):
        G = random_class_graph(n, 3, seed)
        assert in_class(G)
        assert find_clique(G, 3) is None
        assert random_class_graph(n, 3, seed) == G


class TestSelectionProperties:
    @settings(max_examples=25, deadline=None)
    @given(st.integers(min_value=1, max_value=4), st.integers(min_value=0, max_value=3), st.integers(min_value=2, max_value=3))
    def test_wired_layers_always_select(self, nu, spare, layers):
        G, system = layered_path_system(nu + 1 + spare, layers)
        result = banana(G, 0, 1, system, nu)
        assert result.ok
        assert len(result.paths) == nu

    @settings(max_examples=25, deadline=None)
    @given(st.permutations(range(6)), st.integers(min_value=1, max_value=6))
    def test_transitive_tournament_keeps_the_order(self, order, p):
        D = Tournament.transitive(order)
        chosen = transitive_subtournament(D, p)
        positions = [order.index(v) for v in chosen]
        assert len(chosen) == p
        assert positions == sorted(positions)


class TestMengerAgainstSubsets:
    @settings(max_examples=60, deadline=None)
    @given(small_graphs(), st.integers(min_value=1, max_value=4))
    def test_dichotomy_matches_smallest_separator(self, G, k):
        pairs = [(a, b) for a in G.vertices for b in G.vertices if a < b and not G.has_edge(a, b)]
        for a, b in pairs:
            smallest = min_separator_size(G, a, b)
            result = menger(G, a, b, k)
            assert isinstance(result, PathSystem) == (smallest >= k)
            if not isinstance(result, PathSystem):
                assert result.size == smallest
            assert local_connectivity(G, a, b) == smallest


class TestDetectorsAgainstSubsets:
    @settings(max_examples=40, deadline=None)
    @given(small_graphs())
    def test_theta(self, G):
        assert (find_theta(G) is not None) == has_induced(G, is_theta_graph)

    @settings(max_examples=40, deadline=None)
    @given(small_graphs())
    def test_prism(self, G):
        assert (find_prism(G) is not None) == has_induced(G, is_prism_graph)

    @settings(max_examples=40, deadline=None)
    @given(small_graphs())
    def test_pyramid(self, G):
        assert (find_pyramid(G) is not None) == has_induced(G, is_pyramid_graph)
