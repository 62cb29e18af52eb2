"""Tests for the check registry, sample bookkeeping and the verify runner."""
import pytest

from src.config import EXHAUSTIVE_MAX_N
from src.errors import GraphInputError
from src.harness import (
    FAIL,
    PASS,
    REGISTRY,
    REJECTED,
    CheckSummary,
    SampleOutcome,
    exhaustive_count,
    get_check,
    pyramid_blocks,
    pyramid_instance,
    run_samples,
    sample_rng,
    verify,
)
from tests.conftest import path_graph


def make_summary(**overrides):
    defaults = dict(check="banana")
    return CheckSummary(**{**defaults, **overrides})


class TestRegistry:
    def test_registered_ids(self):
        assert list(REGISTRY) == [
            "pyramid-vertex",
            "pyramid-path",
            "strip-locality",
            "saturation",
            "jewel-locality",
            "bag-clique",
            "jewel-count",
            "adjacent-centres",
            "jewel-separator",
            "apex-separator",
            "banana",
            "tree-extraction",
        ]

    def test_unknown_check(self):
        with pytest.raises(GraphInputError, match="Unknown check"):
            get_check("nope")

    def test_descriptions_come_from_docstrings(self):
        assert get_check("bag-clique").description == "Each bag misses being a clique by at most one interface."
        assert get_check("banana").description.startswith("Selections re-verify")


class TestCheckSummary:
    def test_record_counts(self):
        summary = make_summary()
        summary.record(0, SampleOutcome(PASS))
        summary.record(1, SampleOutcome(REJECTED, "outside"))
        assert (summary.samples, summary.passed, summary.rejected, summary.failed) == (2, 1, 1, 0)
        assert summary.ok

    def test_first_failure_is_smallest_index(self):
        summary = make_summary()
        summary.record(7, SampleOutcome(FAIL, "late", path_graph(2)))
        summary.record(3, SampleOutcome(FAIL, "early", path_graph(2), {"x": 1}))
        assert not summary.ok
        assert summary.first_failure == {"sample": 3, "message": "early", "graph6": "A_", "witness": {"x": 1}}

    def test_merge_adds_counters(self):
        left = make_summary(samples=2, passed=2)
        right = make_summary(samples=3, passed=1, failed=2, first_failure={"sample": 4})
        merged = left.merge(right)
        assert merged.to_dict() == {
            "check": "banana",
            "ok": False,
            "samples": 5,
            "passed": 3,
            "failed": 2,
            "rejected": 0,
            "first_failure": {"sample": 4},
        }

    def test_merge_keeps_earliest_failure(self):
        left = make_summary(samples=1, failed=1, first_failure={"sample": 9})
        right = make_summary(samples=1, failed=1, first_failure={"sample": 2})
        assert left.merge(right).first_failure == {"sample": 2}


class TestSampling:
    def test_rng_depends_on_all_parts(self):
        assert sample_rng(0, "banana", 1).random() == sample_rng(0, "banana", 1).random()
        assert sample_rng(0, "banana", 1).random() != sample_rng(0, "banana", 2).random()

    def test_samples_are_reproducible(self):
        first = run_samples("banana", 5, 13, 3, range(4))
        second = run_samples("banana", 5, 13, 3, range(4))
        assert first.to_dict() == second.to_dict()


class TestVerify:
    def test_banana_check_passes(self):
        summary = verify("banana", samples=10)
        assert summary.ok
        assert summary.passed == 10

    def test_tree_extraction_check_passes(self):
        summary = verify("tree-extraction", samples=6, seed=3)
        assert summary.ok
        assert summary.samples == 6

    def test_zero_samples(self):
        summary = verify("banana", samples=0)
        assert summary.samples == 0
        assert summary.ok

    def test_invalid_jobs(self):
        with pytest.raises(GraphInputError, match="jobs=0"):
            verify("banana", samples=2, jobs=0)

    def test_unknown_check_rejected_before_running(self):
        with pytest.raises(GraphInputError):
            verify("nope", samples=1)

    def test_jobs_do_not_change_summary(self):
        serial = verify("banana", samples=6, seed=1)
        sharded = verify("banana", samples=6, seed=1, jobs=2)
        assert serial.to_dict() == sharded.to_dict()


class TestExhaustiveInstances:
    def test_blocks_smallest_hosts_first(self):
        assert pyramid_blocks(9, (1, 2)) == [((2, 2, 2), 1, 8), ((2, 2, 3), 1, 16), ((2, 2, 2), 2, 64)]

    def test_counts(self):
        assert exhaustive_count("pyramid-vertex", 9) == 24
        assert exhaustive_count("pyramid-path", 9) == 88
        assert exhaustive_count("banana", 9) == 0

    def test_floor_caps_the_enumeration(self):
        assert exhaustive_count("pyramid-vertex", 40) == exhaustive_count("pyramid-vertex", EXHAUSTIVE_MAX_N)

    def test_vertex_attaches_along_code_bits(self):
        G, _, (p,) = pyramid_instance((2, 2, 2), 1, 0b101)
        assert p == 7
        assert sorted(G.neighbors(p)) == [1, 3]

    def test_path_vertices_take_consecutive_bit_groups(self):
        G, _, P = pyramid_instance((2, 2, 2), 2, 0b010_001)
        assert P == (7, 8)
        assert sorted(G.neighbors(7)) == [1, 8]
        assert sorted(G.neighbors(8)) == [2, 7]

    def test_enumerated_samples_do_not_depend_on_seed(self):
        first = verify("pyramid-vertex", samples=8, max_n=9, seed=0)
        second = verify("pyramid-vertex", samples=8, max_n=9, seed=5)
        assert first.to_dict() == second.to_dict()


class TestPyramidOracles:
    def test_every_small_vertex_attachment(self):
        count = exhaustive_count("pyramid-vertex", 9)
        summary = verify("pyramid-vertex", samples=count, max_n=9)
        assert summary.samples == count
        assert summary.failed == 0
        assert summary.passed > 0

    def test_every_small_path_attachment(self):
        count = exhaustive_count("pyramid-path", 9)
        summary = verify("pyramid-path", samples=count, max_n=9)
        assert summary.samples == count
        assert summary.failed == 0
        assert summary.passed > 0


class TestStripChecks:
    @pytest.mark.parametrize("check_id", ["saturation", "bag-clique", "jewel-count", "jewel-separator", "apex-separator"])
    def test_seeded_hosts_hold(self, check_id):
        summary = verify(check_id, samples=100, seed=7)
        assert summary.failed == 0, summary.first_failure
