"""End-to-end tests for the CLI through run(), one JSON certificate per command."""
import json

import pytest

from main import run
from src.generators import make_config
from src.graph_io import decode, encode_graph6
from tests.conftest import canonical_strip, complete, complete_bipartite, cycle, path_graph


@pytest.fixture
def write_graph(tmp_path):
    def write(G, name="g.g6"):
        path = tmp_path / name
        path.write_text(encode_graph6(G) + "\n")
        return str(path)

    return write


def certificate(capsys):
    return json.loads(capsys.readouterr().out)


class TestGen:
    def test_pyramid(self, capsys):
        assert run(["gen", "--kind", "pyramid", "--lengths", "2,2,2"]) == 0
        G, _ = make_config("pyramid", (2, 2, 2))
        assert decode(capsys.readouterr().out) == G

    def test_bad_lengths(self, capsys):
        assert run(["gen", "--kind", "theta", "--lengths", "1,1,1"]) == 1
        assert "Error" in capsys.readouterr().err

    def test_unknown_kind(self):
        assert run(["gen", "--kind", "moebius"]) == 1


class TestDetect:
    def test_theta_found(self, capsys, write_graph):
        assert run(["detect", "--kind", "theta", "--in", write_graph(complete_bipartite(2, 3))]) == 0
        cert = certificate(capsys)
        assert cert["kind"] == "detect"
        assert cert["outcome"] == "found"
        assert cert["verified"] is True
        assert cert["witness"]["verified"] is True

    def test_none_after_exhaustive_search(self, capsys, write_graph):
        assert run(["detect", "--kind", "theta", "--in", write_graph(cycle(6))]) == 0
        assert certificate(capsys)["outcome"] == "none"

    def test_clique(self, capsys, write_graph):
        assert run(["detect", "--kind", "clique", "--size", "3", "--in", write_graph(complete(4))]) == 0
        assert certificate(capsys)["witness"]["vertices"] == [0, 1, 2]

    def test_cap_exceeded_is_exit_two(self, write_graph):
        assert run(["detect", "--kind", "theta", "--in", write_graph(path_graph(15))]) == 2

    def test_missing_input(self, capsys, tmp_path):
        assert run(["detect", "--kind", "theta", "--in", str(tmp_path / "nothing.g6")]) == 1
        assert "not found" in capsys.readouterr().err

    def test_output_is_deterministic(self, capsys, write_graph):
        source = write_graph(complete_bipartite(2, 3))
        run(["detect", "--kind", "theta", "--in", source])
        first = capsys.readouterr().out
        run(["detect", "--kind", "theta", "--in", source])
        assert capsys.readouterr().out == first


class TestClassAndTreewidth:
    def test_k4_not_in_c3(self, capsys, write_graph):
        assert run(["class", "--t", "3", "--in", write_graph(complete(4))]) == 0
        cert = certificate(capsys)
        assert cert["outcome"] == "not-member"
        assert cert["witness"]["in_C"] is True
        assert cert["witness"]["in_C_t"] is False

    def test_exact_treewidth(self, capsys, write_graph):
        assert run(["tw", "--no-cache", "--in", write_graph(cycle(5))]) == 0
        cert = certificate(capsys)
        assert cert["outcome"] == "exact"
        assert cert["witness"]["treewidth"] == 2
        assert cert["verified"] is True

    def test_bounds_only_above_cap(self, capsys, write_graph):
        assert run(["tw", "--no-cache", "--in", write_graph(path_graph(31))]) == 2
        assert certificate(capsys)["outcome"] == "inconclusive"


class TestConstants:
    def test_table(self, capsys):
        assert run(["constants", "--no-cache", "--t", "3"]) == 0
        cert = certificate(capsys)
        assert cert["inputs_digest"]
        assert cert["witness"]["constants"]["j"]["value"] == 18
        assert cert["witness"]["constants"]["mu"]["tag"] == "symbolic"


class TestStripCommands:
    @pytest.fixture
    def strip_files(self, tmp_path, write_graph):
        def write(extra=0, edges=()):
            G, _, S = canonical_strip(lengths=(3, 3, 3))
            strip = tmp_path / "strip.json"
            strip.write_text(json.dumps(S.to_dict()))
            return write_graph(G.with_vertices(extra, edges)), str(strip)

        return write

    def test_validate(self, capsys, strip_files):
        source, strip = strip_files()
        assert run(["strip", "validate", "--in", source, "--strip", strip]) == 0
        assert certificate(capsys)["outcome"] == "valid"

    def test_saturate_with_jewel(self, capsys, strip_files):
        source, strip = strip_files(1, [(10, 2), (10, 7), (10, 3), (10, 9)])
        assert run(["strip", "saturate", "--in", source, "--strip", strip]) == 0
        cert = certificate(capsys)
        assert cert["outcome"] == "saturated"
        assert cert["verified"] is True

    def test_saturate_reports_obstruction(self, capsys, strip_files):
        source, strip = strip_files(1, [(10, 5), (10, 7)])
        assert run(["strip", "saturate", "--in", source, "--strip", strip]) == 1
        cert = certificate(capsys)
        assert cert["outcome"] == "obstruction"
        assert cert["verified"] is True

    def test_apex_separator(self, capsys, strip_files):
        source, strip = strip_files()
        assert run(["sep", "--no-cache", "--in", source, "--strip", strip, "--apex", "0", "--target", "5"]) == 0
        cert = certificate(capsys)
        assert cert["outcome"] == "separated"
        assert cert["witness"]["S"] == [4, 6, 8]

    def test_wrong_apex(self, strip_files):
        source, strip = strip_files()
        assert run(["sep", "--no-cache", "--in", source, "--strip", strip, "--apex", "1", "--target", "5"]) == 1

    def test_sep_needs_one_model(self, write_graph):
        assert run(["sep", "--in", write_graph(cycle(5)), "--apex", "0", "--target", "2"]) == 1


class TestTreeCommands:
    def test_extract_from_generated_system(self, capsys, tmp_path):
        graph = tmp_path / "layered.g6"
        paths = tmp_path / "paths.json"
        assert run([
            "gen", "--kind", "layered", "--count", "7", "--r", "2",
            "--paths-out", str(paths), "--out", str(graph),
        ]) == 0
        capsys.readouterr()
        args = ["tree", "extract", "--in", str(graph), "--a", "0", "--b", "1", "--paths", str(paths)]
        assert run(args + ["--d", "2", "--r", "2"]) == 0
        cert = certificate(capsys)
        assert cert["outcome"] == "found"
        assert cert["witness"]["root"] == 0

    def test_trichotomy_biclique(self, capsys, write_graph):
        assert run(["tree", "trichotomy", "--in", write_graph(cycle(4)), "--s", "2", "--t", "3"]) == 0
        assert certificate(capsys)["outcome"] == "biclique"

    def test_connectify_path(self, capsys, tmp_path, write_graph):
        vertex_set = tmp_path / "s.json"
        vertex_set.write_text("[0, 2, 4]")
        assert run(["tree", "connectify", "--in", write_graph(path_graph(5)), "--set", str(vertex_set)]) == 0
        cert = certificate(capsys)
        assert cert["outcome"] == "path"
        assert cert["verified"] is True


class TestVerifyCommand:
    def test_banana_check(self, capsys):
        assert run(["verify", "--check", "banana", "--samples", "3"]) == 0
        cert = certificate(capsys)
        assert cert["outcome"] == "pass"
        assert cert["seed"] == 0
        assert cert["witness"]["checks"][0]["samples"] == 3

    def test_unknown_check(self):
        assert run(["verify", "--check", "nope", "--samples", "1"]) == 1

    def test_list(self, capsys):
        assert run(["verify", "--list"]) == 0
        assert "tree-extraction" in capsys.readouterr().err

    def test_markdown_report(self, capsys, tmp_path):
        report = tmp_path / "report.md"
        assert run(["verify", "--check", "banana", "--samples", "2", "--out", str(report)]) == 0
        assert capsys.readouterr().out == ""
        text = report.read_text()
        assert text.startswith("# verify")
        assert "| banana | 2 | 2 | 0 | 0 |" in text
