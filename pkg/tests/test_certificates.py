"""Tests for certificate digests, canonical JSON and the file exporter."""
import hashlib
import json

from src.certificates import inputs_digest, make_certificate, to_json
from src.config import CERTIFICATE_SCHEMA, TOOL_VERSION
from src.exporter import export_certificate
from tests.conftest import complete


def make_cert(**overrides):
    defaults = dict(kind="detect", G=complete(3), outcome="none", witness={"kind": "theta"}, verified=True)
    return make_certificate(**{**defaults, **overrides})


class TestDigest:
    def test_graph_only(self):
        assert inputs_digest(complete(3)) == hashlib.sha256(b"Bw").hexdigest()

    def test_extra_inputs_change_digest(self):
        assert inputs_digest(complete(3), {"t": 3}) != inputs_digest(complete(3), {"t": 4})

    def test_key_order_is_irrelevant(self):
        assert inputs_digest(None, {"a": 1, "b": 2}) == inputs_digest(None, {"b": 2, "a": 1})


class TestCertificateJson:
    def test_fields(self):
        data = json.loads(to_json(make_cert(seed=7)))
        assert data["schema"] == CERTIFICATE_SCHEMA
        assert data["tool_version"] == TOOL_VERSION
        assert data["seed"] == 7
        assert data["verified"] is True

    def test_compact_sorted(self):
        text = to_json(make_cert())
        assert ", " not in text
        assert text == json.dumps(json.loads(text), sort_keys=True, separators=(",", ":"))


class TestExporter:
    def test_json_matches_stdout_form(self, tmp_path):
        cert = make_cert()
        target = tmp_path / "out" / "cert.json"
        export_certificate(cert, str(target))
        assert target.read_text() == to_json(cert) + "\n"

    def test_markdown_embeds_witness(self, tmp_path):
        target = tmp_path / "cert.md"
        export_certificate(make_cert(), str(target))
        text = target.read_text()
        assert text.startswith("# detect")
        assert "**Outcome:** none | **Verified:** yes" in text
        assert '"kind": "theta"' in text

    def test_markdown_harness_failure(self, tmp_path):
        checks = [{
            "check": "banana",
            "samples": 3,
            "passed": 2,
            "rejected": 0,
            "failed": 1,
            "first_failure": {"sample": 1, "message": "stage 1", "graph6": "Bw", "witness": {}},
        }]
        target = tmp_path / "report.md"
        export_certificate(make_cert(kind="verify", G=None, outcome="fail", witness={"checks": checks}), str(target))
        text = target.read_text()
        assert "| banana | 3 | 2 | 0 | 1 |" in text
        assert "## banana: first failure (sample 1)" in text
        assert "graph6: `Bw`" in text

    def test_explicit_format_overrides_extension(self, tmp_path):
        target = tmp_path / "cert.txt"
        export_certificate(make_cert(), str(target), fmt="md")
        assert target.read_text().startswith("# detect")
