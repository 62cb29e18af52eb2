"""
JSON certificates.

Every command prints exactly one certificate on stdout. The digest ties it to
its input: sha256 over the canonical graph6 of the host, followed by the
sorted-key JSON of any further inputs (a strip file, a path system).
"""

import hashlib
import json
from typing import Any, Optional

from pydantic import BaseModel, ConfigDict, Field

from .config import CERTIFICATE_SCHEMA, TOOL_VERSION
from .graph import Graph
from .graph_io import encode_graph6


class Certificate(BaseModel):
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    schema_version: str = Field(default=CERTIFICATE_SCHEMA, alias="schema")
    kind: str
    inputs_digest: str
    outcome: str
    witness: Any = None
    verified: bool = False
    tool_version: str = TOOL_VERSION
    seed: Optional[int] = None


def inputs_digest(G: Optional[Graph], extra: Optional[dict] = None) -> str:
    h = hashlib.sha256()
    if G is not None:
        h.update(encode_graph6(G).encode("ascii"))
    if extra:
        h.update(b"\n")
        h.update(json.dumps(extra, sort_keys=True).encode("utf-8"))
    return h.hexdigest()


def make_certificate(
    kind: str,
    G: Optional[Graph],
    outcome: str,
    witness: Any = None,
    verified: bool = False,
    seed: Optional[int] = None,
    inputs: Optional[dict] = None,
) -> Certificate:
    return Certificate(
        kind=kind,
        inputs_digest=inputs_digest(G, inputs),
        outcome=outcome,
        witness=witness,
        verified=verified,
        seed=seed,
    )


def to_json(certificate: Certificate) -> str:
    """Sorted keys, fixed separators: identical inputs give identical bytes."""
    return json.dumps(certificate.model_dump(by_alias=True), sort_keys=True, separators=(",", ":"))
