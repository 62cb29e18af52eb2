"""
Results exporter: write certificates and harness summaries to --out.

Supports two formats:
- JSON: the certificate exactly as printed on stdout
- Markdown: a short report with the outcome and a table per harness check
"""

import json
from pathlib import Path
from typing import List, Optional

from .certificates import Certificate, to_json


def export_certificate(certificate: Certificate, filepath: str, fmt: Optional[str] = None):
    """
    Write a certificate to a file.

    Args:
        certificate: The certificate printed by the command
        filepath: Output path; '-' is handled by the caller
        fmt: 'json' or 'md'. Auto-detected from extension if None.
    """
    path = Path(filepath)

    if fmt is None:
        ext = path.suffix.lower()
        if ext in (".md", ".markdown"):
            fmt = "md"
        else:
            fmt = "json"

    path.parent.mkdir(parents=True, exist_ok=True)

    if fmt == "json":
        path.write_text(to_json(certificate) + "\n", encoding="utf-8")
    else:
        path.write_text(_to_markdown(certificate), encoding="utf-8")


def _to_markdown(certificate: Certificate) -> str:
    lines: List[str] = []

    lines.append(f"# {certificate.kind}")
    lines.append("")
    lines.append(f"**Outcome:** {certificate.outcome} | "
                 f"**Verified:** {'yes' if certificate.verified else 'no'} | "
                 f"**Version:** {certificate.tool_version}")
    lines.append("")
    lines.append(f"**Inputs digest:** `{certificate.inputs_digest}`")
    if certificate.seed is not None:
        lines.append(f"**Seed:** {certificate.seed}")
    lines.append("")

    checks = certificate.witness.get("checks") if isinstance(certificate.witness, dict) else None
    if checks:
        lines.append("| Check | Samples | Passed | Rejected | Failed |")
        lines.append("|-------|---------|--------|----------|--------|")
        for check in checks:
            lines.append(
                f"| {check['check']} | {check['samples']} | {check['passed']} | "
                f"{check['rejected']} | {check['failed']} |"
            )
        lines.append("")
        for check in checks:
            failure = check.get("first_failure")
            if failure:
                lines.append(f"## {check['check']}: first failure (sample {failure['sample']})")
                lines.append("")
                lines.append(f"{failure['message']}")
                lines.append("")
                lines.append(f"graph6: `{failure['graph6']}`")
                lines.append("")
    else:
        lines.append("```json")
        lines.append(json.dumps(certificate.witness, indent=2, sort_keys=True))
        lines.append("```")
        lines.append("")

    return "\n".join(lines)
