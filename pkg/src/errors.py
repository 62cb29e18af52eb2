"""
Error types and the inconclusive outcome.

Three families of failure are kept apart because the CLI maps them to
different exit codes:

- bad input (out-of-range vertex, malformed file, violated length clause)
  and unmet hypotheses -> exit 1
- exhaustive searches asked to run above their caps -> exit 2
- case analyses that break down because the host graph is outside the class
  -> an obstruction witness, never a silent wrong answer
"""

from dataclasses import dataclass, field
from typing import Any, Optional


class GraphInputError(ValueError):
    """Input does not describe a valid object (vertex range, set overlap, lengths)."""


class ParseError(GraphInputError):
    """Serialized input could not be decoded."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


class PreconditionError(ValueError):
    """A hypothesis of the requested operation does not hold for this input."""


class CapExceededError(RuntimeError):
    """An exhaustive search was asked to run above its configured cap."""

    def __init__(self, operation: str, size: int, cap: int):
        super().__init__(
            f"{operation} refuses n={size} above the cap of {cap}; pass force to override"
        )
        self.operation = operation
        self.size = size
        self.cap = cap


class ObstructionFound(Exception):
    """A case analysis failed; the host contains the attached theta or prism."""

    def __init__(self, message: str, witness: Any):
        super().__init__(message)
        self.witness = witness


class HypothesisViolation(RuntimeError):
    """A construction met a situation its hypotheses rule out, with details."""

    def __init__(self, message: str, detail: Optional[dict] = None):
        super().__init__(message)
        self.detail = detail or {}


class RejectionBudgetExhausted(RuntimeError):
    """Rejection sampling gave up; carries the last candidate's failure witness."""

    def __init__(self, message: str, witness: Any):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class Inconclusive:
    """A search that ran out of budget. Distinct from a definitive 'none'."""

    reason: str
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"status": "inconclusive", "reason": self.reason, "detail": self.detail}
