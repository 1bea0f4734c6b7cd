"""Three-valued checker verdicts with optional witnesses and diagnostics."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

HOLDS = "HOLDS"
FAILS = "FAILS"
INDETERMINATE = "INDETERMINATE"


@dataclass(frozen=True)
class TernaryVerdict:
    """Outcome of an executable inequality or identity check.

    INDETERMINATE is only produced by checkers documented as using
    controlled-precision interval evaluation; it carries a precision report
    so the caller can escalate.
    """

    status: str
    equality: bool | None = None
    witness: Any = None
    precision_bits: int | None = None
    info: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.status == HOLDS

    @property
    def fails(self) -> bool:
        return self.status == FAILS

    @property
    def indeterminate(self) -> bool:
        return self.status == INDETERMINATE

    def to_record(self) -> dict:
        rec: dict[str, Any] = {"verdict": self.status}
        if self.equality is not None:
            rec["equality"] = self.equality
        if self.witness is not None:
            rec["witness"] = self.witness
        if self.precision_bits is not None:
            rec["precision_bits"] = self.precision_bits
        if self.info:
            rec["info"] = self.info
        return rec


def holds(equality: bool | None = None, **info) -> TernaryVerdict:
    return TernaryVerdict(HOLDS, equality=equality, info=info)


def fails(witness: Any, equality: bool | None = None, **info) -> TernaryVerdict:
    return TernaryVerdict(FAILS, equality=equality, witness=witness, info=info)


def indeterminate(precision_bits: int, **info) -> TernaryVerdict:
    return TernaryVerdict(INDETERMINATE, precision_bits=precision_bits, info=info)
