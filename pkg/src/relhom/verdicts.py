"""Three-valued verdicts for decision procedures.

Every decision in this package answers Yes, No, or Unknown, and a
verdict never claims more than its evidence: Yes and No carry a witness
or reason, Unknown explains what blocked the decision.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

YES = "Yes"
NO = "No"
UNKNOWN = "Unknown"


@dataclass(frozen=True)
class ConditionVerdict:
    status: str
    reason: str = ""
    witness: Any = None

    def __post_init__(self):
        if self.status not in (YES, NO, UNKNOWN):
            raise ValueError(f"bad verdict status {self.status!r}")

    @classmethod
    def yes(cls, reason: str = "", witness: Any = None) -> "ConditionVerdict":
        return cls(YES, reason, witness)

    @classmethod
    def no(cls, reason: str = "", witness: Any = None) -> "ConditionVerdict":
        return cls(NO, reason, witness)

    @classmethod
    def unknown(cls, reason: str) -> "ConditionVerdict":
        return cls(UNKNOWN, reason)

    @property
    def is_yes(self) -> bool:
        return self.status == YES

    @property
    def is_no(self) -> bool:
        return self.status == NO

    @property
    def is_unknown(self) -> bool:
        return self.status == UNKNOWN

    def __str__(self) -> str:
        return f"{self.status}: {self.reason}" if self.reason else self.status
