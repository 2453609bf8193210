"""Shared result record for numeric inequality checks.

Every check names the quantity it instantiates through a machine-readable
``claim`` slug so that JSON reports can be audited without re-reading code.
"""

from __future__ import annotations

from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
INAPPLICABLE = "inapplicable"


@dataclass(frozen=True)
class BoundCheck:
    claim: str
    status: str
    observed: float | None = None
    bound: float | None = None
    detail: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict:
        return {
            "claim": self.claim,
            "status": self.status,
            "observed": self.observed,
            "bound": self.bound,
            "detail": self.detail,
        }
