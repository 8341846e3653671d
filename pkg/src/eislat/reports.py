"""Claim reports with re-checkable witnesses."""
from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any

VERIFIED = "verified"
REFUTED = "refuted"
INCONCLUSIVE = "inconclusive"
STATUSES = (VERIFIED, REFUTED, INCONCLUSIVE)


@dataclass
class WitnessReport:
    claim_id: str
    status: str
    witnesses: Any = field(default_factory=dict)
    search_bound: Any = field(default_factory=dict)
    elapsed_ms: int = 0

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == INCONCLUSIVE and not self.search_bound:
            raise ValueError("an inconclusive report must record its search bound")
        if self.status == VERIFIED and not self.witnesses:
            raise ValueError("a verified report must carry a witness payload")

    def to_json(self) -> dict:
        return {
            "claim_id": self.claim_id,
            "status": self.status,
            "witnesses": self.witnesses,
            "search_bound": self.search_bound,
            "elapsed_ms": self.elapsed_ms,
        }


@contextmanager
def stopwatch():
    box = {"ms": 0}
    t0 = time.perf_counter()
    try:
        yield box
    finally:
        box["ms"] = int(round((time.perf_counter() - t0) * 1000))


def worst_status(reports) -> str | None:
    statuses = {r.status for r in reports}
    for s in (REFUTED, INCONCLUSIVE, VERIFIED):
        if s in statuses:
            return s
    return None
