"""Uniform engine results."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional


class Verdict(enum.Enum):
    PROVED = "Proved"
    REFUTED = "Refuted"
    TIMEOUT = "Timeout"
    GAVE_UP = "GaveUp"


class SearchTimeout(Exception):
    """Raised inside a search when its deadline passes."""


@dataclass
class ProverResult:
    verdict: Verdict
    proof: Optional[object] = None
    rounds: int = 0           # iterative-deepening rounds used
    rule_apps: int = 0        # rule applications in the returned proof

    @property
    def proved(self) -> bool:
        return self.verdict is Verdict.PROVED
