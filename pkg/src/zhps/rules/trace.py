"""Rewrite logs."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Tuple

from ..numeric import ScalarFactor


@dataclass
class RewriteStep:
    rule: str
    removed: Tuple[int, ...]
    scalar_delta: ScalarFactor
    before: int
    after: int
    location: Tuple[int, ...] = ()

    def to_json(self) -> dict:
        out = {
            "rule": self.rule,
            "vars_removed": list(self.removed),
            "scalar_delta": {k: v for k, v in self.scalar_delta.to_json().items() if k != "extras"},
            "before": self.before,
            "after": self.after,
        }
        if self.location:
            out["location"] = list(self.location)
        return out


@dataclass
class RewriteTrace:
    steps: List[RewriteStep] = field(default_factory=list)

    def record(self, step: RewriteStep) -> None:
        self.steps.append(step)

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def rules(self) -> List[str]:
        return [s.rule for s in self.steps]

    def to_json(self) -> list:
        return [s.to_json() for s in self.steps]
