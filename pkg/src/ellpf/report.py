"""Machine-readable check reports.

A report is one JSON object per run: suite name, global seed, wall time,
and a case list sorted by check id.  Serialization is canonical (sorted
keys, fixed separators) so identical runs produce identical bytes apart
from the wall-time field.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

import numpy as np


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def params_digest(params: dict) -> str:
    return hashlib.sha256(canonical_json(params).encode()).hexdigest()[:12]


def case_rng(seed: int, check_id: str) -> np.random.Generator:
    # independent stream per case: scheduling order cannot leak into draws
    tag = int.from_bytes(hashlib.sha256(check_id.encode()).digest()[:8], "big")
    return np.random.default_rng(np.random.SeedSequence((seed, tag)))


@dataclass(frozen=True)
class CheckCase:
    check_id: str
    params_digest: str
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.residual < self.tolerance

    def as_json(self) -> dict:
        return {
            "check-id": self.check_id,
            "params-digest": self.params_digest,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }


@dataclass(frozen=True)
class CheckReport:
    suite: str
    cases: tuple
    seed: int
    wall_time_ms: int

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.cases)

    def as_json(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "wall_time_ms": self.wall_time_ms,
            "cases": [c.as_json() for c in self.cases],
        }

    def render(self) -> str:
        return canonical_json(self.as_json())
