"""Signed-margin samples and their aggregation into check reports."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum


class Claim(str, Enum):
    """How a sampled margin is judged against its numerical slack."""

    POSITIVE = ">0"  # margin > slack
    NONNEGATIVE = ">=0"  # margin >= -slack
    ZERO = "=0"  # |margin| <= slack


@dataclass(frozen=True)
class Sample:
    margin: float
    slack: float
    claim: Claim
    witness: dict = field(default_factory=dict)

    @property
    def score(self) -> float:
        """Distance into the admissible region; negative means a violation."""
        if self.claim is Claim.POSITIVE:
            return self.margin - self.slack
        if self.claim is Claim.NONNEGATIVE:
            return self.margin + self.slack
        return self.slack - abs(self.margin)

    @property
    def ok(self) -> bool:
        if not math.isfinite(self.margin):
            return False
        if self.claim is Claim.POSITIVE:
            return self.score > 0
        return self.score >= 0


def membership_sample(report, what: str, witness: dict) -> Sample:
    """Turn a membership report into a sample with margin +1 or -1."""
    detail = dict(witness, check=what)
    if not report:
        detail["violation"] = str(report)
    return Sample(1.0 if report else -1.0, 0.0, Claim.NONNEGATIVE, detail)


def _clean(value):
    if isinstance(value, float):
        return float(f"{value:.12g}")
    if isinstance(value, dict):
        return {k: _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    if isinstance(value, Enum):
        return value.value
    return value


@dataclass(frozen=True)
class LemmaCheckReport:
    """Outcome of a sampled check.

    ``min_margin`` and ``slack`` belong to the most adverse sample, the one
    closest to (or furthest past) violating its claim; ``witness`` holds
    its parameters for replay.
    """

    lemma_id: str
    samples: int
    min_margin: float
    witness: dict
    passed: bool
    seed: int
    slack: float = 0.0
    claim: str = ""
    failures: int = 0

    @classmethod
    def from_samples(cls, lemma_id: str, samples: list[Sample], seed: int) -> "LemmaCheckReport":
        if not samples:
            return cls(lemma_id, 0, math.nan, {}, False, seed)
        worst = min(samples, key=lambda s: (s.ok, s.score))
        failures = sum(1 for s in samples if not s.ok)
        return cls(
            lemma_id,
            len(samples),
            worst.margin,
            worst.witness,
            failures == 0,
            seed,
            worst.slack,
            worst.claim.value,
            failures,
        )

    def to_json(self) -> dict:
        return _clean(
            {
                "lemma_id": self.lemma_id,
                "samples": self.samples,
                "min_margin": self.min_margin,
                "witness": self.witness,
                "passed": self.passed,
                "seed": self.seed,
                "slack": self.slack,
                "claim": self.claim,
                "failures": self.failures,
            }
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def __str__(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"{status} {self.lemma_id}: samples={self.samples} min_margin={self.min_margin:.12g} "
            f"slack={self.slack:.3g} claim={self.claim} failures={self.failures}"
        )


__all__ = ["Claim", "Sample", "LemmaCheckReport", "membership_sample"]
