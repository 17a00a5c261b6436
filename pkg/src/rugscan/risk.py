"""Weighted risk scoring and tier assignment.

Default scoring is presence-based: each distinct pattern counts its weight
once, so duplicate findings never inflate a contract's score. The
per-occurrence mode exists for experimentation and is off by default.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional

from .detectors import WEIGHTS, Finding, PatternKind

MAX_SCORE = sum(WEIGHTS.values())  # 13 with the six patterns


class Tier(str, Enum):
    HIGH = "High"
    MEDIUM = "Medium"
    LOW = "Low"
    NONE = "None"


def tier_for(score: int) -> Tier:
    """High >= 5, Medium 3-4, Low 1-2, None 0."""
    if score < 0:
        raise ValueError("score must be non-negative")
    if score >= 5:
        return Tier.HIGH
    if score >= 3:
        return Tier.MEDIUM
    if score >= 1:
        return Tier.LOW
    return Tier.NONE


def score(
    findings: Iterable[Finding], per_occurrence: bool = False
) -> tuple[int, frozenset[PatternKind]]:
    """Cumulative weighted score and the distinct patterns present."""
    findings = list(findings)
    patterns = frozenset(f.pattern for f in findings)
    if per_occurrence:
        total = sum(WEIGHTS[f.pattern] for f in findings)
    else:
        total = sum(WEIGHTS[p] for p in patterns)
    return total, patterns


@dataclass
class RiskProfile:
    contract_id: str
    file_path: str
    contract_name: str
    findings: list[Finding]
    distinct_patterns: frozenset[PatternKind]
    score: int
    tier: Tier
    address: str = ""

    def to_record(self) -> dict:
        record = {
            "contract_id": self.contract_id,
            "file": self.file_path,
            "findings": [f.to_record() for f in self.findings],
            "score": self.score,
            "tier": self.tier.value,
        }
        if self.address:
            record["address"] = self.address
        return record


def profile(
    file_path: str,
    contract_name: str,
    findings: Iterable[Finding],
    address: str = "",
    per_occurrence: bool = False,
) -> RiskProfile:
    """Bundle one contract's findings into a scored, tiered profile.

    The caller attaches file-level findings (deprecated pragma) to every
    concrete contract of the file before calling; the pragma governs them all.
    """
    findings = list(findings)
    total, patterns = score(findings, per_occurrence=per_occurrence)
    return RiskProfile(
        contract_id=f"{file_path}::{contract_name}",
        file_path=file_path,
        contract_name=contract_name,
        findings=findings,
        distinct_patterns=patterns,
        score=total,
        tier=tier_for(total),
        address=address,
    )
