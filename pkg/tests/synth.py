"""Synthetic findings/profiles and an independent brute-force recount used to
cross-check the aggregator. The recount iterates contracts and counts pattern
sets directly; it never calls aggregate() or merge()."""

from __future__ import annotations

import random

from rugscan.detectors import WEIGHTS, Finding, PatternKind
from rugscan.risk import RiskProfile, profile

PATTERNS = list(PatternKind)


def make_finding(pattern: PatternKind, line: int = 1, sub_kind: str = "") -> Finding:
    return Finding(
        pattern=pattern,
        contract_name="C",
        function_name="f",
        description=f"synthetic {pattern.value}",
        span=(line, line),
        evidence="synthetic",
        sub_kind=sub_kind,
    )


def random_findings(rng: random.Random, max_findings: int = 12) -> list[Finding]:
    count = rng.randint(0, max_findings)
    return [
        make_finding(rng.choice(PATTERNS), line=rng.randint(1, 500))
        for _ in range(count)
    ]


def random_profile(rng: random.Random, ident: int) -> RiskProfile:
    return profile(
        file_path=f"synthetic/{ident:04d}.sol",
        contract_name=f"C{ident}",
        findings=random_findings(rng),
    )


def random_corpus(rng: random.Random, max_contracts: int = 50) -> list[RiskProfile]:
    return [random_profile(rng, i) for i in range(rng.randint(0, max_contracts))]


def brute_force_recount(profiles: list[RiskProfile]) -> dict:
    """Direct per-contract recount of every aggregate statistic."""
    pattern_counts = {p: 0 for p in PATTERNS}
    tier_counts: dict[str, int] = {}
    matrix = [[0] * len(PATTERNS) for _ in PATTERNS]
    multi = {"2": 0, "3": 0, "4+": 0}
    histogram: dict[int, int] = {}

    for prof in profiles:
        present = {f.pattern for f in prof.findings}
        weight_sum = sum(WEIGHTS[p] for p in present)
        assert weight_sum == prof.score  # presence-based scoring cross-check
        tier_counts[prof.tier.value] = tier_counts.get(prof.tier.value, 0) + 1
        histogram[prof.score] = histogram.get(prof.score, 0) + 1
        for p in present:
            pattern_counts[p] += 1
        for i, pi in enumerate(PATTERNS):
            for j, pj in enumerate(PATTERNS):
                if pi in present and pj in present:
                    matrix[i][j] += 1
        k = len(present)
        if k >= 2:
            multi["2"] += 1
        if k >= 3:
            multi["3"] += 1
        if k >= 4:
            multi["4+"] += 1

    return {
        "pattern_counts": pattern_counts,
        "tier_counts": tier_counts,
        "cooccurrence": matrix,
        "multi_pattern_counts": multi,
        "score_histogram": histogram,
    }
