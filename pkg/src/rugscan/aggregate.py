"""Corpus-level statistics: pattern prevalence, tier distribution,
co-occurrence, multi-pattern counts, top-N ranking.

aggregate() is order-independent and merge() is associative/commutative over
disjoint contract sets, so partial reports from parallel workers combine into
the same result as a single pass.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .detectors import HIGH_WEIGHT_PATTERNS, PatternKind
from .errors import DuplicateContract
from .risk import RiskProfile, Tier
from .sanitizer import EligibilityReport, GateKind

PATTERN_ORDER: tuple[PatternKind, ...] = tuple(PatternKind)
TIER_ORDER: tuple[Tier, ...] = (Tier.HIGH, Tier.MEDIUM, Tier.LOW, Tier.NONE)
MULTI_KEYS = ("2", "3", "4+")


@dataclass
class CorpusReport:
    total_files_seen: int = 0
    excluded_by_gate: dict[GateKind, int] = field(
        default_factory=lambda: {g: 0 for g in GateKind}
    )
    excluded_by_classification: int = 0
    analyzed_contracts: int = 0
    pattern_counts: dict[PatternKind, int] = field(
        default_factory=lambda: {p: 0 for p in PATTERN_ORDER}
    )
    sub_kind_counts: dict[PatternKind, dict[str, int]] = field(default_factory=dict)
    tier_counts: dict[Tier, int] = field(default_factory=lambda: {t: 0 for t in TIER_ORDER})
    cooccurrence: list[list[int]] = field(
        default_factory=lambda: [[0] * len(PATTERN_ORDER) for _ in PATTERN_ORDER]
    )
    multi_pattern_counts: dict[str, int] = field(
        default_factory=lambda: {k: 0 for k in MULTI_KEYS}
    )
    top_n: list[tuple[str, int, tuple[str, ...]]] = field(default_factory=list)
    top_n_limit: int = 10
    score_histogram: dict[int, int] = field(default_factory=dict)
    contract_ids: set[str] = field(default_factory=set, repr=False)

    def tier_percentages(self) -> dict[Tier, float]:
        if self.analyzed_contracts == 0:
            return {t: 0.0 for t in TIER_ORDER}
        return {
            t: 100.0 * self.tier_counts[t] / self.analyzed_contracts for t in TIER_ORDER
        }

    def to_record(self) -> dict:
        return {
            "total_files_seen": self.total_files_seen,
            "excluded_by_gate": {g.value: c for g, c in self.excluded_by_gate.items()},
            "excluded_by_classification": self.excluded_by_classification,
            "analyzed_contracts": self.analyzed_contracts,
            "pattern_counts": {p.value: c for p, c in self.pattern_counts.items()},
            "sub_kind_counts": {
                p.value: dict(sorted(kinds.items())) for p, kinds in sorted(
                    self.sub_kind_counts.items(), key=lambda kv: kv[0].value
                )
            },
            "tier_counts": {t.value: c for t, c in self.tier_counts.items()},
            "tier_percentages": {
                t.value: round(pct, 4) for t, pct in self.tier_percentages().items()
            },
            "cooccurrence": {
                "patterns": [p.value for p in PATTERN_ORDER],
                "matrix": self.cooccurrence,
            },
            "multi_pattern_counts": dict(self.multi_pattern_counts),
            "top_contracts": [
                {"contract_id": cid, "score": s, "patterns": list(pats)}
                for cid, s, pats in self.top_n
            ],
            "score_histogram": {
                str(k): self.score_histogram.get(k, 0)
                for k in range(max([13, *self.score_histogram]) + 1)
            },
        }


def _top_key(entry: tuple[str, int, tuple[str, ...]]):
    return (-entry[1], entry[0])


def aggregate(
    profiles: Iterable[RiskProfile],
    eligibility: Iterable[EligibilityReport] = (),
    n: int = 10,
    high_severity_only: bool = False,
) -> CorpusReport:
    """Fold per-contract profiles and per-file gate verdicts into one report.

    high_severity_only restricts the multi-pattern co-presence counters to
    weight-3 patterns; the co-occurrence matrix always covers all six.
    """
    report = CorpusReport(top_n_limit=n)
    multi_universe = HIGH_WEIGHT_PATTERNS if high_severity_only else frozenset(PATTERN_ORDER)

    for elig in eligibility:
        report.total_files_seen += 1
        for gate in elig.failed_gates():
            report.excluded_by_gate[gate] += 1

    entries = []
    for prof in profiles:
        if prof.contract_id in report.contract_ids:
            raise DuplicateContract(prof.contract_id)
        report.contract_ids.add(prof.contract_id)
        report.analyzed_contracts += 1
        report.tier_counts[prof.tier] += 1
        report.score_histogram[prof.score] = report.score_histogram.get(prof.score, 0) + 1

        present = prof.distinct_patterns
        for p in present:
            report.pattern_counts[p] += 1
        seen_sub: set[tuple[PatternKind, str]] = set()
        for f in prof.findings:
            key = (f.pattern, f.sub_kind or "plain")
            if key in seen_sub:
                continue
            seen_sub.add(key)
            report.sub_kind_counts.setdefault(f.pattern, {})
            report.sub_kind_counts[f.pattern][key[1]] = (
                report.sub_kind_counts[f.pattern].get(key[1], 0) + 1
            )

        idxs = sorted(PATTERN_ORDER.index(p) for p in present)
        for i in idxs:
            for j in idxs:
                report.cooccurrence[i][j] += 1

        distinct = len(present & multi_universe)
        if distinct >= 2:
            report.multi_pattern_counts["2"] += 1
        if distinct >= 3:
            report.multi_pattern_counts["3"] += 1
        if distinct >= 4:
            report.multi_pattern_counts["4+"] += 1

        entries.append(
            (prof.contract_id, prof.score, tuple(sorted(p.value for p in present)))
        )

    entries.sort(key=_top_key)
    report.top_n = entries[:n]
    return report


def merge(a: CorpusReport, b: CorpusReport) -> CorpusReport:
    """Combine two reports over disjoint contract sets."""
    overlap = a.contract_ids & b.contract_ids
    if overlap:
        raise DuplicateContract(sorted(overlap)[0])
    if a.top_n_limit != b.top_n_limit:
        raise ValueError("cannot merge reports with different top-N limits")

    out = CorpusReport(top_n_limit=a.top_n_limit)
    out.total_files_seen = a.total_files_seen + b.total_files_seen
    out.excluded_by_gate = {
        g: a.excluded_by_gate[g] + b.excluded_by_gate[g] for g in GateKind
    }
    out.excluded_by_classification = a.excluded_by_classification + b.excluded_by_classification
    out.analyzed_contracts = a.analyzed_contracts + b.analyzed_contracts
    out.pattern_counts = {
        p: a.pattern_counts[p] + b.pattern_counts[p] for p in PATTERN_ORDER
    }
    for src in (a.sub_kind_counts, b.sub_kind_counts):
        for p, kinds in src.items():
            out.sub_kind_counts.setdefault(p, {})
            for k, v in kinds.items():
                out.sub_kind_counts[p][k] = out.sub_kind_counts[p].get(k, 0) + v
    out.tier_counts = {t: a.tier_counts[t] + b.tier_counts[t] for t in TIER_ORDER}
    out.cooccurrence = [
        [a.cooccurrence[i][j] + b.cooccurrence[i][j] for j in range(len(PATTERN_ORDER))]
        for i in range(len(PATTERN_ORDER))
    ]
    out.multi_pattern_counts = {
        k: a.multi_pattern_counts[k] + b.multi_pattern_counts[k] for k in MULTI_KEYS
    }
    for hist in (a.score_histogram, b.score_histogram):
        for k, v in hist.items():
            out.score_histogram[k] = out.score_histogram.get(k, 0) + v
    out.top_n = sorted(a.top_n + b.top_n, key=_top_key)[: out.top_n_limit]
    out.contract_ids = a.contract_ids | b.contract_ids
    return out
