import random

import pytest

from rugscan.aggregate import MULTI_KEYS, PATTERN_ORDER, CorpusReport, aggregate, merge
from rugscan.detectors import PatternKind
from rugscan.errors import DuplicateContract
from rugscan.risk import Tier, profile

from .synth import brute_force_recount, make_finding, random_corpus

P = PatternKind


def test_two_contract_example():
    a = profile("a.sol", "A", [make_finding(P.SELF_DESTRUCT), make_finding(P.DELEGATE_CALL)])
    b = profile("b.sol", "B", [make_finding(P.SELF_DESTRUCT)])
    report = aggregate([a, b])
    i = PATTERN_ORDER.index(P.SELF_DESTRUCT)
    j = PATTERN_ORDER.index(P.DELEGATE_CALL)
    assert report.cooccurrence[i][j] == 1 == report.cooccurrence[j][i]
    assert report.pattern_counts[P.SELF_DESTRUCT] == 2
    assert report.multi_pattern_counts["2"] == 1
    # brute-force recount over the two finding sets
    oracle = brute_force_recount([a, b])
    assert report.cooccurrence == oracle["cooccurrence"]


def test_empty_corpus():
    report = aggregate([])
    assert report.analyzed_contracts == 0
    assert report.top_n == []
    assert all(v == 0 for v in report.pattern_counts.values())
    assert report.tier_percentages() == {t: 0.0 for t in (Tier.HIGH, Tier.MEDIUM, Tier.LOW, Tier.NONE)}


def test_every_contract_multi_pattern():
    profiles = [
        profile(f"{i}.sol", "C", [make_finding(P.SELF_DESTRUCT), make_finding(P.DELEGATE_CALL)])
        for i in range(9)
    ]
    report = aggregate(profiles)
    assert report.multi_pattern_counts["2"] == report.analyzed_contracts == 9


def test_high_severity_only_restriction():
    profiles = [
        profile("a.sol", "A", [make_finding(P.TX_ORIGIN_AUTH), make_finding(P.DEPRECATED_PRAGMA)]),
        profile("b.sol", "B", [make_finding(P.SELF_DESTRUCT), make_finding(P.DELEGATE_CALL)]),
    ]
    assert aggregate(profiles).multi_pattern_counts["2"] == 2
    assert aggregate(profiles, high_severity_only=True).multi_pattern_counts["2"] == 1


def test_duplicate_contract_rejected():
    a = profile("a.sol", "A", [])
    with pytest.raises(DuplicateContract):
        aggregate([a, a])


@pytest.mark.parametrize("seed", range(25))
def test_aggregate_matches_brute_force(seed):
    rng = random.Random(seed)
    profiles = random_corpus(rng)
    report = aggregate(profiles)
    oracle = brute_force_recount(profiles)
    assert report.pattern_counts == oracle["pattern_counts"]
    assert {t.value: c for t, c in report.tier_counts.items() if c} == oracle["tier_counts"]
    assert report.cooccurrence == oracle["cooccurrence"]
    assert report.multi_pattern_counts == oracle["multi_pattern_counts"]
    assert report.score_histogram == oracle["score_histogram"]


@pytest.mark.parametrize("seed", range(10))
def test_merge_of_random_partitions(seed):
    rng = random.Random(1000 + seed)
    profiles = random_corpus(rng)
    whole = aggregate(profiles)
    cut_a = rng.randint(0, len(profiles)) if profiles else 0
    cut_b = rng.randint(cut_a, len(profiles)) if profiles else 0
    parts = [profiles[:cut_a], profiles[cut_a:cut_b], profiles[cut_b:]]
    merged = aggregate([])
    for part in parts:
        merged = merge(merged, aggregate(part))
    assert merged.pattern_counts == whole.pattern_counts
    assert merged.tier_counts == whole.tier_counts
    assert merged.cooccurrence == whole.cooccurrence
    assert merged.multi_pattern_counts == whole.multi_pattern_counts
    assert merged.top_n == whole.top_n
    assert merged.score_histogram == whole.score_histogram


def test_merge_identity_and_commutativity():
    rng = random.Random(42)
    report = aggregate(random_corpus(rng, max_contracts=12))
    empty = aggregate([])
    assert merge(report, empty).to_record() == report.to_record()
    other = aggregate([profile("zz.sol", "Z", [make_finding(P.SELF_DESTRUCT)])])
    ab = merge(report, other).to_record()
    ba = merge(other, report).to_record()
    assert ab == ba


def test_merge_rejects_overlap():
    a = aggregate([profile("x.sol", "X", [])])
    with pytest.raises(DuplicateContract):
        merge(a, a)


def test_aggregation_order_independent():
    rng = random.Random(9)
    profiles = random_corpus(rng, max_contracts=30)
    shuffled = profiles[:]
    rng.shuffle(shuffled)
    assert aggregate(profiles).to_record() == aggregate(shuffled).to_record()


def test_report_invariants():
    rng = random.Random(5)
    for _ in range(10):
        profiles = random_corpus(rng)
        report = aggregate(profiles)
        assert sum(report.tier_counts.values()) == report.analyzed_contracts
        size = len(PATTERN_ORDER)
        for i in range(size):
            assert report.cooccurrence[i][i] == report.pattern_counts[PATTERN_ORDER[i]]
            for j in range(size):
                assert report.cooccurrence[i][j] == report.cooccurrence[j][i]
                assert report.cooccurrence[i][j] <= min(
                    report.pattern_counts[PATTERN_ORDER[i]],
                    report.pattern_counts[PATTERN_ORDER[j]],
                )
        counts = [report.multi_pattern_counts[k] for k in MULTI_KEYS]
        assert counts == sorted(counts, reverse=True)
        if report.analyzed_contracts:
            assert abs(sum(report.tier_percentages().values()) - 100.0) <= 0.1
        tops = report.top_n
        assert all(
            (tops[i][1], tops[i + 1][0]) >= (tops[i + 1][1], tops[i][0])
            for i in range(len(tops) - 1)
        )


def test_top_n_ordering_and_truncation():
    profiles = [
        profile("c.sol", "C", [make_finding(P.SELF_DESTRUCT)]),
        profile("a.sol", "A", [make_finding(P.DELEGATE_CALL)]),
        profile("b.sol", "B", [make_finding(P.SELF_DESTRUCT), make_finding(P.DELEGATE_CALL)]),
    ]
    report = aggregate(profiles, n=2)
    ids = [cid for cid, _, _ in report.top_n]
    assert ids == ["b.sol::B", "a.sol::A"]  # score desc, ties by id asc


def test_eligibility_exclusion_counts():
    from rugscan.frontend import parse
    from rugscan.sanitizer import SanitizerConfig, sanitize

    good = sanitize(parse("pragma solidity ^0.8.0;\ncontract A {}", "g.sol"), SanitizerConfig())
    bad = sanitize(parse('import "./x.sol";\npragma solidity 0.9.9;\ncontract B {}', "b.sol"), SanitizerConfig())
    report = aggregate([], [good, bad])
    assert report.total_files_seen == 2
    from rugscan.sanitizer import GateKind

    assert report.excluded_by_gate[GateKind.IMPORT_RESOLUTION] == 1
    assert report.excluded_by_gate[GateKind.PRAGMA_COMPATIBILITY] == 1
    assert report.excluded_by_gate[GateKind.SYNTAX_CHECK] == 0
