"""Per-file analysis pipeline and corpus orchestration.

Order per file: sanitize -> classify -> detect -> score. Findings made in an
in-file base contract belong to every concrete contract that inherits it (the
deployed unit includes the inherited code), and file-level findings attach to
every concrete contract in the file.
"""

from __future__ import annotations

import posixpath
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .aggregate import CorpusReport, aggregate
from .classifier import NftClassification, classify
from .config import RunConfig
from .detectors import Finding, run_all
from .errors import FrontendError
from .frontend import parse
from .risk import RiskProfile, profile
from .frontend.nodes import SourceUnit, inheritance_closure
from .sanitizer import (
    FAIL,
    SKIPPED,
    EligibilityReport,
    GateKind,
    GateResult,
    sanitize,
)


@dataclass
class FileOutcome:
    file_path: str
    eligibility: EligibilityReport
    classification: Optional[NftClassification] = None
    profiles: list[RiskProfile] = field(default_factory=list)
    opaque_statements: int = 0
    read_error: str = ""

    @property
    def parsed(self) -> bool:
        return self.classification is not None

    @property
    def analyzed(self) -> bool:
        return (
            self.eligibility.passed
            and self.classification is not None
            and self.classification.is_nft_relevant
        )


def _unreadable_report(file_path: str, reason: str) -> EligibilityReport:
    results = {GateKind.SYNTAX_CHECK: GateResult(FAIL, reason)}
    for gate in GateKind:
        results.setdefault(gate, GateResult(SKIPPED, "file not readable"))
    return EligibilityReport(file_path=file_path, passed=False, gate_results=results)


def build_profiles(unit: SourceUnit, findings: list[Finding], per_occurrence: bool) -> list[RiskProfile]:
    """One profile per concrete contract, with inherited and file-level
    findings folded in."""
    by_contract: dict[str, list[Finding]] = {}
    file_level: list[Finding] = []
    for finding in findings:
        if finding.contract_name:
            by_contract.setdefault(finding.contract_name, []).append(finding)
        else:
            file_level.append(finding)

    profiles = []
    for contract in unit.contracts:
        if not contract.is_concrete:
            continue
        effective: list[Finding] = []
        for ancestor in inheritance_closure(unit, contract):
            effective.extend(by_contract.get(ancestor.name, []))
        effective.extend(file_level)
        profiles.append(
            profile(unit.file_path, contract.name, effective, per_occurrence=per_occurrence)
        )
    profiles.sort(key=lambda p: p.contract_id)
    return profiles


def analyze_file(
    path: str,
    config: RunConfig,
    corpus_files: Optional[frozenset[str]] = None,
    display_path: Optional[str] = None,
) -> FileOutcome:
    """Analyze one file end to end; failures become data, never exceptions."""
    shown = display_path if display_path is not None else path
    try:
        source = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        return FileOutcome(
            file_path=shown,
            eligibility=_unreadable_report(shown, f"unreadable: {exc}"),
            read_error=str(exc),
        )

    try:
        unit = parse(source, shown)
    except FrontendError as exc:
        return FileOutcome(
            file_path=shown,
            eligibility=sanitize(exc, config.sanitizer, corpus_files, file_path=shown),
        )

    eligibility = sanitize(unit, config.sanitizer, corpus_files, file_path=shown)
    classification = classify(unit, config.catalogs, strict=config.strict_nft)
    findings = run_all(unit, config.detector)
    profiles = build_profiles(unit, findings, config.per_occurrence)
    return FileOutcome(
        file_path=shown,
        eligibility=eligibility,
        classification=classification,
        profiles=profiles,
        opaque_statements=unit.opaque_statement_count,
    )


def discover_sources(root: Path) -> list[Path]:
    return sorted(p for p in root.rglob("*.sol") if p.is_file())


def _worker(args: tuple[str, str, RunConfig, frozenset[str]]) -> FileOutcome:
    path, display, config, corpus_files = args
    return analyze_file(path, config, corpus_files=corpus_files, display_path=display)


def run_corpus(root: Path, config: RunConfig) -> tuple[CorpusReport, list[FileOutcome]]:
    """Analyze every .sol under root; outcome order is canonical (sorted by
    display path) regardless of worker count."""
    files = discover_sources(root)
    display = [p.relative_to(root).as_posix() for p in files]
    corpus_files = frozenset(posixpath.normpath(d) for d in display)
    tasks = [(str(p), d, config, corpus_files) for p, d in zip(files, display)]

    if config.workers == 1 or len(tasks) <= 1:
        outcomes = [_worker(task) for task in tasks]
    else:
        chunk = max(1, len(tasks) // (config.workers * 4))
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            outcomes = list(pool.map(_worker, tasks, chunksize=chunk))

    outcomes.sort(key=lambda o: o.file_path)
    profiles = [p for o in outcomes if o.analyzed for p in o.profiles]
    report = aggregate(
        profiles,
        (o.eligibility for o in outcomes),
        n=config.top_n,
        high_severity_only=config.high_severity_only,
    )
    report.excluded_by_classification = sum(
        1 for o in outcomes if o.eligibility.passed and not o.analyzed
    )
    return report, outcomes
