"""Eligibility gates: only standalone, parseable, version-compatible,
non-abstract-only files proceed to analysis.

Each gate returns pass/fail with a reason; gates that never ran (because the
file did not parse) are reported as "skipped" so failure and not-evaluated
stay distinguishable downstream.
"""

from __future__ import annotations

import posixpath
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Union

from .errors import FrontendError
from .frontend.nodes import SourceUnit
from .frontend.versions import Version

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"


class GateKind(str, Enum):
    IMPORT_RESOLUTION = "import_resolution"
    PRAGMA_COMPATIBILITY = "pragma_compatibility"
    STANDALONE_VIABILITY = "standalone_viability"
    SYNTAX_CHECK = "syntax_check"
    ABSTRACT_ONLY_EXCLUSION = "abstract_only_exclusion"


@dataclass(frozen=True)
class GateResult:
    status: str  # pass | fail | skipped
    reason: str = ""

    @property
    def passed(self) -> bool:
        return self.status == PASS


@dataclass
class EligibilityReport:
    file_path: str
    passed: bool
    gate_results: dict[GateKind, GateResult]

    def failed_gates(self) -> list[GateKind]:
        return [g for g, r in self.gate_results.items() if r.status == FAIL]

    def to_record(self) -> dict:
        return {
            "passed": self.passed,
            "gates": {g.value: {"status": r.status, "reason": r.reason} for g, r in self.gate_results.items()},
        }


@dataclass(frozen=True)
class SanitizerConfig:
    supported_version_floor: Version = Version(0, 4, 0)
    supported_version_ceiling: Version = Version(0, 8, 19)
    reject_exact_pins_outside_range: bool = True
    allow_relative_imports_resolvable_in_corpus: bool = False

    def __post_init__(self):
        if self.supported_version_ceiling < self.supported_version_floor:
            raise ValueError("version floor exceeds ceiling")


def check_imports(
    unit: SourceUnit,
    config: SanitizerConfig,
    corpus_files: Optional[frozenset[str]] = None,
) -> GateResult:
    """Standalone pipeline: any import fails; permissive mode resolves
    relative imports against the scanned corpus file set."""
    if not unit.imports:
        return GateResult(PASS)
    if not config.allow_relative_imports_resolvable_in_corpus:
        paths = ", ".join(imp.path for imp in unit.imports)
        return GateResult(FAIL, f"unresolved import(s): {paths}")
    corpus = corpus_files or frozenset()
    base_dir = posixpath.dirname(unit.file_path)
    for imp in unit.imports:
        if not imp.is_relative:
            return GateResult(FAIL, f"unresolved import(s): {imp.path}")
        resolved = posixpath.normpath(posixpath.join(base_dir, imp.path))
        if resolved not in corpus:
            return GateResult(FAIL, f"unresolved import(s): {imp.path}")
    return GateResult(PASS)


def check_pragma(unit: SourceUnit, config: SanitizerConfig) -> GateResult:
    floor, ceiling = config.supported_version_floor, config.supported_version_ceiling
    for pragma in unit.pragmas:
        if pragma.kind != "solidity":
            continue
        if pragma.version_range is None:
            return GateResult(FAIL, f"unparseable version constraint: {pragma.constraint_text!r}")
        if not pragma.version_range.intersects(floor, ceiling):
            return GateResult(
                FAIL,
                f"pragma {pragma.constraint_text!r} outside supported window {floor}..{ceiling}",
            )
        if config.reject_exact_pins_outside_range and pragma.is_exact_pin:
            pinned = pragma.version_range.intervals[0][0]
            if pinned < floor or ceiling < pinned:
                return GateResult(FAIL, f"exact pin {pinned} outside {floor}..{ceiling}")
    return GateResult(PASS)


def check_standalone(unit: SourceUnit) -> GateResult:
    defined = unit.contract_names()
    for contract in unit.contracts:
        for base in contract.bases:
            if base not in defined:
                return GateResult(FAIL, f"unresolved base {base} (inherited by {contract.name})")
    return GateResult(PASS)


def check_abstract_only(unit: SourceUnit) -> GateResult:
    """Libraries count as concrete deployable units."""
    if any(c.is_concrete for c in unit.contracts):
        return GateResult(PASS)
    kinds = ", ".join(sorted({c.kind for c in unit.contracts}))
    return GateResult(FAIL, f"file defines only {kinds}")


def sanitize(
    outcome: Union[SourceUnit, FrontendError],
    config: SanitizerConfig = SanitizerConfig(),
    corpus_files: Optional[frozenset[str]] = None,
    file_path: str = "",
) -> EligibilityReport:
    """Run all gates over a parse outcome; errors are data, never raised."""
    results: dict[GateKind, GateResult] = {}

    if isinstance(outcome, FrontendError):
        results[GateKind.SYNTAX_CHECK] = GateResult(FAIL, str(outcome))
        for gate in (
            GateKind.IMPORT_RESOLUTION,
            GateKind.PRAGMA_COMPATIBILITY,
            GateKind.STANDALONE_VIABILITY,
            GateKind.ABSTRACT_ONLY_EXCLUSION,
        ):
            results[gate] = GateResult(SKIPPED, "file did not parse")
        return EligibilityReport(file_path=file_path, passed=False, gate_results=results)

    unit = outcome
    if unit.contracts:
        results[GateKind.SYNTAX_CHECK] = GateResult(PASS)
        results[GateKind.ABSTRACT_ONLY_EXCLUSION] = check_abstract_only(unit)
    else:
        results[GateKind.SYNTAX_CHECK] = GateResult(FAIL, "no contracts")
        results[GateKind.ABSTRACT_ONLY_EXCLUSION] = GateResult(SKIPPED, "no contracts to judge")
    results[GateKind.IMPORT_RESOLUTION] = check_imports(unit, config, corpus_files)
    results[GateKind.PRAGMA_COMPATIBILITY] = check_pragma(unit, config)
    results[GateKind.STANDALONE_VIABILITY] = check_standalone(unit)

    passed = all(r.status == PASS for r in results.values())
    return EligibilityReport(file_path=unit.file_path, passed=passed, gate_results=results)
