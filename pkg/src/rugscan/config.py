"""Run configuration: defaults, flat key-value config file, CLI overrides
(precedence CLI > config file > defaults), and the deployment manifest."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .classifier import DEFAULT_BASES, DEFAULT_KEYWORDS, DEFAULT_SIGNATURES, Catalogs
from .detectors import ALL_PATTERNS, DetectorConfig, PatternKind
from .errors import ManifestError
from .frontend.versions import Version, parse_version
from .risk import Tier
from .sanitizer import SanitizerConfig

TIER_RANK = {Tier.NONE: 0, Tier.LOW: 1, Tier.MEDIUM: 2, Tier.HIGH: 3}


@dataclass(frozen=True)
class RunConfig:
    sanitizer: SanitizerConfig = SanitizerConfig()
    detector: DetectorConfig = DetectorConfig()
    catalogs: Catalogs = Catalogs()
    strict_nft: bool = False
    per_occurrence: bool = False
    workers: int = 1
    out_format: str = "json"  # json | csv
    out_dir: Optional[str] = None
    fail_on_tier: Optional[Tier] = None
    top_n: int = 10
    high_severity_only: bool = False
    manifest_path: Optional[str] = None

    def __post_init__(self):
        if self.workers < 1:
            raise ValueError("worker count must be >= 1")
        if self.out_format not in ("json", "csv"):
            raise ValueError(f"unknown output format {self.out_format!r}")
        if self.fail_on_tier is not None and self.fail_on_tier == Tier.NONE:
            raise ValueError("fail_on_tier must be high, medium or low")


def read_config_file(path: Path | str) -> dict[str, str]:
    """Flat ``key = value`` lines; '#' comments; list values comma-separated."""
    values: dict[str, str] = {}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        values[key.strip()] = value.strip()
    return values


def _parse_bool(value: str) -> bool:
    low = value.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {value!r}")


def _parse_list(value: str) -> tuple[str, ...]:
    return tuple(item.strip() for item in value.split(",") if item.strip())


def _parse_tier(value: str) -> Tier:
    try:
        return Tier(value.strip().capitalize())
    except ValueError:
        raise ValueError(f"unknown tier {value!r}") from None


def _parse_patterns(value: str) -> frozenset[PatternKind]:
    out = set()
    for name in _parse_list(value):
        try:
            out.add(PatternKind(name))
        except ValueError:
            raise ValueError(f"unknown detector {name!r}") from None
    return frozenset(out)


def build_run_config(
    file_values: Optional[dict[str, str]] = None,
    overrides: Optional[dict[str, object]] = None,
) -> RunConfig:
    """Layer config-file values and CLI overrides over the defaults.

    overrides use the same keys as the config file with already-typed values;
    None entries mean "not set on the command line".
    """
    merged: dict[str, object] = {}
    parsers = {
        "version_floor": parse_version,
        "version_ceiling": parse_version,
        "reject_exact_pins_outside_range": _parse_bool,
        "allow_relative_imports": _parse_bool,
        "detectors": _parse_patterns,
        "owner_modifiers": _parse_list,
        "deprecated_below": parse_version,
        "signatures": lambda v: frozenset(_parse_list(v)),
        "bases": lambda v: frozenset(_parse_list(v)),
        "keywords": lambda v: frozenset(_parse_list(v)),
        "strict_nft": _parse_bool,
        "per_occurrence_scoring": _parse_bool,
        "workers": int,
        "format": str,
        "out": str,
        "fail_on_tier": _parse_tier,
        "top_n": int,
        "multi_pattern_high_severity_only": _parse_bool,
        "manifest": str,
    }
    for key, raw in (file_values or {}).items():
        if key not in parsers:
            raise ValueError(f"unknown config key {key!r}")
        merged[key] = parsers[key](raw)  # type: ignore[operator]
    for key, value in (overrides or {}).items():
        if value is None:
            continue
        if key not in parsers:
            raise ValueError(f"unknown config key {key!r}")
        merged[key] = value

    sanitizer = SanitizerConfig(
        supported_version_floor=merged.get("version_floor", Version(0, 4, 0)),
        supported_version_ceiling=merged.get("version_ceiling", Version(0, 8, 19)),
        reject_exact_pins_outside_range=merged.get("reject_exact_pins_outside_range", True),
        allow_relative_imports_resolvable_in_corpus=merged.get("allow_relative_imports", False),
    )
    detector = DetectorConfig(
        enabled=merged.get("detectors", ALL_PATTERNS),
        owner_modifiers=merged.get("owner_modifiers", ("onlyOwner", "onlyRole", "onlyAdmin")),
        deprecated_below=merged.get("deprecated_below", Version(0, 8, 0)),
    )
    catalogs = Catalogs(
        signatures=merged.get("signatures", DEFAULT_SIGNATURES),
        bases=merged.get("bases", DEFAULT_BASES),
        keywords=merged.get("keywords", DEFAULT_KEYWORDS),
    )
    return RunConfig(
        sanitizer=sanitizer,
        detector=detector,
        catalogs=catalogs,
        strict_nft=merged.get("strict_nft", False),
        per_occurrence=merged.get("per_occurrence_scoring", False),
        workers=merged.get("workers", 1),
        out_format=merged.get("format", "json"),
        out_dir=merged.get("out", None),
        fail_on_tier=merged.get("fail_on_tier", None),
        top_n=merged.get("top_n", 10),
        high_severity_only=merged.get("multi_pattern_high_severity_only", False),
        manifest_path=merged.get("manifest", None),
    )


@dataclass(frozen=True)
class ManifestEntry:
    file_name: str
    address: str
    compiler_version: str
    optimization: bool


MANIFEST_COLUMNS = ["file", "address", "compiler_version", "optimization"]


def load_manifest(path: Path | str) -> dict[str, ManifestEntry]:
    """Read the headered CSV deployment manifest, keyed by file name."""
    entries: dict[str, ManifestEntry] = {}
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        rows = list(reader)
    if not rows:
        return entries
    header = [h.strip() for h in rows[0]]
    if header != MANIFEST_COLUMNS:
        raise ManifestError(f"expected header {','.join(MANIFEST_COLUMNS)}", row=1)
    for idx, row in enumerate(rows[1:], start=2):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if len(row) != len(MANIFEST_COLUMNS):
            raise ManifestError(f"expected {len(MANIFEST_COLUMNS)} columns, found {len(row)}", row=idx)
        file_name, address, compiler, optimization = (cell.strip() for cell in row)
        if file_name in entries:
            raise ManifestError(f"duplicate file name {file_name!r}", row=idx)
        try:
            opt = _parse_bool(optimization)
        except ValueError as exc:
            raise ManifestError(str(exc), row=idx) from None
        entries[file_name] = ManifestEntry(
            file_name=file_name, address=address, compiler_version=compiler, optimization=opt
        )
    return entries
