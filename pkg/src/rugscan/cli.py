"""Command-line entry point.

Commands:
  rugscan scan <file>    analyze one file, print per-contract JSON records
  rugscan corpus <dir>   analyze a directory tree, write reports + chart data

Exit codes: 0 clean, 1 risk-tier threshold breached, 2 input/usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from pathlib import Path
from typing import Optional

from .aggregate import CorpusReport
from .charts import emit_chart_data
from .config import (
    TIER_RANK,
    ManifestEntry,
    RunConfig,
    build_run_config,
    load_manifest,
    read_config_file,
)
from .errors import ManifestError
from .frontend.versions import parse_version
from .pipeline import FileOutcome, analyze_file, run_corpus
from .risk import RiskProfile, Tier
from .sanitizer import GateKind

RECORD_CSV_COLUMNS = [
    "contract_id",
    "file",
    "address",
    "eligible",
    "nft_relevant",
    "score",
    "tier",
    "patterns",
    "num_findings",
]


def _tier_breached(profiles: list[RiskProfile], threshold: Optional[Tier]) -> bool:
    if threshold is None:
        return False
    return any(TIER_RANK[p.tier] >= TIER_RANK[threshold] for p in profiles)


def _contract_record(
    outcome: FileOutcome,
    prof: RiskProfile,
    manifest: dict[str, ManifestEntry],
) -> dict:
    entry = manifest.get(Path(outcome.file_path).name)
    record = {
        "contract_id": prof.contract_id,
        "file": outcome.file_path,
        "eligibility": outcome.eligibility.to_record(),
        "classification": outcome.classification.to_record() if outcome.classification else None,
        "findings": [f.to_record() for f in prof.findings],
        "score": prof.score,
        "tier": prof.tier.value,
        "opaque_statements": outcome.opaque_statements,
    }
    if entry is not None:
        record["address"] = entry.address
        record["compiler_version"] = entry.compiler_version
    return record


def _records_to_csv(records: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(RECORD_CSV_COLUMNS)
    for r in records:
        patterns = sorted({f["pattern"] for f in r["findings"]})
        writer.writerow(
            [
                r["contract_id"],
                r["file"],
                r.get("address", ""),
                r["eligibility"]["passed"],
                r["classification"]["is_nft_relevant"] if r["classification"] else "",
                r["score"],
                r["tier"],
                ";".join(patterns),
                len(r["findings"]),
            ]
        )
    return buf.getvalue()


def _exclusion_entry(outcome: FileOutcome) -> dict:
    entry = {
        "file": outcome.file_path,
        "gates": outcome.eligibility.to_record()["gates"],
    }
    if outcome.classification is not None:
        entry["classification"] = outcome.classification.to_record()
    if outcome.read_error:
        entry["read_error"] = outcome.read_error
    return entry


def cmd_scan(path: Path, config: RunConfig, manifest: dict[str, ManifestEntry]) -> int:
    if not path.is_file():
        print(f"error: no such file: {path}", file=sys.stderr)
        return 2

    outcome = analyze_file(str(path), config)
    if not outcome.parsed:
        print(json.dumps({"file": outcome.file_path, "eligibility": outcome.eligibility.to_record()}))
        syntax = outcome.eligibility.gate_results[GateKind.SYNTAX_CHECK]
        print(f"error: {path}: {syntax.reason}", file=sys.stderr)
        return 2

    records = [_contract_record(outcome, prof, manifest) for prof in outcome.profiles]
    if config.out_format == "csv":
        sys.stdout.write(_records_to_csv(records))
    else:
        for record in records:
            print(json.dumps(record, ensure_ascii=False))

    return 1 if _tier_breached(outcome.profiles, config.fail_on_tier) else 0


def _write_corpus_outputs(
    out_dir: Path,
    report: CorpusReport,
    outcomes: list[FileOutcome],
    config: RunConfig,
    manifest: dict[str, ManifestEntry],
) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)

    records = [
        _contract_record(outcome, prof, manifest)
        for outcome in outcomes
        if outcome.analyzed
        for prof in outcome.profiles
    ]
    if config.out_format == "csv":
        (out_dir / "contracts.csv").write_text(_records_to_csv(records), encoding="utf-8")
    else:
        (out_dir / "contracts.json").write_text(
            json.dumps(records, indent=2, ensure_ascii=False) + "\n", encoding="utf-8"
        )

    exclusions = [_exclusion_entry(o) for o in outcomes if not o.analyzed]
    (out_dir / "exclusions.json").write_text(
        json.dumps(exclusions, indent=2, ensure_ascii=False) + "\n", encoding="utf-8"
    )
    (out_dir / "corpus_report.json").write_text(
        json.dumps(report.to_record(), indent=2, ensure_ascii=False) + "\n", encoding="utf-8"
    )
    emit_chart_data(report, out_dir / "charts")


def cmd_corpus(root: Path, config: RunConfig, manifest: dict[str, ManifestEntry]) -> int:
    if not root.is_dir():
        print(f"error: no such directory: {root}", file=sys.stderr)
        return 2

    started = time.perf_counter()
    report, outcomes = run_corpus(root, config)
    if not outcomes:
        print(f"error: no .sol files under {root}", file=sys.stderr)
        return 2

    out_dir = Path(config.out_dir) if config.out_dir else Path("rugscan-out")
    _write_corpus_outputs(out_dir, report, outcomes, config, manifest)

    elapsed = time.perf_counter() - started
    analyzed_files = sum(1 for o in outcomes if o.analyzed)
    print(
        f"scanned {report.total_files_seen} files in {elapsed:.2f}s "
        f"({config.workers} worker(s)): {analyzed_files} analyzed, "
        f"{report.total_files_seen - analyzed_files} excluded, "
        f"{report.analyzed_contracts} contracts -> {out_dir}"
    )
    for tier in (Tier.HIGH, Tier.MEDIUM, Tier.LOW, Tier.NONE):
        print(f"  {tier.value:>6}: {report.tier_counts[tier]}")

    analyzed_profiles = [p for o in outcomes if o.analyzed for p in o.profiles]
    return 1 if _tier_breached(analyzed_profiles, config.fail_on_tier) else 0


def _add_common_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", type=Path, help="flat key = value config file")
    sub.add_argument("--out", help="output directory for reports")
    sub.add_argument("--format", choices=("json", "csv"), help="record output format")
    sub.add_argument("--workers", type=int, help="parallel worker processes")
    sub.add_argument(
        "--fail-on-tier",
        choices=("high", "medium", "low"),
        help="exit 1 when any contract reaches this tier",
    )
    sub.add_argument("--manifest", type=Path, help="deployment manifest CSV")
    sub.add_argument(
        "--strict-nft",
        action="store_const",
        const=True,
        default=None,
        help="require signature or inheritance evidence (keyword-only is too loose)",
    )
    sub.add_argument(
        "--per-occurrence-scoring",
        action="store_const",
        const=True,
        default=None,
        help="score every finding instead of distinct patterns",
    )
    sub.add_argument(
        "--deprecated-below",
        metavar="VERSION",
        help="deprecated-pragma threshold (default 0.8.0)",
    )


def main(argv: Optional[list[str]] = None) -> int:
    parser = argparse.ArgumentParser(
        prog="rugscan",
        description="Static analysis of NFT Solidity contracts for rug-pull backdoors",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    scan_p = sub.add_parser("scan", help="analyze a single .sol file")
    scan_p.add_argument("file", type=Path)
    _add_common_flags(scan_p)

    corpus_p = sub.add_parser("corpus", help="analyze a directory of .sol files")
    corpus_p.add_argument("dir", type=Path)
    _add_common_flags(corpus_p)

    args = parser.parse_args(argv)

    try:
        file_values = read_config_file(args.config) if args.config else None
        overrides = {
            "out": args.out,
            "format": args.format,
            "workers": args.workers,
            "fail_on_tier": Tier(args.fail_on_tier.capitalize()) if args.fail_on_tier else None,
            "manifest": str(args.manifest) if args.manifest else None,
            "strict_nft": args.strict_nft,
            "per_occurrence_scoring": args.per_occurrence_scoring,
            "deprecated_below": (
                parse_version(args.deprecated_below) if args.deprecated_below else None
            ),
        }
        config = build_run_config(file_values, overrides)
        manifest = load_manifest(config.manifest_path) if config.manifest_path else {}
    except (ValueError, ManifestError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    if args.command == "scan":
        return cmd_scan(args.file, config, manifest)
    return cmd_corpus(args.dir, config, manifest)


if __name__ == "__main__":
    sys.exit(main())
