"""Chart-data emission: machine-readable CSV tables plus self-contained SVG.

The CSV tables are the contract (one header row, comma-separated, UTF-8, LF);
the SVG files are a convenience for eyeballing a corpus without extra tooling.
No plotting library involved.
"""

from __future__ import annotations

import csv
import math
from pathlib import Path

from .aggregate import PATTERN_ORDER, TIER_ORDER, CorpusReport

TIER_COLORS = {"High": "#c0392b", "Medium": "#e67e22", "Low": "#2980b9", "None": "#7f8c8d"}
BAR_COLOR = "#34495e"


def _write_csv(path: Path, header: list[str], rows: list[list]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def _svg_doc(width: int, height: int, body: str, title: str) -> str:
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif">\n'
        f'<text x="{width // 2}" y="24" text-anchor="middle" font-size="16" '
        f'font-weight="bold">{title}</text>\n{body}</svg>\n'
    )


def _svg_bar_chart(labels: list[str], values: list[int], title: str) -> str:
    width, left, row_h = 720, 260, 30
    height = 50 + row_h * len(labels) + 10
    peak = max(values) if any(values) else 1
    parts = []
    for i, (label, value) in enumerate(zip(labels, values)):
        y = 50 + i * row_h
        bar_w = int((width - left - 90) * value / peak)
        parts.append(
            f'<text x="{left - 8}" y="{y + 15}" text-anchor="end" font-size="12">{label}</text>'
        )
        parts.append(
            f'<rect x="{left}" y="{y}" width="{max(bar_w, 1)}" height="{row_h - 8}" fill="{BAR_COLOR}"/>'
        )
        parts.append(
            f'<text x="{left + max(bar_w, 1) + 6}" y="{y + 15}" font-size="12">{value}</text>'
        )
    return _svg_doc(width, height, "\n".join(parts) + "\n", title)


def _svg_pie_chart(labels: list[str], values: list[int], title: str) -> str:
    width, height, cx, cy, r = 560, 360, 190, 200, 130
    total = sum(values)
    parts = []
    if total == 0:
        parts.append(f'<text x="{cx}" y="{cy}" text-anchor="middle" font-size="14">no data</text>')
    else:
        angle = -math.pi / 2
        for label, value in zip(labels, values):
            if value == 0:
                continue
            frac = value / total
            color = TIER_COLORS.get(label, BAR_COLOR)
            if frac >= 0.999999:
                parts.append(f'<circle cx="{cx}" cy="{cy}" r="{r}" fill="{color}"/>')
                break
            end = angle + 2 * math.pi * frac
            x1, y1 = cx + r * math.cos(angle), cy + r * math.sin(angle)
            x2, y2 = cx + r * math.cos(end), cy + r * math.sin(end)
            large = 1 if frac > 0.5 else 0
            parts.append(
                f'<path d="M{cx},{cy} L{x1:.2f},{y1:.2f} '
                f'A{r},{r} 0 {large} 1 {x2:.2f},{y2:.2f} Z" fill="{color}"/>'
            )
            angle = end
    for i, (label, value) in enumerate(zip(labels, values)):
        y = 80 + i * 26
        pct = 100.0 * value / total if total else 0.0
        color = TIER_COLORS.get(label, BAR_COLOR)
        parts.append(f'<rect x="370" y="{y - 12}" width="14" height="14" fill="{color}"/>')
        parts.append(
            f'<text x="392" y="{y}" font-size="13">{label}: {value} ({pct:.1f}%)</text>'
        )
    return _svg_doc(width, height, "\n".join(parts) + "\n", title)


def _svg_heatmap(labels: list[str], matrix: list[list[int]], title: str) -> str:
    cell, left, top = 78, 190, 110
    size = len(labels)
    width = left + cell * size + 20
    height = top + cell * size + 20
    peak = max((v for row in matrix for v in row), default=0) or 1
    parts = []
    for i, label in enumerate(labels):
        parts.append(
            f'<text x="{left - 8}" y="{top + i * cell + cell // 2 + 4}" text-anchor="end" '
            f'font-size="11">{label}</text>'
        )
        x = left + i * cell + cell // 2
        parts.append(
            f'<text x="{x}" y="{top - 10}" text-anchor="end" font-size="11" '
            f'transform="rotate(-40 {x} {top - 10})">{label}</text>'
        )
    for i in range(size):
        for j in range(size):
            value = matrix[i][j]
            intensity = value / peak
            red = 255
            other = int(255 - 195 * intensity)
            parts.append(
                f'<rect x="{left + j * cell}" y="{top + i * cell}" width="{cell - 2}" '
                f'height="{cell - 2}" fill="rgb({red},{other},{other})" stroke="#ccc"/>'
            )
            parts.append(
                f'<text x="{left + j * cell + cell // 2}" y="{top + i * cell + cell // 2 + 4}" '
                f'text-anchor="middle" font-size="12">{value}</text>'
            )
    return _svg_doc(width, height, "\n".join(parts) + "\n", title)


def _svg_table(headers: list[str], rows: list[list[str]], title: str, col_x: list[int]) -> str:
    width = col_x[-1] + 140
    height = 70 + 24 * len(rows) + 20
    parts = []
    for x, head in zip(col_x, headers):
        parts.append(f'<text x="{x}" y="52" font-size="13" font-weight="bold">{head}</text>')
    parts.append(f'<line x1="20" y1="60" x2="{width - 20}" y2="60" stroke="#333"/>')
    for i, row in enumerate(rows):
        y = 82 + i * 24
        for x, value in zip(col_x, row):
            text = str(value)
            if len(text) > 60:
                text = text[:57] + "..."
            parts.append(f'<text x="{x}" y="{y}" font-size="12">{text}</text>')
    return _svg_doc(width, height, "\n".join(parts) + "\n", title)


def emit_chart_data(report: CorpusReport, out_dir: Path | str) -> set[Path]:
    """Write the four chart artifacts (CSV + SVG each); returns written paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: set[Path] = set()

    def emit(name: str, header: list[str], rows: list[list], svg: str) -> None:
        csv_path = out / f"{name}.csv"
        svg_path = out / f"{name}.svg"
        _write_csv(csv_path, header, rows)
        svg_path.write_text(svg, encoding="utf-8")
        written.add(csv_path)
        written.add(svg_path)

    pattern_labels = [p.value for p in PATTERN_ORDER]
    pattern_values = [report.pattern_counts[p] for p in PATTERN_ORDER]
    emit(
        "pattern_frequency",
        ["pattern", "contracts_affected"],
        [[l, v] for l, v in zip(pattern_labels, pattern_values)],
        _svg_bar_chart(pattern_labels, pattern_values, "Vulnerability pattern frequency"),
    )

    tier_labels = [t.value for t in TIER_ORDER]
    tier_values = [report.tier_counts[t] for t in TIER_ORDER]
    percentages = report.tier_percentages()
    emit(
        "tier_distribution",
        ["tier", "contracts", "percentage"],
        [
            [t.value, report.tier_counts[t], f"{percentages[t]:.4f}"]
            for t in TIER_ORDER
        ],
        _svg_pie_chart(tier_labels, tier_values, "Contracts by risk tier"),
    )

    emit(
        "cooccurrence_heatmap",
        ["pattern", *pattern_labels],
        [
            [pattern_labels[i], *report.cooccurrence[i]]
            for i in range(len(pattern_labels))
        ],
        _svg_heatmap(pattern_labels, report.cooccurrence, "Pattern co-occurrence (contracts)"),
    )

    top_rows = [
        [rank + 1, cid, score, "; ".join(patterns)]
        for rank, (cid, score, patterns) in enumerate(report.top_n)
    ]
    emit(
        "top10_contracts",
        ["rank", "contract_id", "score", "patterns"],
        top_rows,
        _svg_table(
            ["rank", "contract_id", "score", "patterns"],
            [[str(c) for c in row] for row in top_rows],
            "Highest-risk contracts",
            [30, 90, 560, 640],
        ),
    )

    return written
