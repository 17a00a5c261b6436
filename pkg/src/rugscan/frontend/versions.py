"""Semantic versions and pragma constraint ranges.

Solidity pragmas use npm-style comparators: ``^0.8.0``, ``~0.4.24``,
``>=0.4.22 <0.6.0``, bare pins like ``0.8.17``, and ``||`` disjunction.
A parsed range is a union of half-open intervals [lo, hi) over version
triples, which makes intersection and below-threshold queries exact.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import total_ordering


@total_ordering
@dataclass(frozen=True)
class Version:
    major: int
    minor: int
    patch: int

    def __lt__(self, other: "Version") -> bool:
        return (self.major, self.minor, self.patch) < (other.major, other.minor, other.patch)

    def __str__(self) -> str:
        return f"{self.major}.{self.minor}.{self.patch}"

    def successor(self) -> "Version":
        return Version(self.major, self.minor, self.patch + 1)


# Effectively +infinity for open upper bounds.
VERSION_INF = Version(9999, 0, 0)

_VERSION_RE = re.compile(r"^(\d+)(?:\.(\d+))?(?:\.(\d+))?$")
_COMPARATOR_RE = re.compile(r"(\^|~|>=|<=|>|<|=)?\s*(\d+(?:\.\d+){0,2})")


def parse_version(text: str) -> Version:
    """Parse ``x[.y[.z]]``; missing components default to 0."""
    m = _VERSION_RE.match(text.strip())
    if not m:
        raise ValueError(f"invalid version: {text!r}")
    return Version(int(m.group(1)), int(m.group(2) or 0), int(m.group(3) or 0))


@dataclass(frozen=True)
class VersionRange:
    """Union of half-open [lo, hi) intervals plus the raw constraint text."""

    intervals: tuple[tuple[Version, Version], ...]
    text: str
    is_exact_pin: bool = False

    def is_empty(self) -> bool:
        return not any(lo < hi for lo, hi in self.intervals)

    def contains(self, v: Version) -> bool:
        return any(lo <= v < hi for lo, hi in self.intervals)

    def intersects(self, floor: Version, ceiling: Version) -> bool:
        """True when some version in the inclusive window [floor, ceiling] satisfies the range."""
        window_hi = ceiling.successor()
        return any(lo < window_hi and floor < hi and lo < hi for lo, hi in self.intervals)

    def admits_below(self, threshold: Version) -> bool:
        """True when the range is satisfiable by some version < threshold."""
        return any(lo < hi and lo < threshold for lo, hi in self.intervals)


def _caret_upper(v: Version) -> Version:
    # ^ pins the leftmost non-zero component.
    if v.major > 0:
        return Version(v.major + 1, 0, 0)
    if v.minor > 0:
        return Version(0, v.minor + 1, 0)
    return Version(0, 0, v.patch + 1)


def _apply(op: str, raw: str, lo: Version, hi: Version) -> tuple[Version, Version]:
    v = parse_version(raw)
    parts = raw.count(".") + 1
    if op == "^":
        return max(lo, v), min(hi, _caret_upper(v))
    if op == "~":
        return max(lo, v), min(hi, Version(v.major, v.minor + 1, 0))
    if op == ">=":
        return max(lo, v), hi
    if op == ">":
        return max(lo, v.successor()), hi
    if op == "<":
        return lo, min(hi, v)
    if op == "<=":
        return lo, min(hi, v.successor())
    # "=" and bare versions: a full triple pins exactly, a partial one
    # (e.g. "0.8") is an x-range over the missing components.
    if parts == 3:
        return max(lo, v), min(hi, v.successor())
    if parts == 2:
        return max(lo, v), min(hi, Version(v.major, v.minor + 1, 0))
    return max(lo, v), min(hi, Version(v.major + 1, 0, 0))


def parse_range(text: str) -> VersionRange:
    """Parse a pragma constraint into a VersionRange.

    Raises ValueError when no comparator can be extracted or leftover text
    remains (e.g. ``pragma solidity latest``).
    """
    intervals: list[tuple[Version, Version]] = []
    stripped = text.strip()
    if not stripped:
        raise ValueError("empty version constraint")
    for group in stripped.split("||"):
        group = group.strip()
        if not group:
            raise ValueError(f"empty alternative in constraint: {text!r}")
        lo, hi = Version(0, 0, 0), VERSION_INF
        pos = 0
        matched = False
        while pos < len(group):
            if group[pos].isspace():
                pos += 1
                continue
            m = _COMPARATOR_RE.match(group, pos)
            if not m:
                raise ValueError(f"invalid constraint: {text!r}")
            lo, hi = _apply(m.group(1) or "=", m.group(2), lo, hi)
            matched = True
            pos = m.end()
        if not matched:
            raise ValueError(f"invalid constraint: {text!r}")
        intervals.append((lo, hi))

    exact = bool(_VERSION_RE.match(stripped)) and stripped.count(".") == 2
    return VersionRange(intervals=tuple(intervals), text=text, is_exact_pin=exact)
