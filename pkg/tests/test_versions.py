"""Version range parsing checked against a brute-force comparator oracle.

The oracle re-evaluates the raw constraint text per candidate version with
its own comparator semantics and never touches the interval representation.
"""

import re

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rugscan.frontend.versions import Version, parse_range, parse_version

# every version the oracle enumerates; dense around the 0.x space plus
# sentinels above the supported window
GRID = [
    Version(major, minor, patch)
    for major in (0, 1)
    for minor in range(0, 10)
    for patch in [*range(0, 26), 99, 100, 101]
]

_CMP_RE = re.compile(r"(\^|~|>=|<=|>|<|=)?\s*(\d+(?:\.\d+){0,2})")


def _oracle_satisfies(constraint: str, v: Version) -> bool:
    """Comparator-by-comparator evaluation, npm semantics, no intervals."""

    def triple(text):
        parts = [int(p) for p in text.split(".")]
        return tuple(parts + [0] * (3 - len(parts))), len(parts)

    def one_group(group: str) -> bool:
        pos, any_cmp = 0, False
        vv = (v.major, v.minor, v.patch)
        while pos < len(group):
            if group[pos].isspace():
                pos += 1
                continue
            m = _CMP_RE.match(group, pos)
            if not m:
                raise AssertionError(f"oracle cannot read {group!r}")
            op = m.group(1) or "="
            t, nparts = triple(m.group(2))
            any_cmp = True
            if op == "^":
                if t[0] > 0:
                    ok = t <= vv < (t[0] + 1, 0, 0)
                elif t[1] > 0:
                    ok = t <= vv < (0, t[1] + 1, 0)
                else:
                    ok = vv == t
            elif op == "~":
                ok = t <= vv < (t[0], t[1] + 1, 0)
            elif op == ">=":
                ok = vv >= t
            elif op == ">":
                ok = vv > t
            elif op == "<":
                ok = vv < t
            elif op == "<=":
                ok = vv <= t
            else:  # "=" / bare: partial versions are x-ranges
                if nparts == 3:
                    ok = vv == t
                elif nparts == 2:
                    ok = t <= vv < (t[0], t[1] + 1, 0)
                else:
                    ok = t <= vv < (t[0] + 1, 0, 0)
            if not ok:
                return False
            pos = m.end()
        return any_cmp

    return any(one_group(g.strip()) for g in constraint.split("||"))


CONSTRAINTS = [
    "^0.8.0",
    "^0.8",
    "^0.4.11",
    "^0.0.5",
    "~0.4.24",
    ">=0.8.0",
    ">=0.4.22 <0.6.0",
    ">=0.4.22 <0.9.0",
    ">0.4.99",
    "0.8.17",
    "=0.8.17",
    "0.8",
    "0.6.0 || ^0.7.0",
    ">=0.5.0 <=0.5.16",
    "<0.9.0",
]


@pytest.mark.parametrize("constraint", CONSTRAINTS)
def test_contains_matches_oracle(constraint):
    rng = parse_range(constraint)
    for v in GRID:
        assert rng.contains(v) == _oracle_satisfies(constraint, v), (constraint, str(v))


@pytest.mark.parametrize("constraint", CONSTRAINTS)
def test_intersects_matches_oracle_windows(constraint):
    rng = parse_range(constraint)
    windows = [
        (Version(0, 4, 0), Version(0, 8, 19)),
        (Version(0, 8, 0), Version(0, 8, 19)),
        (Version(0, 5, 0), Version(0, 5, 17)),
        (Version(1, 0, 0), Version(1, 9, 25)),
    ]
    for floor, ceiling in windows:
        expected = any(
            floor <= v <= ceiling and _oracle_satisfies(constraint, v) for v in GRID
        )
        assert rng.intersects(floor, ceiling) == expected, (constraint, str(floor), str(ceiling))


@pytest.mark.parametrize("constraint", CONSTRAINTS)
def test_admits_below_matches_oracle(constraint):
    rng = parse_range(constraint)
    for threshold in (Version(0, 5, 0), Version(0, 8, 0), Version(0, 8, 18)):
        expected = any(v < threshold and _oracle_satisfies(constraint, v) for v in GRID)
        assert rng.admits_below(threshold) == expected, (constraint, str(threshold))


def test_spec_value_examples():
    # frozen from the oracle above
    window = (Version(0, 4, 0), Version(0, 8, 19))
    assert parse_range("^0.8.0").intersects(*window)
    assert not parse_range("0.9.1").intersects(*window)
    assert parse_range(">=0.4.22 <0.6.0").intersects(*window)
    assert parse_range("^0.6.0").admits_below(Version(0, 8, 0))
    assert not parse_range("^0.8.4").admits_below(Version(0, 8, 0))
    assert parse_range(">=0.4.22 <0.9.0").admits_below(Version(0, 8, 0))


def test_exact_pin_detection():
    assert parse_range("0.8.17").is_exact_pin
    assert not parse_range("=0.8.17").is_exact_pin  # operator present
    assert not parse_range("0.8").is_exact_pin  # x-range
    assert not parse_range("^0.8.17").is_exact_pin
    pinned = parse_range("0.8.17")
    lo, hi = pinned.intervals[0]
    assert lo == Version(0, 8, 17) and hi == Version(0, 8, 18)


def test_rejects_garbage():
    for bad in ("", "latest", "^x.y.z", "0.8.0 banana", "||"):
        with pytest.raises(ValueError):
            parse_range(bad)


def test_parse_version_components():
    assert parse_version("0.8") == Version(0, 8, 0)
    assert parse_version("1") == Version(1, 0, 0)
    with pytest.raises(ValueError):
        parse_version("abc")


versions_st = st.builds(
    Version,
    st.integers(min_value=0, max_value=2),
    st.integers(min_value=0, max_value=12),
    st.integers(min_value=0, max_value=30),
)


@given(versions_st, versions_st)
def test_widening_window_is_monotone(a, b):
    floor, ceiling = min(a, b), max(a, b)
    wider_floor, wider_ceiling = Version(0, 0, 0), Version(99, 0, 0)
    for constraint in ("^0.8.0", ">=0.4.22 <0.6.0", "0.8.17"):
        rng = parse_range(constraint)
        if rng.intersects(floor, ceiling):
            assert rng.intersects(wider_floor, wider_ceiling)
