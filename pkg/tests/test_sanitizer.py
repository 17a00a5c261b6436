import pytest
from hypothesis import given
from hypothesis import strategies as st

from rugscan.errors import ParseError
from rugscan.frontend import parse
from rugscan.frontend.versions import Version
from rugscan.sanitizer import (
    FAIL,
    PASS,
    SKIPPED,
    EligibilityReport,
    GateKind,
    SanitizerConfig,
    check_abstract_only,
    check_imports,
    check_pragma,
    check_standalone,
    sanitize,
)

DEFAULT = SanitizerConfig()


def parse_src(source, path="f.sol"):
    return parse(source, path)


# -- imports -------------------------------------------------------------


def test_import_fails_and_names_path():
    unit = parse_src('import "../utils/SafeMath.sol";\ncontract A {}')
    result = check_imports(unit, DEFAULT)
    assert result.status == FAIL
    assert "../utils/SafeMath.sol" in result.reason


def test_no_imports_pass():
    assert check_imports(parse_src("contract A {}"), DEFAULT).status == PASS


def test_permissive_mode_resolves_sibling_in_corpus():
    config = SanitizerConfig(allow_relative_imports_resolvable_in_corpus=True)
    unit = parse_src('import "./Helper.sol";\ncontract A {}', path="pkg/Main.sol")
    corpus = frozenset({"pkg/Main.sol", "pkg/Helper.sol"})
    assert check_imports(unit, config, corpus).status == PASS
    assert check_imports(unit, config, frozenset({"pkg/Main.sol"})).status == FAIL


def test_permissive_mode_still_rejects_nonrelative():
    config = SanitizerConfig(allow_relative_imports_resolvable_in_corpus=True)
    unit = parse_src('import "@openzeppelin/token/ERC721.sol";\ncontract A {}')
    assert check_imports(unit, config, frozenset()).status == FAIL


# -- pragma ---------------------------------------------------------------


def test_flexible_pragma_passes():
    assert check_pragma(parse_src("pragma solidity ^0.8.0;\ncontract A {}"), DEFAULT).status == PASS
    assert check_pragma(parse_src("pragma solidity >=0.8.0;\ncontract A {}"), DEFAULT).status == PASS


def test_exact_pin_above_ceiling_fails():
    unit = parse_src("pragma solidity 0.9.1;\ncontract A {}")
    assert check_pragma(unit, DEFAULT).status == FAIL


def test_intersecting_range_passes():
    # oracle-verified in test_versions: >=0.4.22 <0.6.0 intersects 0.4.0..0.8.19
    unit = parse_src("pragma solidity >=0.4.22 <0.6.0;\ncontract A {}")
    assert check_pragma(unit, DEFAULT).status == PASS


def test_exact_pin_inside_window_passes():
    unit = parse_src("pragma solidity 0.8.17;\ncontract A {}")
    assert check_pragma(unit, DEFAULT).status == PASS


def test_unparseable_constraint_fails():
    unit = parse_src("pragma solidity weird;\ncontract A {}")
    assert check_pragma(unit, DEFAULT).status == FAIL


def test_experimental_pragma_ignored():
    unit = parse_src("pragma experimental ABIEncoderV2;\ncontract A {}")
    assert check_pragma(unit, DEFAULT).status == PASS


# -- standalone -----------------------------------------------------------


def test_missing_base_fails_with_name():
    result = check_standalone(parse_src("contract A is B {}"))
    assert result.status == FAIL and "B" in result.reason


def test_in_file_base_passes():
    assert check_standalone(parse_src("contract B {}\ncontract A is B {}")).status == PASS


def test_diamond_inheritance_passes():
    source = """
    contract D {}
    contract B is D {}
    contract C is D {}
    contract A is B, C {}
    """
    # in-file name-set oracle: every base name appears as a definition
    unit = parse_src(source)
    defined = {c.name for c in unit.contracts}
    assert all(b in defined for c in unit.contracts for b in c.bases)
    assert check_standalone(unit).status == PASS


# -- abstract only -----------------------------------------------------------


def test_interface_only_file_fails():
    assert check_abstract_only(parse_src("interface IERC165 { function f() external; }")).status == FAIL


def test_concrete_among_interfaces_passes():
    source = """
    interface I1 {}
    interface I2 {}
    interface I3 {}
    contract Real {}
    """
    assert check_abstract_only(parse_src(source)).status == PASS


def test_library_only_counts_as_concrete():
    assert check_abstract_only(parse_src("library Lib { }")).status == PASS


def test_abstract_contracts_only_fails():
    assert check_abstract_only(parse_src("abstract contract A { }")).status == FAIL


# -- sanitize end to end ------------------------------------------------------


def test_unparseable_file_fails_syntax_others_skipped():
    try:
        parse("contract Broken {", "b.sol")
        raise AssertionError("expected ParseError")
    except ParseError as exc:
        report = sanitize(exc, DEFAULT, file_path="b.sol")
    assert report.passed is False
    assert report.gate_results[GateKind.SYNTAX_CHECK].status == FAIL
    for gate in GateKind:
        if gate != GateKind.SYNTAX_CHECK:
            assert report.gate_results[gate].status == SKIPPED


def test_clean_standalone_nft_passes_all_gates():
    source = open("tests/fixtures/labeled/neg_clean_modern.sol").read()
    report = sanitize(parse(source, "clean.sol"), DEFAULT)
    assert report.passed is True
    assert all(r.status == PASS for r in report.gate_results.values())


def test_two_failing_gates_both_reported():
    source = 'import "./X.sol";\npragma solidity 0.9.5;\ncontract A {}'
    report = sanitize(parse_src(source), DEFAULT)
    failed = set(report.failed_gates())
    assert failed == {GateKind.IMPORT_RESOLUTION, GateKind.PRAGMA_COMPATIBILITY}
    assert report.passed is False


def test_zero_contracts_fails_syntax_gate():
    report = sanitize(parse_src("pragma solidity ^0.8.0;"), DEFAULT)
    assert report.gate_results[GateKind.SYNTAX_CHECK].status == FAIL
    assert "no contracts" in report.gate_results[GateKind.SYNTAX_CHECK].reason


def test_gate_independence():
    """Toggling one gate's input condition flips only that gate."""
    base = "pragma solidity ^0.8.0;\ncontract A {}"
    with_import = 'import "./Y.sol";\n' + base
    r_base = sanitize(parse_src(base), DEFAULT)
    r_imp = sanitize(parse_src(with_import), DEFAULT)
    for gate in GateKind:
        if gate == GateKind.IMPORT_RESOLUTION:
            assert r_base.gate_results[gate].status != r_imp.gate_results[gate].status
        else:
            assert r_base.gate_results[gate].status == r_imp.gate_results[gate].status


def test_sanitizer_does_not_mutate_unit():
    unit = parse_src("pragma solidity ^0.8.0;\ncontract A is A2 {}\ncontract A2 {}")
    snapshot = parse_src("pragma solidity ^0.8.0;\ncontract A is A2 {}\ncontract A2 {}")
    sanitize(unit, DEFAULT)
    assert unit == snapshot


def test_passed_iff_every_gate_passes():
    for source in (
        "pragma solidity ^0.8.0;\ncontract A {}",
        "pragma solidity 0.9.5;\ncontract A {}",
        "interface I {}",
    ):
        report = sanitize(parse_src(source), DEFAULT)
        assert report.passed == all(r.status == PASS for r in report.gate_results.values())


@given(
    floor_patch=st.integers(min_value=0, max_value=30),
    widen=st.integers(min_value=0, max_value=30),
)
def test_widening_window_monotone(floor_patch, widen):
    """Widening [floor, ceiling] never turns a pragma pass into a fail."""
    unit = parse("pragma solidity ^0.5.4;\ncontract A {}", "m.sol")
    narrow = SanitizerConfig(
        supported_version_floor=Version(0, 5, floor_patch),
        supported_version_ceiling=Version(0, 6, 0),
    )
    wide = SanitizerConfig(
        supported_version_floor=Version(0, 5, max(0, floor_patch - widen)),
        supported_version_ceiling=Version(0, 6, widen),
    )
    if check_pragma(unit, narrow).status == PASS:
        assert check_pragma(unit, wide).status == PASS
