import pytest

from rugscan.errors import LexError
from rugscan.frontend import tokenize
from rugscan.frontend.tokens import EOF, IDENT, NUMBER, PUNCT, STRING


def kinds_and_values(source):
    return [(t[0], t[1]) for t in tokenize(source) if t[0] != EOF]


def test_minimal_pragma_directive():
    assert kinds_and_values("pragma solidity ^0.8.0;") == [
        (IDENT, "pragma"),
        (IDENT, "solidity"),
        (PUNCT, "^"),
        (NUMBER, "0.8"),
        (PUNCT, "."),
        (NUMBER, "0"),
        (PUNCT, ";"),
    ]


def test_selfdestruct_lexes_as_identifier():
    values = [t[1] for t in tokenize("selfdestruct(payable(owner));") if t[0] == IDENT]
    assert values == ["selfdestruct", "payable", "owner"]


def test_deprecated_suicide_alias_is_plain_identifier():
    # suicide(address) was a global function in the 0.4 grammar, not a keyword
    tokens = tokenize("suicide(owner)")
    assert tokens[0][0] == IDENT and tokens[0][1] == "suicide"


def test_comments_discarded_but_lines_preserved():
    source = "// line one\n/* multi\nline */ contract"
    tokens = tokenize(source)
    assert tokens[0][1] == "contract"
    assert tokens[0][2] == 3  # line number survives the comments


def test_positions_and_offsets():
    source = "a\n  bb cc"
    a, bb, cc, eof = tokenize(source)
    assert (a[2], a[3]) == (1, 1)
    assert (bb[2], bb[3]) == (2, 3)
    assert (cc[2], cc[3]) == (2, 6)
    assert source[bb[4] : bb[5]] == "bb"


def test_string_escapes_and_quotes():
    tokens = tokenize(r'"with \"escape\"" ' + "'single'")
    assert tokens[0][0] == STRING and tokens[0][1] == r"with \"escape\""
    assert tokens[1][1] == "single"


def test_number_forms():
    values = [t[1] for t in tokenize("0x1F 1_000 0.5 1e18 2.5e-3 42") if t[0] == NUMBER]
    assert values == ["0x1F", "1_000", "0.5", "1e18", "2.5e-3", "42"]


def test_multichar_operators_maximal_munch():
    values = [t[1] for t in tokenize("a >>= b >> c >= d = e") if t[0] == PUNCT]
    assert values == [">>=", ">>", ">=", "="]
    values = [t[1] for t in tokenize("x := y") if t[0] == PUNCT]
    assert values == [":="]


def test_dollar_in_identifiers():
    assert tokenize("$weird$ name")[0][1] == "$weird$"


@pytest.mark.parametrize(
    "source,fragment",
    [
        ('"unterminated', "unterminated string"),
        ('"broken\nnewline"', "unterminated string"),
        ("/* never closed", "unterminated block comment"),
        ("pragma @", "illegal character"),
    ],
)
def test_lex_errors_carry_position(source, fragment):
    with pytest.raises(LexError) as exc:
        tokenize(source)
    assert fragment in str(exc.value)
    assert exc.value.line >= 1 and exc.value.col >= 1


def test_stream_ends_with_eof():
    tokens = tokenize("contract A {}")
    assert tokens[-1][0] == EOF
    assert tokenize("")[-1][0] == EOF
