"""Solidity frontend: lexing, parsing, pragma version ranges."""

from .lexer import USING_COMPILED_LEXER, tokenize
from .parser import canonical_signature, canonical_type, make_signature, parse
from .versions import Version, VersionRange, parse_range, parse_version

__all__ = [
    "USING_COMPILED_LEXER",
    "Version",
    "VersionRange",
    "canonical_signature",
    "canonical_type",
    "make_signature",
    "parse",
    "parse_range",
    "parse_version",
    "tokenize",
]
