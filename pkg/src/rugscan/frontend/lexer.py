"""Lexer entry point: picks the compiled scanner when available.

Set RUGSCAN_PURE=1 to force the pure-Python implementation (useful for
benchmarking and for debugging the compiled twin).
"""

import os

from . import _lexer_py

if os.environ.get("RUGSCAN_PURE"):
    _scan = _lexer_py.scan
    USING_COMPILED_LEXER = False
else:
    try:
        from . import _lexer  # type: ignore[attr-defined]

        _scan = _lexer.scan
        USING_COMPILED_LEXER = True
    except ImportError:
        _scan = _lexer_py.scan
        USING_COMPILED_LEXER = False


def tokenize(source: str):
    """Tokenize Solidity source into (kind, value, line, col, start, end) tuples."""
    return _scan(source)
