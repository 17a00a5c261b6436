# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled Solidity scanner.

Behavioural twin of ``_lexer_py.scan``; the two must emit identical token
streams for identical input (test_lexer_parity enforces this). Keep edits in
lockstep with the pure-Python module.
"""

from ..errors import LexError
from .tokens import EOF, IDENT, NUMBER, PUNCT, PUNCTS2, PUNCTS3, PUNCTS4, STRING

cdef frozenset _PUNCTS4 = frozenset(PUNCTS4)
cdef frozenset _PUNCTS3 = frozenset(PUNCTS3)
cdef frozenset _PUNCTS2 = frozenset(PUNCTS2)

cdef int K_IDENT = IDENT
cdef int K_NUMBER = NUMBER
cdef int K_STRING = STRING
cdef int K_PUNCT = PUNCT
cdef int K_EOF = EOF


cdef inline bint _is_single_punct(Py_UCS4 ch):
    return ch in u"+-*/%<>=!&|^~?:;,.(){}[]"


def scan(source: str):
    """Tokenize Solidity source, discarding comments and whitespace."""
    cdef unicode src = source
    cdef Py_ssize_t i = 0
    cdef Py_ssize_t n = len(src)
    cdef Py_ssize_t line = 1
    cdef Py_ssize_t line_start = 0
    cdef Py_ssize_t start, j, col, start_line, start_col
    cdef Py_UCS4 ch, nxt, c, quote
    cdef bint closed
    cdef list tokens = []

    while i < n:
        ch = src[i]

        if ch == u" " or ch == u"\t" or ch == u"\r":
            i += 1
            continue
        if ch == u"\n":
            i += 1
            line += 1
            line_start = i
            continue

        if ch == u"/" and i + 1 < n:
            nxt = src[i + 1]
            if nxt == u"/":
                i += 2
                while i < n and src[i] != u"\n":
                    i += 1
                continue
            if nxt == u"*":
                start_line = line
                start_col = i - line_start + 1
                i += 2
                closed = False
                while i < n:
                    c = src[i]
                    if c == u"\n":
                        i += 1
                        line += 1
                        line_start = i
                    elif c == u"*" and i + 1 < n and src[i + 1] == u"/":
                        i += 2
                        closed = True
                        break
                    else:
                        i += 1
                if not closed:
                    raise LexError("unterminated block comment", start_line, start_col)
                continue

        col = i - line_start + 1

        if ch.isalpha() or ch == u"_" or ch == u"$":
            start = i
            i += 1
            while i < n:
                c = src[i]
                if c.isalnum() or c == u"_" or c == u"$":
                    i += 1
                else:
                    break
            tokens.append((K_IDENT, src[start:i], line, col, start, i))
            continue

        if ch.isdigit():
            start = i
            if ch == u"0" and i + 1 < n and (src[i + 1] == u"x" or src[i + 1] == u"X"):
                i += 2
                while i < n:
                    c = src[i]
                    if c.isalnum() or c == u"_":
                        i += 1
                    else:
                        break
            else:
                i += 1
                while i < n and (src[i].isdigit() or src[i] == u"_"):
                    i += 1
                if i + 1 < n and src[i] == u"." and src[i + 1].isdigit():
                    i += 1
                    while i < n and (src[i].isdigit() or src[i] == u"_"):
                        i += 1
                if i < n and (src[i] == u"e" or src[i] == u"E"):
                    j = i + 1
                    if j < n and (src[j] == u"+" or src[j] == u"-"):
                        j += 1
                    if j < n and src[j].isdigit():
                        i = j + 1
                        while i < n and src[i].isdigit():
                            i += 1
            tokens.append((K_NUMBER, src[start:i], line, col, start, i))
            continue

        if ch == u'"' or ch == u"'":
            quote = ch
            start = i
            i += 1
            while True:
                if i >= n or src[i] == u"\n":
                    raise LexError("unterminated string literal", line, col)
                c = src[i]
                if c == u"\\" and i + 1 < n:
                    i += 2
                    continue
                if c == quote:
                    i += 1
                    break
                i += 1
            tokens.append((K_STRING, src[start + 1 : i - 1], line, col, start, i))
            continue

        if i + 4 <= n and src[i : i + 4] in _PUNCTS4:
            tokens.append((K_PUNCT, src[i : i + 4], line, col, i, i + 4))
            i += 4
            continue
        if i + 3 <= n and src[i : i + 3] in _PUNCTS3:
            tokens.append((K_PUNCT, src[i : i + 3], line, col, i, i + 3))
            i += 3
            continue
        if i + 2 <= n and src[i : i + 2] in _PUNCTS2:
            tokens.append((K_PUNCT, src[i : i + 2], line, col, i, i + 2))
            i += 2
            continue
        if _is_single_punct(ch):
            tokens.append((K_PUNCT, src[i : i + 1], line, col, i, i + 1))
            i += 1
            continue

        raise LexError(f"illegal character {chr(ch)!r}", line, col)

    tokens.append((K_EOF, u"", line, n - line_start + 1, n, n))
    return tokens
