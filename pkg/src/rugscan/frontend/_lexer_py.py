"""Pure-Python Solidity scanner.

Reference implementation of the token stream contract described in
``tokens``. The compiled twin in ``_lexer.pyx`` must stay behaviourally
identical line for line; change both together (test_lexer_parity guards this).
"""

from ..errors import LexError
from .tokens import EOF, IDENT, NUMBER, PUNCT, PUNCTS2, PUNCTS3, PUNCTS4, STRING


def scan(source: str):
    """Tokenize Solidity source, discarding comments and whitespace.

    Returns a list of 6-tuples ending with an EOF token. Raises LexError on
    unterminated strings/comments and characters outside the language.
    """
    tokens = []
    i = 0
    n = len(source)
    line = 1
    line_start = 0

    while i < n:
        ch = source[i]

        if ch == " " or ch == "\t" or ch == "\r":
            i += 1
            continue
        if ch == "\n":
            i += 1
            line += 1
            line_start = i
            continue

        if ch == "/" and i + 1 < n:
            nxt = source[i + 1]
            if nxt == "/":
                i += 2
                while i < n and source[i] != "\n":
                    i += 1
                continue
            if nxt == "*":
                start_line = line
                start_col = i - line_start + 1
                i += 2
                closed = False
                while i < n:
                    c = source[i]
                    if c == "\n":
                        i += 1
                        line += 1
                        line_start = i
                    elif c == "*" and i + 1 < n and source[i + 1] == "/":
                        i += 2
                        closed = True
                        break
                    else:
                        i += 1
                if not closed:
                    raise LexError("unterminated block comment", start_line, start_col)
                continue

        col = i - line_start + 1

        if ch.isalpha() or ch == "_" or ch == "$":
            start = i
            i += 1
            while i < n:
                c = source[i]
                if c.isalnum() or c == "_" or c == "$":
                    i += 1
                else:
                    break
            tokens.append((IDENT, source[start:i], line, col, start, i))
            continue

        if ch.isdigit():
            start = i
            if ch == "0" and i + 1 < n and (source[i + 1] == "x" or source[i + 1] == "X"):
                i += 2
                while i < n:
                    c = source[i]
                    if c.isalnum() or c == "_":
                        i += 1
                    else:
                        break
            else:
                i += 1
                while i < n and (source[i].isdigit() or source[i] == "_"):
                    i += 1
                if i + 1 < n and source[i] == "." and source[i + 1].isdigit():
                    i += 1
                    while i < n and (source[i].isdigit() or source[i] == "_"):
                        i += 1
                if i < n and (source[i] == "e" or source[i] == "E"):
                    j = i + 1
                    if j < n and (source[j] == "+" or source[j] == "-"):
                        j += 1
                    if j < n and source[j].isdigit():
                        i = j + 1
                        while i < n and source[i].isdigit():
                            i += 1
            tokens.append((NUMBER, source[start:i], line, col, start, i))
            continue

        if ch == '"' or ch == "'":
            quote = ch
            start = i
            i += 1
            while True:
                if i >= n or source[i] == "\n":
                    raise LexError("unterminated string literal", line, col)
                c = source[i]
                if c == "\\" and i + 1 < n:
                    i += 2
                    continue
                if c == quote:
                    i += 1
                    break
                i += 1
            tokens.append((STRING, source[start + 1 : i - 1], line, col, start, i))
            continue

        if i + 4 <= n and source[i : i + 4] in PUNCTS4:
            tokens.append((PUNCT, source[i : i + 4], line, col, i, i + 4))
            i += 4
            continue
        if i + 3 <= n and source[i : i + 3] in PUNCTS3:
            tokens.append((PUNCT, source[i : i + 3], line, col, i, i + 3))
            i += 3
            continue
        if i + 2 <= n and source[i : i + 2] in PUNCTS2:
            tokens.append((PUNCT, source[i : i + 2], line, col, i, i + 2))
            i += 2
            continue
        if ch in "+-*/%<>=!&|^~?:;,.(){}[]":
            tokens.append((PUNCT, ch, line, col, i, i + 1))
            i += 1
            continue

        raise LexError(f"illegal character {ch!r}", line, col)

    tokens.append((EOF, "", line, n - line_start + 1, n, n))
    return tokens
