"""Token kinds and shared lexer tables.

A token is a plain 6-tuple ``(kind, value, line, col, start, end)`` where
``line``/``col`` are 1-based and ``start``/``end`` are byte offsets into the
source (half-open). Both lexer implementations must emit identical streams;
keep this module dependency-free so the compiled twin can import it cheaply.
"""

IDENT = 1
NUMBER = 2
STRING = 3
PUNCT = 4
EOF = 5

# Longest-match-first operator tables. `:=` and `->` appear inside assembly.
PUNCTS4 = (">>>=",)
PUNCTS3 = (">>>", ">>=", "<<=")
PUNCTS2 = (
    "<<", ">>", "<=", ">=", "==", "!=", "&&", "||",
    "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=",
    "++", "--", "**", "->", "=>", ":=",
)
PUNCTS1 = "+-*/%<>=!&|^~?:;,.(){}[]"

KIND_NAMES = {IDENT: "ident", NUMBER: "number", STRING: "string", PUNCT: "punct", EOF: "eof"}
