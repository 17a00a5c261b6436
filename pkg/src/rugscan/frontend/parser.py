"""Tolerant recursive-descent parser for Solidity 0.4–0.8.

Accepts both old and new dialect spellings (``constant``/``view``,
``throw``/``revert()``, 0.4 constructors named after the contract). File-level
structure must parse; anything exotic inside a function body degrades to an
opaque statement and is counted on the SourceUnit rather than failing the file.
"""

from __future__ import annotations

import re
from typing import Optional

from ..errors import ParseError
from . import nodes as n
from .lexer import tokenize
from .tokens import EOF, IDENT, NUMBER, PUNCT, STRING
from .versions import parse_range

VISIBILITIES = {"public", "external", "internal", "private"}
MUTABILITIES = {"payable", "view", "pure", "constant"}
STORAGE_LOCATIONS = {"memory", "storage", "calldata"}
LITERAL_UNITS = {
    "wei", "gwei", "szabo", "finney", "ether",
    "seconds", "minutes", "hours", "days", "weeks", "years",
}

_INT_RE = re.compile(r"^u?int(\d+)?$")
_BYTES_RE = re.compile(r"^bytes(\d+)?$")
_FIXED_RE = re.compile(r"^u?fixed(\d+x\d+)?$")

ASSIGN_OPS = {"=", "+=", "-=", "*=", "/=", "%=", "|=", "&=", "^=", "<<=", ">>=", ">>>="}

BINARY_LEVELS = [
    ("||",),
    ("&&",),
    ("|",),
    ("^",),
    ("&",),
    ("==", "!="),
    ("<", ">", "<=", ">="),
    ("<<", ">>", ">>>"),
    ("+", "-"),
    ("*", "/", "%"),
]


def is_elementary_type(name: str) -> bool:
    if name in ("address", "bool", "string", "bytes", "byte", "var"):
        return True
    return bool(_INT_RE.match(name) or _BYTES_RE.match(name) or _FIXED_RE.match(name))


def canonical_type(declared: str) -> str:
    """Normalize a declared type text for signatures (uint -> uint256 etc.)."""
    t = declared.strip()
    suffix = ""
    if "[" in t:
        base, suffix = t[: t.index("[")], t[t.index("[") :]
        t = base.strip()
    if t == "address payable":
        t = "address"
    elif t == "uint":
        t = "uint256"
    elif t == "int":
        t = "int256"
    elif t == "byte":
        t = "bytes1"
    return t + suffix.replace(" ", "")


def make_signature(name: str, parameters: list[str]) -> str:
    return f"{name}({','.join(canonical_type(p) for p in parameters)})"


def canonical_signature(func: n.FunctionDef) -> str:
    """Deterministic normalized signature of a parsed function."""
    return make_signature(func.name, func.parameters)


class _Parser:
    def __init__(self, tokens, source: str, file_path: str):
        self.tokens = tokens
        self.source = source
        self.file_path = file_path
        self.pos = 0
        self.opaque_count = 0

    # -- token cursor -------------------------------------------------

    def peek(self, ahead: int = 0):
        i = self.pos + ahead
        return self.tokens[i] if i < len(self.tokens) else self.tokens[-1]

    def at_eof(self) -> bool:
        return self.peek()[0] == EOF

    def advance(self):
        tok = self.tokens[self.pos]
        if tok[0] != EOF:
            self.pos += 1
        return tok

    def at_punct(self, value: str, ahead: int = 0) -> bool:
        tok = self.peek(ahead)
        return tok[0] == PUNCT and tok[1] == value

    def at_ident(self, value: Optional[str] = None, ahead: int = 0) -> bool:
        tok = self.peek(ahead)
        return tok[0] == IDENT and (value is None or tok[1] == value)

    def accept_punct(self, value: str) -> bool:
        if self.at_punct(value):
            self.pos += 1
            return True
        return False

    def expect_punct(self, value: str):
        tok = self.peek()
        if tok[0] != PUNCT or tok[1] != value:
            raise ParseError(f"expected {value!r}, found {tok[1]!r}", tok[2], tok[3])
        self.pos += 1
        return tok

    def expect_ident(self) -> str:
        tok = self.peek()
        if tok[0] != IDENT:
            raise ParseError(f"expected identifier, found {tok[1]!r}", tok[2], tok[3])
        self.pos += 1
        return tok[1]

    def error(self, message: str) -> ParseError:
        tok = self.peek()
        return ParseError(message, tok[2], tok[3])

    # -- generic skipping ----------------------------------------------

    def skip_balanced(self, open_punct: str, close_punct: str) -> tuple[int, int]:
        """Consume from the opening punct through its match; returns byte span."""
        open_tok = self.expect_punct(open_punct)
        depth = 1
        while depth > 0:
            tok = self.advance()
            if tok[0] == EOF:
                raise ParseError(f"unbalanced {open_punct!r}", open_tok[2], open_tok[3])
            if tok[0] == PUNCT:
                if tok[1] == open_punct:
                    depth += 1
                elif tok[1] == close_punct:
                    depth -= 1
        return open_tok[4], self.tokens[self.pos - 1][5]

    def skip_to_semicolon(self):
        """Consume through the next top-level ';' (brackets tracked)."""
        depth = 0
        while True:
            tok = self.peek()
            if tok[0] == EOF:
                raise self.error("unexpected end of file")
            if tok[0] == PUNCT:
                if tok[1] in "([{":
                    depth += 1
                elif tok[1] in ")]}":
                    if depth == 0 and tok[1] == "}":
                        # stop before a closing brace of the enclosing scope
                        return
                    depth -= 1
                elif tok[1] == ";" and depth == 0:
                    self.advance()
                    return
            self.advance()

    def raw_slice(self, start_offset: int, end_offset: int) -> str:
        return self.source[start_offset:end_offset]

    # -- top level -------------------------------------------------------

    def parse_source_unit(self) -> n.SourceUnit:
        pragmas: list[n.PragmaDirective] = []
        imports: list[n.ImportDirective] = []
        contracts: list[n.ContractDef] = []

        while not self.at_eof():
            if self.at_ident("pragma"):
                pragmas.append(self.parse_pragma())
            elif self.at_ident("import"):
                imports.append(self.parse_import())
            elif self.at_ident("contract") or self.at_ident("interface") or self.at_ident("library"):
                contracts.append(self.parse_contract(self.peek()[1]))
            elif self.at_ident("abstract") and self.at_ident("contract", 1):
                self.advance()
                contracts.append(self.parse_contract("abstract_contract"))
            elif self.at_ident("function"):
                self.parse_function("")  # free function: validated, then dropped
            elif self.at_ident() :
                # file-level struct/enum/using/error/constant/type declarations
                self.skip_file_level_item()
            else:
                tok = self.peek()
                raise ParseError(f"unexpected {tok[1]!r} at file level", tok[2], tok[3])

        line_offsets = [0]
        for i, ch in enumerate(self.source):
            if ch == "\n":
                line_offsets.append(i + 1)
        strings = [t[1] for t in self.tokens if t[0] == STRING]

        return n.SourceUnit(
            file_path=self.file_path,
            pragmas=pragmas,
            imports=imports,
            contracts=contracts,
            source=self.source,
            line_offsets=line_offsets,
            string_literals=strings,
            opaque_statement_count=self.opaque_count,
        )

    def skip_file_level_item(self):
        start = self.pos
        head = self.expect_ident()
        if head in ("struct", "enum"):
            if self.at_ident():
                self.advance()
            self.skip_balanced("{", "}")
            return
        self.skip_to_semicolon()
        if self.pos == start + 1 and not self.at_eof():
            tok = self.peek()
            raise ParseError(f"unexpected {tok[1]!r} at file level", tok[2], tok[3])

    def parse_pragma(self) -> n.PragmaDirective:
        kw = self.advance()  # pragma
        name_tok = self.peek()
        name = self.expect_ident()
        # constraint text is the raw source between the pragma name and ';'
        depth = 0
        while not (self.at_punct(";") and depth == 0):
            tok = self.advance()
            if tok[0] == EOF:
                raise ParseError("unterminated pragma", kw[2], kw[3])
            if tok[0] == PUNCT and tok[1] in "([{":
                depth += 1
            elif tok[0] == PUNCT and tok[1] in ")]}":
                depth -= 1
        semi = self.advance()
        constraint = self.raw_slice(name_tok[5], semi[4]).strip()

        version_range = None
        is_exact = False
        if name == "solidity":
            try:
                version_range = parse_range(constraint)
                is_exact = version_range.is_exact_pin
            except ValueError:
                version_range = None
        return n.PragmaDirective(
            kind=name,
            constraint_text=constraint,
            version_range=version_range,
            is_exact_pin=is_exact,
            span=(kw[2], semi[2]),
        )

    def parse_import(self) -> n.ImportDirective:
        kw = self.advance()  # import
        path = None
        depth = 0
        while not (self.at_punct(";") and depth == 0):
            tok = self.advance()
            if tok[0] == EOF:
                raise ParseError("unterminated import", kw[2], kw[3])
            if tok[0] == STRING and path is None:
                path = tok[1]
            elif tok[0] == STRING:
                path = tok[1]  # `import {x} from "path"`: last string wins
            elif tok[0] == PUNCT and tok[1] in "([{":
                depth += 1
            elif tok[0] == PUNCT and tok[1] in ")]}":
                depth -= 1
        semi = self.advance()
        if path is None:
            raise ParseError("import without a path", kw[2], kw[3])
        return n.ImportDirective(path=path, span=(kw[2], semi[2]))

    # -- contracts ---------------------------------------------------------

    def parse_contract(self, kind: str) -> n.ContractDef:
        kw = self.advance()  # contract/interface/library
        name = self.expect_ident()
        bases: list[str] = []
        if self.at_ident("is"):
            self.advance()
            while True:
                base = self.parse_dotted_name()
                if base not in bases:
                    bases.append(base)
                if self.at_punct("("):
                    self.skip_balanced("(", ")")  # base constructor arguments
                if not self.accept_punct(","):
                    break
        self.expect_punct("{")

        functions: list[n.FunctionDef] = []
        modifiers: list[n.ModifierDef] = []
        state_vars: list[n.StateVar] = []

        while not self.at_punct("}"):
            if self.at_eof():
                raise ParseError(f"unterminated contract {name}", kw[2], kw[3])
            self.parse_member(name, functions, modifiers, state_vars)

        close = self.advance()
        return n.ContractDef(
            name=name,
            kind=kind,
            bases=bases,
            functions=functions,
            modifiers=modifiers,
            state_variables=state_vars,
            span=(kw[2], close[2]),
        )

    def parse_dotted_name(self) -> str:
        parts = [self.expect_ident()]
        while self.at_punct(".") and self.at_ident(ahead=1):
            self.advance()
            parts.append(self.expect_ident())
        return ".".join(parts)

    def parse_member(self, contract_name, functions, modifiers, state_vars):
        if self.at_ident("function"):
            functions.append(self.parse_function(contract_name))
            return
        if self.at_ident("constructor") and self.at_punct("(", 1):
            functions.append(self.parse_function(contract_name, role="constructor"))
            return
        if (self.at_ident("fallback") or self.at_ident("receive")) and self.at_punct("(", 1):
            functions.append(self.parse_function(contract_name, role=self.peek()[1]))
            return
        if self.at_ident("modifier"):
            modifiers.append(self.parse_modifier())
            return
        if self.at_ident("event"):
            self.skip_to_semicolon()
            return
        if self.at_ident("using"):
            self.skip_to_semicolon()
            return
        if self.at_ident("error") and self.at_ident(ahead=1) and self.at_punct("(", 2):
            self.skip_to_semicolon()
            return
        if self.at_ident("struct") or self.at_ident("enum"):
            self.advance()
            if self.at_ident():
                self.advance()
            self.skip_balanced("{", "}")
            return
        if self.at_ident("type") and self.at_ident(ahead=1) and self.at_ident("is", 2):
            self.skip_to_semicolon()  # user-defined value types
            return

        var = self.try_state_variable()
        if var is not None:
            state_vars.append(var)
            return

        # unknown member: degrade rather than failing the contract
        self.opaque_count += 1
        if self.at_punct("{"):
            self.skip_balanced("{", "}")
        else:
            self.skip_to_semicolon()
            if self.at_punct("}"):
                return

    def try_state_variable(self) -> Optional[n.StateVar]:
        start = self.pos
        type_text = self.try_parse_type()
        if type_text is None:
            self.pos = start
            return None
        visibility = "default"
        mutability = "mutable"
        while self.at_ident():
            word = self.peek()[1]
            if word in VISIBILITIES:
                visibility = word
                self.advance()
            elif word in ("constant", "immutable"):
                mutability = word
                self.advance()
            elif word == "override":
                self.advance()
                if self.at_punct("("):
                    self.skip_balanced("(", ")")
            elif word in ("transient",):
                self.advance()
            else:
                break
        if not self.at_ident():
            self.pos = start
            return None
        name = self.expect_ident()
        if self.at_punct("="):
            self.skip_to_semicolon()
        elif not self.accept_punct(";"):
            self.pos = start
            return None
        return n.StateVar(name=name, type_text=type_text, visibility=visibility, mutability=mutability)

    # -- types -------------------------------------------------------------

    def try_parse_type(self) -> Optional[str]:
        start = self.pos
        base = self._try_type_base()
        if base is None:
            self.pos = start
            return None
        while self.at_punct("["):
            s, e = self.skip_balanced("[", "]")
            inner = self.raw_slice(s + 1, e - 1).strip()
            base += f"[{inner}]" if inner else "[]"
        return base

    def _try_type_base(self) -> Optional[str]:
        if not self.at_ident():
            return None
        word = self.peek()[1]
        if word == "mapping":
            self.advance()
            if not self.at_punct("("):
                return None
            s, e = self.skip_balanced("(", ")")
            return "mapping" + self.raw_slice(s, e)
        if word == "function":
            # function types are opaque; real function definitions never reach here
            self.advance()
            if not self.at_punct("("):
                return None
            self.skip_balanced("(", ")")
            while self.at_ident() and self.peek()[1] in (VISIBILITIES | MUTABILITIES | {"returns"}):
                kw = self.advance()[1]
                if kw == "returns":
                    if self.at_punct("("):
                        self.skip_balanced("(", ")")
                    break
            return "function"
        if is_elementary_type(word):
            self.advance()
            if word == "address" and self.at_ident("payable"):
                self.advance()
                return "address payable"
            return word
        if word in ("new", "delete", "return", "emit", "if", "for", "while", "do", "require",
                    "assert", "revert", "unchecked", "assembly", "else", "try", "throw",
                    "break", "continue", "true", "false"):
            return None
        return self.parse_dotted_name()

    # -- functions and modifiers -------------------------------------------

    def parse_function(self, contract_name: str, role: str = "function") -> n.FunctionDef:
        kw = self.advance()  # function/constructor/fallback/receive
        name = ""
        if role == "function":
            if self.at_ident():
                name = self.expect_ident()
            if name and name == contract_name:
                role, name = "constructor", ""  # 0.4-style constructor

        parameters, parameter_names = self.parse_parameter_list()

        visibility = "default"
        mutability = "nonpayable"
        invoked: list[tuple[str, str]] = []
        while True:
            if self.at_punct("{") or self.at_punct(";"):
                break
            if self.at_ident():
                word = self.peek()[1]
                if word in VISIBILITIES:
                    visibility = word
                    self.advance()
                    continue
                if word in MUTABILITIES:
                    mutability = "view" if word == "constant" else word
                    self.advance()
                    continue
                if word == "virtual":
                    self.advance()
                    continue
                if word == "override":
                    self.advance()
                    if self.at_punct("("):
                        self.skip_balanced("(", ")")
                    continue
                if word == "returns":
                    self.advance()
                    self.skip_balanced("(", ")")
                    continue
                mod_name = self.parse_dotted_name()
                raw_args = ""
                if self.at_punct("("):
                    s, e = self.skip_balanced("(", ")")
                    raw_args = self.raw_slice(s, e)
                invoked.append((mod_name, raw_args))
                continue
            raise self.error(f"unexpected {self.peek()[1]!r} in function header")

        body = None
        end_line = self.peek()[2]
        if self.at_punct("{"):
            body = self.parse_block()
            end_line = body.span[1]
        else:
            self.expect_punct(";")

        func = n.FunctionDef(
            name=name,
            role=role,
            parameters=parameters,
            parameter_names=parameter_names,
            visibility=visibility,
            mutability=mutability,
            modifiers_invoked=invoked,
            body=body,
            span=(kw[2], end_line),
        )
        func.canonical_signature = make_signature(name, parameters)
        return func

    def parse_parameter_list(self) -> tuple[list[str], list[str]]:
        self.expect_punct("(")
        params: list[str] = []
        names: list[str] = []
        if self.accept_punct(")"):
            return params, names
        while True:
            type_text = self.try_parse_type()
            if type_text is None:
                raise self.error("expected parameter type")
            name = ""
            while self.at_ident():
                word = self.peek()[1]
                if word in STORAGE_LOCATIONS or word == "indexed":
                    self.advance()
                else:
                    name = word
                    self.advance()
                    break
            params.append(type_text)
            names.append(name)
            if self.accept_punct(","):
                continue
            self.expect_punct(")")
            return params, names

    def parse_modifier(self) -> n.ModifierDef:
        kw = self.advance()  # modifier
        name = self.expect_ident()
        parameters: list[str] = []
        if self.at_punct("("):
            parameters, _ = self.parse_parameter_list()
        while self.at_ident() and self.peek()[1] in ("virtual", "override"):
            word = self.advance()[1]
            if word == "override" and self.at_punct("("):
                self.skip_balanced("(", ")")
        body = None
        end_line = self.peek()[2]
        if self.at_punct("{"):
            body = self.parse_block()
            end_line = body.span[1]
        else:
            self.expect_punct(";")
        return n.ModifierDef(name=name, parameters=parameters, body=body, span=(kw[2], end_line))

    # -- statements ----------------------------------------------------------

    def parse_block(self) -> n.Block:
        open_tok = self.expect_punct("{")
        statements: list[n.Statement] = []
        while not self.at_punct("}"):
            if self.at_eof():
                raise ParseError("unterminated block", open_tok[2], open_tok[3])
            start = self.pos
            try:
                statements.append(self.parse_statement())
            except ParseError:
                self.pos = start
                statements.append(self.recover_statement())
        close = self.advance()
        return n.Block(span=(open_tok[2], close[2]), statements=statements)

    def recover_statement(self) -> n.OpaqueStatement:
        first = self.peek()
        self.opaque_count += 1
        if self.at_punct("{"):
            self.skip_balanced("{", "}")
        else:
            self.skip_to_semicolon()
        last = self.tokens[max(self.pos - 1, 0)]
        return n.OpaqueStatement(span=(first[2], last[2]), reason="unparsed construct")

    def parse_statement(self) -> n.Statement:
        tok = self.peek()
        start_line = tok[2]

        if self.at_punct("{"):
            return self.parse_block()

        if tok[0] == IDENT:
            word = tok[1]
            if word == "if":
                return self.parse_if()
            if word == "for":
                return self.parse_for()
            if word == "while":
                return self.parse_while()
            if word == "do":
                return self.parse_do_while()
            if word == "return":
                self.advance()
                value = None if self.at_punct(";") else self.parse_expression()
                end = self.expect_punct(";")
                return n.ReturnStatement(span=(start_line, end[2]), value=value)
            if word == "emit":
                self.advance()
                call = self.parse_expression()
                end = self.expect_punct(";")
                return n.EmitStatement(span=(start_line, end[2]), call=call)
            if word in ("require", "assert") and self.at_punct("(", 1):
                self.advance()
                args = self.parse_call_args()
                end = self.expect_punct(";")
                return n.GuardCall(span=(start_line, end[2]), name=word, args=args)
            if word == "revert":
                self.advance()
                args: list[n.Expr] = []
                if self.at_punct("("):
                    args = self.parse_call_args()
                elif self.at_ident():
                    args = [self.parse_expression()]  # revert CustomError(...)
                end = self.expect_punct(";")
                return n.GuardCall(span=(start_line, end[2]), name="revert", args=args)
            if word == "unchecked" and self.at_punct("{", 1):
                self.advance()
                body = self.parse_block()
                return n.UncheckedBlock(span=(start_line, body.span[1]), body=body)
            if word == "assembly":
                return self.parse_assembly()
            if word in ("break", "continue", "throw"):
                self.advance()
                end = self.expect_punct(";")
                return n.SimpleStatement(span=(start_line, end[2]), keyword=word)
            if word == "_" and self.at_punct(";", 1):
                self.advance()
                end = self.advance()
                return n.SimpleStatement(span=(start_line, end[2]), keyword="_")
            if word == "try":
                return self.skip_try(start_line)

        decl = self.try_var_decl()
        if decl is not None:
            return decl

        expr = self.parse_expression()
        end = self.expect_punct(";")
        return n.ExprStatement(span=(start_line, end[2]), expr=expr)

    def parse_if(self) -> n.IfStatement:
        kw = self.advance()
        self.expect_punct("(")
        condition = self.parse_expression()
        self.expect_punct(")")
        then_branch = self.parse_statement()
        else_branch = None
        end_line = then_branch.span[1]
        if self.at_ident("else"):
            self.advance()
            else_branch = self.parse_statement()
            end_line = else_branch.span[1]
        return n.IfStatement(
            span=(kw[2], end_line), condition=condition, then_branch=then_branch, else_branch=else_branch
        )

    def parse_for(self) -> n.ForStatement:
        kw = self.advance()
        self.expect_punct("(")
        init: Optional[n.Statement] = None
        if not self.accept_punct(";"):
            init = self.try_var_decl()
            if init is None:
                expr = self.parse_expression()
                semi = self.expect_punct(";")
                init = n.ExprStatement(span=(kw[2], semi[2]), expr=expr)
        condition = None if self.at_punct(";") else self.parse_expression()
        self.expect_punct(";")
        update = None if self.at_punct(")") else self.parse_expression()
        self.expect_punct(")")
        body = self.parse_statement()
        return n.ForStatement(
            span=(kw[2], body.span[1]), init=init, condition=condition, update=update, body=body
        )

    def parse_while(self) -> n.WhileStatement:
        kw = self.advance()
        self.expect_punct("(")
        condition = self.parse_expression()
        self.expect_punct(")")
        body = self.parse_statement()
        return n.WhileStatement(span=(kw[2], body.span[1]), condition=condition, body=body)

    def parse_do_while(self) -> n.DoWhileStatement:
        kw = self.advance()
        body = self.parse_statement()
        if not self.at_ident("while"):
            raise self.error("expected 'while' after do-body")
        self.advance()
        self.expect_punct("(")
        condition = self.parse_expression()
        self.expect_punct(")")
        end = self.expect_punct(";")
        return n.DoWhileStatement(span=(kw[2], end[2]), body=body, condition=condition)

    def parse_assembly(self) -> n.AssemblyBlock:
        kw = self.advance()
        if self.peek()[0] == STRING:
            self.advance()  # dialect marker, e.g. "evm"
        if self.at_punct("("):
            self.skip_balanced("(", ")")  # assembly flags
        open_tok = self.peek()
        start_off, end_off = self.skip_balanced("{", "}")
        idents = frozenset(
            t[1] for t in self.tokens if t[0] == IDENT and start_off <= t[4] < end_off
        )
        end_line = self.tokens[self.pos - 1][2]
        return n.AssemblyBlock(
            span=(kw[2], end_line),
            raw=self.raw_slice(start_off, end_off),
            identifiers=idents,
        )

    def skip_try(self, start_line: int) -> n.OpaqueStatement:
        """try/catch degrades to opaque; consume the try expr plus all blocks."""
        self.advance()  # try
        self.opaque_count += 1
        depth = 0
        saw_block = False
        while True:
            tok = self.peek()
            if tok[0] == EOF:
                raise self.error("unterminated try statement")
            if tok[0] == PUNCT and tok[1] == "{":
                depth += 1
            elif tok[0] == PUNCT and tok[1] == "}":
                depth -= 1
                if depth == 0:
                    self.advance()
                    saw_block = True
                    if not self.at_ident("catch") and not self.at_ident("returns"):
                        break
                    continue
            self.advance()
        end_line = self.tokens[self.pos - 1][2]
        if not saw_block:
            raise self.error("malformed try statement")
        return n.OpaqueStatement(span=(start_line, end_line), reason="try statement")

    def try_var_decl(self) -> Optional[n.VarDecl]:
        start = self.pos
        first = self.peek()

        if self.at_punct("("):
            decl = self.try_tuple_decl()
            if decl is not None:
                return decl
            self.pos = start
            return None

        type_text = self.try_parse_type()
        if type_text is None:
            self.pos = start
            return None
        while self.at_ident() and self.peek()[1] in STORAGE_LOCATIONS:
            self.advance()
        if not self.at_ident():
            self.pos = start
            return None
        name_tok = self.peek()
        name = name_tok[1]
        follow = self.peek(1)
        if not (follow[0] == PUNCT and follow[1] in ("=", ";")):
            self.pos = start
            return None
        self.advance()
        value = None
        if self.accept_punct("="):
            value = self.parse_expression()
        end = self.expect_punct(";")
        return n.VarDecl(span=(first[2], end[2]), type_text=type_text, names=[name], value=value)

    def try_tuple_decl(self) -> Optional[n.VarDecl]:
        """Destructuring declaration: (bool ok, ) = target.call(...);"""
        start = self.pos
        first = self.peek()
        self.expect_punct("(")
        names: list[str] = []
        has_decl = False
        depth = 1
        while depth > 0:
            tok = self.peek()
            if tok[0] == EOF:
                self.pos = start
                return None
            if tok[0] == PUNCT and tok[1] == "(":
                depth += 1
            elif tok[0] == PUNCT and tok[1] == ")":
                depth -= 1
            elif tok[0] == PUNCT and tok[1] == ";":
                self.pos = start
                return None
            elif depth == 1 and tok[0] == IDENT:
                nxt = self.peek(1)
                if nxt[0] == IDENT:
                    has_decl = True  # "bool ok" / "uint256 amount"
                elif nxt[0] == PUNCT and nxt[1] in (",", ")"):
                    names.append(tok[1])
            self.advance()
        if not has_decl or not self.at_punct("="):
            self.pos = start
            return None
        self.advance()
        value = self.parse_expression()
        end = self.expect_punct(";")
        return n.VarDecl(span=(first[2], end[2]), type_text="(tuple)", names=names, value=value)

    # -- expressions -----------------------------------------------------

    def parse_expression(self) -> n.Expr:
        expr = self.parse_ternary()
        tok = self.peek()
        if tok[0] == PUNCT and tok[1] in ASSIGN_OPS:
            self.advance()
            value = self.parse_expression()
            return n.Assign(line=expr.line, col=expr.col, op=tok[1], target=expr, value=value)
        return expr

    def parse_ternary(self) -> n.Expr:
        cond = self.parse_binary(0)
        if self.at_punct("?"):
            self.advance()
            if_true = self.parse_expression()
            self.expect_punct(":")
            if_false = self.parse_expression()
            return n.Ternary(line=cond.line, col=cond.col, condition=cond, if_true=if_true, if_false=if_false)
        return cond

    def parse_binary(self, level: int) -> n.Expr:
        if level >= len(BINARY_LEVELS):
            return self.parse_exponent()
        ops = BINARY_LEVELS[level]
        left = self.parse_binary(level + 1)
        while True:
            tok = self.peek()
            if tok[0] == PUNCT and tok[1] in ops:
                # ">" inside generic-free Solidity is always an operator
                self.advance()
                right = self.parse_binary(level + 1)
                left = n.Binary(line=left.line, col=left.col, op=tok[1], left=left, right=right)
            else:
                return left

    def parse_exponent(self) -> n.Expr:
        base = self.parse_unary()
        if self.at_punct("**"):
            self.advance()
            power = self.parse_exponent()  # right associative
            return n.Binary(line=base.line, col=base.col, op="**", left=base, right=power)
        return base

    def parse_unary(self) -> n.Expr:
        tok = self.peek()
        if tok[0] == PUNCT and tok[1] in ("!", "~", "-", "+", "++", "--"):
            self.advance()
            operand = self.parse_unary()
            return n.Unary(line=tok[2], col=tok[3], op=tok[1], operand=operand, prefix=True)
        if tok[0] == IDENT and tok[1] == "delete":
            self.advance()
            operand = self.parse_unary()
            return n.Unary(line=tok[2], col=tok[3], op="delete", operand=operand, prefix=True)
        if tok[0] == IDENT and tok[1] == "new":
            self.advance()
            type_text = self.try_parse_type()
            if type_text is None:
                raise self.error("expected type after 'new'")
            return self.parse_postfix(n.New(line=tok[2], col=tok[3], type_text=type_text))
        return self.parse_postfix(self.parse_primary())

    def parse_postfix(self, expr: n.Expr) -> n.Expr:
        while True:
            tok = self.peek()
            if tok[0] != PUNCT:
                return expr
            if tok[1] == "(":
                args = self.parse_call_args()
                expr = n.Call(line=expr.line, col=expr.col, callee=expr, args=args)
            elif tok[1] == "{" and isinstance(expr, (n.Member, n.GlobalAccess, n.Ident)):
                options = self.parse_call_options()
                if self.at_punct("("):
                    args = self.parse_call_args()
                    expr = n.Call(line=expr.line, col=expr.col, callee=expr, args=args, options=options)
                else:
                    expr = n.Call(line=expr.line, col=expr.col, callee=expr, args=[], options=options)
            elif tok[1] == "[":
                self.advance()
                index = None if self.at_punct("]") else self.parse_expression()
                self.expect_punct("]")
                expr = n.Index(line=expr.line, col=expr.col, base=expr, index=index)
            elif tok[1] == ".":
                if self.peek(1)[0] != IDENT:
                    return expr
                self.advance()
                member = self.expect_ident()
                if isinstance(expr, n.Ident) and expr.name in ("msg", "tx", "block"):
                    expr = n.GlobalAccess(line=expr.line, col=expr.col, name=f"{expr.name}.{member}")
                else:
                    expr = n.Member(line=expr.line, col=expr.col, base=expr, member=member)
            elif tok[1] in ("++", "--"):
                self.advance()
                expr = n.Unary(line=expr.line, col=expr.col, op=tok[1], operand=expr, prefix=False)
            else:
                return expr

    def parse_call_args(self) -> list[n.Expr]:
        self.expect_punct("(")
        args: list[n.Expr] = []
        if self.accept_punct(")"):
            return args
        if self.at_punct("{"):
            args = self.parse_named_args()
            self.expect_punct(")")
            return args
        while True:
            args.append(self.parse_expression())
            if self.accept_punct(","):
                continue
            self.expect_punct(")")
            return args

    def parse_named_args(self) -> list[n.Expr]:
        """`f({a: x, b: y})`: the value expressions, names dropped."""
        self.expect_punct("{")
        args: list[n.Expr] = []
        while not self.accept_punct("}"):
            self.expect_ident()
            self.expect_punct(":")
            args.append(self.parse_expression())
            self.accept_punct(",")
        return args

    def parse_call_options(self) -> list[n.Expr]:
        """`.call{value: v, gas: g}`: the option value expressions."""
        return self.parse_named_args()

    def parse_primary(self) -> n.Expr:
        tok = self.peek()

        if tok[0] == NUMBER:
            self.advance()
            value = tok[1]
            if self.at_ident() and self.peek()[1] in LITERAL_UNITS:
                unit = self.advance()
                value = f"{value} {unit[1]}"
            return n.Literal(line=tok[2], col=tok[3], kind="number", value=value)

        if tok[0] == STRING:
            self.advance()
            value = tok[1]
            while self.peek()[0] == STRING:  # adjacent literal concatenation
                value += self.advance()[1]
            return n.Literal(line=tok[2], col=tok[3], kind="string", value=value)

        if tok[0] == IDENT:
            word = tok[1]
            if word in ("true", "false"):
                self.advance()
                return n.Literal(line=tok[2], col=tok[3], kind="bool", value=word)
            if word in ("hex", "unicode") and self.peek(1)[0] == STRING:
                self.advance()
                lit = self.advance()
                return n.Literal(line=tok[2], col=tok[3], kind="string", value=lit[1])
            self.advance()
            return n.Ident(line=tok[2], col=tok[3], name=word)

        if tok[0] == PUNCT and tok[1] == "(":
            self.advance()
            items: list[Optional[n.Expr]] = []
            expect_item = True
            while not self.at_punct(")"):
                if self.at_punct(","):
                    self.advance()
                    if expect_item:
                        items.append(None)
                    expect_item = True
                    continue
                items.append(self.parse_expression())
                expect_item = False
            close = self.expect_punct(")")
            if len(items) == 1 and items[0] is not None:
                return items[0]
            return n.TupleExpr(line=tok[2], col=tok[3], items=items)

        if tok[0] == PUNCT and tok[1] == "[":
            self.advance()
            items: list[Optional[n.Expr]] = []
            while not self.at_punct("]"):
                items.append(self.parse_expression())
                if not self.accept_punct(","):
                    break
            self.expect_punct("]")
            return n.TupleExpr(line=tok[2], col=tok[3], items=items)

        raise ParseError(f"unexpected {tok[1]!r} in expression", tok[2], tok[3])


def parse(source: str, file_path: str = "<string>") -> n.SourceUnit:
    """Parse Solidity source into a SourceUnit.

    Raises LexError/ParseError when file-level structure is unrecoverable;
    unparseable statements inside bodies degrade to opaque nodes instead.
    """
    tokens = tokenize(source)
    return _Parser(tokens, source, file_path).parse_source_unit()
