"""AST node types for the Solidity subset the analyzers consume.

The tree is intentionally shallow: declarations, statements, calls, member
access and loops are faithful; constructs the detectors never inspect
(events, structs, try/catch bodies) degrade to opaque nodes with spans.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .versions import VersionRange

Span = tuple[int, int]


# --------------------------------------------------------------------------
# Expressions
# --------------------------------------------------------------------------


@dataclass
class Expr:
    line: int
    col: int


@dataclass
class Ident(Expr):
    name: str


@dataclass
class Member(Expr):
    base: Expr
    member: str


@dataclass
class GlobalAccess(Expr):
    """Distinguished builtin globals: msg.sender, msg.value, tx.origin, block.*."""

    name: str


@dataclass
class Call(Expr):
    callee: Expr
    args: list[Expr]
    options: list[Expr] = field(default_factory=list)  # {value: ..., gas: ...}


@dataclass
class Index(Expr):
    base: Expr
    index: Optional[Expr]


@dataclass
class Literal(Expr):
    kind: str  # number | string | bool
    value: str


@dataclass
class Unary(Expr):
    op: str
    operand: Expr
    prefix: bool = True


@dataclass
class Binary(Expr):
    op: str
    left: Expr
    right: Expr


@dataclass
class Assign(Expr):
    op: str
    target: Expr
    value: Expr


@dataclass
class Ternary(Expr):
    condition: Expr
    if_true: Expr
    if_false: Expr


@dataclass
class TupleExpr(Expr):
    items: list[Optional[Expr]]


@dataclass
class New(Expr):
    type_text: str


# --------------------------------------------------------------------------
# Statements
# --------------------------------------------------------------------------


@dataclass
class Statement:
    span: Span


@dataclass
class Block(Statement):
    statements: list[Statement] = field(default_factory=list)


@dataclass
class ExprStatement(Statement):
    expr: Expr


@dataclass
class VarDecl(Statement):
    type_text: str
    names: list[str]
    value: Optional[Expr]


@dataclass
class IfStatement(Statement):
    condition: Expr
    then_branch: Statement
    else_branch: Optional[Statement]


@dataclass
class ForStatement(Statement):
    init: Optional[Statement]
    condition: Optional[Expr]
    update: Optional[Expr]
    body: Statement


@dataclass
class WhileStatement(Statement):
    condition: Expr
    body: Statement


@dataclass
class DoWhileStatement(Statement):
    body: Statement
    condition: Expr


@dataclass
class ReturnStatement(Statement):
    value: Optional[Expr]


@dataclass
class EmitStatement(Statement):
    call: Expr


@dataclass
class GuardCall(Statement):
    """require/assert/revert statement; args[0] is the condition for require/assert."""

    name: str
    args: list[Expr]


@dataclass
class UncheckedBlock(Statement):
    body: Block


@dataclass
class AssemblyBlock(Statement):
    """Opaque inline assembly; identifiers holds every token-level name inside."""

    raw: str
    identifiers: frozenset[str]


@dataclass
class SimpleStatement(Statement):
    keyword: str  # break | continue | throw | _


@dataclass
class OpaqueStatement(Statement):
    """Recovery node for constructs the grammar subset does not model."""

    reason: str = ""


# --------------------------------------------------------------------------
# Declarations
# --------------------------------------------------------------------------


@dataclass
class PragmaDirective:
    kind: str  # solidity | experimental | abicoder | other raw name
    constraint_text: str
    version_range: Optional[VersionRange]
    is_exact_pin: bool
    span: Span


@dataclass
class ImportDirective:
    path: str
    span: Span

    @property
    def is_relative(self) -> bool:
        return self.path.startswith("./") or self.path.startswith("../")


@dataclass
class StateVar:
    name: str
    type_text: str
    visibility: str  # public | internal | private | default
    mutability: str  # constant | immutable | mutable


@dataclass
class FunctionDef:
    name: str  # empty for constructor/fallback/receive
    role: str  # function | constructor | fallback | receive
    parameters: list[str]  # declared type texts
    parameter_names: list[str]  # "" for unnamed parameters
    visibility: str  # public | external | internal | private | default
    mutability: str  # payable | view | pure | nonpayable
    modifiers_invoked: list[tuple[str, str]]  # (name, raw argument text or "")
    body: Optional[Block]
    span: Span
    canonical_signature: str = ""

    def has_modifier(self, name: str) -> bool:
        return any(m == name for m, _ in self.modifiers_invoked)


@dataclass
class ModifierDef:
    name: str
    parameters: list[str]
    body: Optional[Block]
    span: Span


@dataclass
class ContractDef:
    name: str
    kind: str  # contract | abstract_contract | interface | library
    bases: list[str]
    functions: list[FunctionDef]
    modifiers: list[ModifierDef]
    state_variables: list[StateVar]
    span: Span

    @property
    def is_concrete(self) -> bool:
        return self.kind in ("contract", "library")


@dataclass
class SourceUnit:
    file_path: str
    pragmas: list[PragmaDirective]
    imports: list[ImportDirective]
    contracts: list[ContractDef]
    source: str
    line_offsets: list[int]
    string_literals: list[str]
    opaque_statement_count: int = 0

    def line_at(self, offset: int) -> int:
        """1-based line containing the byte offset."""
        return bisect_right(self.line_offsets, offset)

    def line_text(self, lineno: int) -> str:
        start = self.line_offsets[lineno - 1]
        end = self.line_offsets[lineno] - 1 if lineno < len(self.line_offsets) else len(self.source)
        return self.source[start:end]

    def contract_names(self) -> set[str]:
        return {c.name for c in self.contracts}


def inheritance_closure(unit: SourceUnit, contract: ContractDef) -> list[ContractDef]:
    """The contract plus its transitive in-file bases (deployment view)."""
    by_name = {c.name: c for c in unit.contracts}
    closure: list[ContractDef] = []
    stack = [contract.name]
    visited: set[str] = set()
    while stack:
        name = stack.pop()
        if name in visited or name not in by_name:
            continue
        visited.add(name)
        c = by_name[name]
        closure.append(c)
        stack.extend(c.bases)
    return closure


# --------------------------------------------------------------------------
# Walkers
# --------------------------------------------------------------------------


def statement_children(stmt: Statement) -> list[Statement]:
    if isinstance(stmt, Block):
        return list(stmt.statements)
    if isinstance(stmt, IfStatement):
        out = [stmt.then_branch]
        if stmt.else_branch is not None:
            out.append(stmt.else_branch)
        return out
    if isinstance(stmt, ForStatement):
        out = [stmt.init] if stmt.init is not None else []
        out.append(stmt.body)
        return out
    if isinstance(stmt, (WhileStatement,)):
        return [stmt.body]
    if isinstance(stmt, DoWhileStatement):
        return [stmt.body]
    if isinstance(stmt, UncheckedBlock):
        return [stmt.body]
    return []


def statement_exprs(stmt: Statement) -> list[Expr]:
    """Expressions attached directly to this statement (children excluded)."""
    if isinstance(stmt, ExprStatement):
        return [stmt.expr]
    if isinstance(stmt, VarDecl):
        return [stmt.value] if stmt.value is not None else []
    if isinstance(stmt, IfStatement):
        return [stmt.condition]
    if isinstance(stmt, ForStatement):
        out = []
        if stmt.condition is not None:
            out.append(stmt.condition)
        if stmt.update is not None:
            out.append(stmt.update)
        return out
    if isinstance(stmt, (WhileStatement, DoWhileStatement)):
        return [stmt.condition]
    if isinstance(stmt, ReturnStatement):
        return [stmt.value] if stmt.value is not None else []
    if isinstance(stmt, EmitStatement):
        return [stmt.call]
    if isinstance(stmt, GuardCall):
        return list(stmt.args)
    return []


def walk_statements(root: Statement, loop_depth: int = 0) -> Iterator[tuple[Statement, int]]:
    """Yield (statement, loop_depth) in source order.

    loop_depth counts enclosing loop bodies, so "inside a loop" is depth > 0.
    """
    yield root, loop_depth
    is_loop = isinstance(root, (ForStatement, WhileStatement, DoWhileStatement))
    for child in statement_children(root):
        inside = loop_depth
        if is_loop:
            # only the loop body nests; a for-init runs once
            body = root.body  # type: ignore[attr-defined]
            inside = loop_depth + 1 if child is body else loop_depth
        yield from walk_statements(child, inside)


def expr_children(expr: Expr) -> list[Expr]:
    if isinstance(expr, Member):
        return [expr.base]
    if isinstance(expr, Call):
        return [expr.callee, *expr.args, *expr.options]
    if isinstance(expr, Index):
        return [expr.base] + ([expr.index] if expr.index is not None else [])
    if isinstance(expr, Unary):
        return [expr.operand]
    if isinstance(expr, Binary):
        return [expr.left, expr.right]
    if isinstance(expr, Assign):
        return [expr.target, expr.value]
    if isinstance(expr, Ternary):
        return [expr.condition, expr.if_true, expr.if_false]
    if isinstance(expr, TupleExpr):
        return [item for item in expr.items if item is not None]
    return []


def walk_exprs(expr: Expr) -> Iterator[Expr]:
    yield expr
    for child in expr_children(expr):
        yield from walk_exprs(child)
