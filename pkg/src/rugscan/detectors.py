"""The six rug-pull pattern detectors.

Every detector is a pure function SourceUnit -> list[Finding]; detection keys
on call-expression callees and AST structure, never on raw substrings, so a
user function named "selfdestructAll" is only flagged when it actually invokes
the builtin (inline assembly is the one token-level exception, by design:
assembly-level backdoors are a known evasion).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Optional

from .frontend import nodes as n
from .frontend.versions import Version

# Finding sub_kinds
DIRECT = "direct"
ASSEMBLY = "assembly"
EXTERNAL_TARGET = "external_target"
UNRESTRICTED = "unrestricted"
OWNER_ONLY = "owner_only"


class PatternKind(str, Enum):
    SELF_DESTRUCT = "selfdestruct"
    DELEGATE_CALL = "delegatecall"
    EXTERNAL_CALL_IN_LOOP = "external-call-in-loop"
    PRIVILEGED_MINT_WITHDRAW = "privileged-mint-withdraw"
    TX_ORIGIN_AUTH = "tx-origin-auth"
    DEPRECATED_PRAGMA = "deprecated-pragma"


WEIGHTS: dict[PatternKind, int] = {
    PatternKind.SELF_DESTRUCT: 3,
    PatternKind.DELEGATE_CALL: 3,
    PatternKind.EXTERNAL_CALL_IN_LOOP: 2,
    PatternKind.PRIVILEGED_MINT_WITHDRAW: 2,
    PatternKind.TX_ORIGIN_AUTH: 2,
    PatternKind.DEPRECATED_PRAGMA: 1,
}

_PATTERN_ORDER = {p: i for i, p in enumerate(PatternKind)}

ALL_PATTERNS = frozenset(PatternKind)
HIGH_WEIGHT_PATTERNS = frozenset(p for p, w in WEIGHTS.items() if w == 3)

LOW_LEVEL_MEMBERS = {"call", "delegatecall", "send", "transfer", "staticcall", "callcode"}
BUILTIN_NAMESPACES = {"abi", "type", "string", "bytes"}
ARRAY_MEMBER_BUILTINS = {"push", "pop"}

_MINT_WITHDRAW_RE = re.compile(r"mint|withdraw", re.IGNORECASE)


@dataclass(frozen=True)
class Finding:
    pattern: PatternKind
    contract_name: str
    function_name: str  # empty for file-level findings
    description: str
    span: tuple[int, int]
    evidence: str  # raw source excerpt, <= 200 chars
    sub_kind: str = ""

    def to_record(self) -> dict:
        record = {
            "pattern": self.pattern.value,
            "contract": self.contract_name,
            "function": self.function_name,
            "lines": [self.span[0], self.span[1]],
            "description": self.description,
            "evidence": self.evidence,
            "severity": WEIGHTS[self.pattern],
        }
        if self.sub_kind:
            record["sub_kind"] = self.sub_kind
        return record


@dataclass(frozen=True)
class DetectorConfig:
    enabled: frozenset[PatternKind] = ALL_PATTERNS
    owner_modifiers: tuple[str, ...] = ("onlyOwner", "onlyRole", "onlyAdmin")
    deprecated_below: Version = Version(0, 8, 0)


# --------------------------------------------------------------------------
# shared helpers
# --------------------------------------------------------------------------


def _evidence(unit: n.SourceUnit, line: int) -> str:
    return unit.line_text(line).strip()[:200]


def _display_name(func: n.FunctionDef) -> str:
    return func.name or func.role


def _iter_function_bodies(unit: n.SourceUnit) -> Iterator[tuple[n.ContractDef, str, n.Block]]:
    for contract in unit.contracts:
        for func in contract.functions:
            if func.body is not None:
                yield contract, _display_name(func), func.body
        for mod in contract.modifiers:
            if mod.body is not None:
                yield contract, mod.name, mod.body


def _statements(body: n.Block) -> Iterator[tuple[n.Statement, int]]:
    yield from n.walk_statements(body)


def _all_exprs(stmt: n.Statement) -> Iterator[n.Expr]:
    for expr in n.statement_exprs(stmt):
        yield from n.walk_exprs(expr)


class _UnitIndex:
    """Name tables resolved once per file: in-file types, libraries,
    inheritance closure, constant state variables."""

    def __init__(self, unit: n.SourceUnit):
        self.unit = unit
        self.by_name = {c.name: c for c in unit.contracts}
        self.type_names = set(self.by_name)
        self.library_names = {c.name for c in unit.contracts if c.kind == "library"}
        self.library_function_names = {
            f.name
            for c in unit.contracts
            if c.kind == "library"
            for f in c.functions
            if f.name
        }
        self.constant_names = {
            v.name
            for c in unit.contracts
            for v in c.state_variables
            if v.mutability in ("constant", "immutable")
        }

    def modifier_bodies(self, contract: n.ContractDef) -> dict[str, n.Block]:
        out: dict[str, n.Block] = {}
        for c in reversed(n.inheritance_closure(self.unit, contract)):
            for mod in c.modifiers:
                if mod.body is not None:
                    out[mod.name] = mod.body
        return out


def _unwrap_low_level(call: n.Call) -> Optional[tuple[str, n.Expr, n.Member]]:
    """Resolve the low-level member behind a call, looking through old-style
    ``.gas(x)``/``.value(y)`` adapter chains. Returns (member, base, node) or
    None; callers dedupe on the node since a chain wraps several Call exprs."""
    node: n.Expr = call.callee
    while True:
        if isinstance(node, n.Member):
            if node.member in LOW_LEVEL_MEMBERS:
                return node.member, node.base, node
            if node.member in ("gas", "value"):
                node = node.base
                continue
            return None
        if isinstance(node, n.Call):
            node = node.callee
            continue
        return None


# --------------------------------------------------------------------------
# detectors
# --------------------------------------------------------------------------


def detect_selfdestruct(unit: n.SourceUnit) -> list[Finding]:
    """Calls to the selfdestruct builtin (or its pre-0.5 alias suicide),
    plus assembly blocks carrying the selfdestruct token."""
    findings: list[Finding] = []
    for contract, fn_name, body in _iter_function_bodies(unit):
        for stmt, _ in _statements(body):
            if isinstance(stmt, n.AssemblyBlock):
                if "selfdestruct" in stmt.identifiers or "suicide" in stmt.identifiers:
                    findings.append(
                        Finding(
                            pattern=PatternKind.SELF_DESTRUCT,
                            contract_name=contract.name,
                            function_name=fn_name,
                            description="assembly block invokes selfdestruct",
                            span=stmt.span,
                            evidence=_evidence(unit, stmt.span[0]),
                            sub_kind=ASSEMBLY,
                        )
                    )
                continue
            for expr in _all_exprs(stmt):
                if (
                    isinstance(expr, n.Call)
                    and isinstance(expr.callee, n.Ident)
                    and expr.callee.name in ("selfdestruct", "suicide")
                ):
                    findings.append(
                        Finding(
                            pattern=PatternKind.SELF_DESTRUCT,
                            contract_name=contract.name,
                            function_name=fn_name,
                            description=f"call to {expr.callee.name} terminates the contract and redirects funds",
                            span=(expr.line, expr.line),
                            evidence=_evidence(unit, expr.line),
                            sub_kind=DIRECT,
                        )
                    )
    return findings


def detect_delegatecall(unit: n.SourceUnit) -> list[Finding]:
    """delegatecall usage; external_target when the callee base is not a
    compile-time constant, assembly when hidden in an assembly block."""
    index = _UnitIndex(unit)
    findings: list[Finding] = []
    for contract, fn_name, body in _iter_function_bodies(unit):
        seen_members: set[int] = set()
        for stmt, _ in _statements(body):
            if isinstance(stmt, n.AssemblyBlock):
                if "delegatecall" in stmt.identifiers:
                    findings.append(
                        Finding(
                            pattern=PatternKind.DELEGATE_CALL,
                            contract_name=contract.name,
                            function_name=fn_name,
                            description="assembly block performs delegatecall",
                            span=stmt.span,
                            evidence=_evidence(unit, stmt.span[0]),
                            sub_kind=ASSEMBLY,
                        )
                    )
                continue
            for expr in _all_exprs(stmt):
                if not isinstance(expr, n.Call):
                    continue
                low = _unwrap_low_level(expr)
                if low is None or low[0] != "delegatecall":
                    continue
                if id(low[2]) in seen_members:
                    continue
                seen_members.add(id(low[2]))
                base = low[1]
                constant_base = isinstance(base, n.Ident) and (
                    base.name in index.constant_names or base.name in index.type_names
                )
                findings.append(
                    Finding(
                        pattern=PatternKind.DELEGATE_CALL,
                        contract_name=contract.name,
                        function_name=fn_name,
                        description="delegatecall executes foreign code in this contract's storage context",
                        span=(expr.line, expr.line),
                        evidence=_evidence(unit, expr.line),
                        sub_kind=DIRECT if constant_base else EXTERNAL_TARGET,
                    )
                )
    return findings


def _is_external_callee(call: n.Call, index: _UnitIndex, seen_members: set[int]) -> bool:
    low = _unwrap_low_level(call)
    if low is not None:
        if id(low[2]) in seen_members:
            return False
        seen_members.add(id(low[2]))
        return True
    callee = call.callee
    if not isinstance(callee, n.Member):
        return False  # bare identifier: internal function, cast or builtin
    if callee.member in ARRAY_MEMBER_BUILTINS:
        return False
    if callee.member in index.library_function_names:
        return False  # using-for style library call, e.g. amount.add(fee)
    base = callee.base
    if isinstance(base, n.Ident):
        if base.name in ("this", "super"):
            return False
        if base.name in index.type_names:
            return False  # Library.fn(...) or InFileContract-qualified call
        if base.name in BUILTIN_NAMESPACES:
            return False  # abi.encode..., type(...), string.concat...
    return True


def detect_external_call_in_loop(unit: n.SourceUnit) -> list[Finding]:
    """External calls executed from inside loop bodies (event emissions and
    internal/library calls excluded)."""
    index = _UnitIndex(unit)
    findings: list[Finding] = []
    for contract, fn_name, body in _iter_function_bodies(unit):
        seen_members: set[int] = set()
        for stmt, loop_depth in _statements(body):
            if loop_depth == 0 or isinstance(stmt, (n.EmitStatement, n.AssemblyBlock)):
                continue
            for expr in _all_exprs(stmt):
                if isinstance(expr, n.Call) and _is_external_callee(expr, index, seen_members):
                    findings.append(
                        Finding(
                            pattern=PatternKind.EXTERNAL_CALL_IN_LOOP,
                            contract_name=contract.name,
                            function_name=fn_name,
                            description="external call inside a loop body",
                            span=(expr.line, expr.line),
                            evidence=_evidence(unit, expr.line),
                        )
                    )
    return findings


def _comparison_evidence(
    condition: n.Expr, param_names: set[str]
) -> tuple[bool, bool]:
    """Classify caller checks inside one guard condition.

    Returns (owner_comparison, other_guard):
    owner_comparison - msg.sender/tx.origin compared ==/!= against anything
    that is not a plain function parameter;
    other_guard - caller referenced some other way (mapping lookup, call
    argument), the shape of whitelist/role/merkle checks.
    """
    owner_cmp = False
    compared_nodes: set[int] = set()
    caller_nodes: list[n.GlobalAccess] = []

    for expr in n.walk_exprs(condition):
        if isinstance(expr, n.GlobalAccess) and expr.name in ("msg.sender", "tx.origin"):
            caller_nodes.append(expr)
        if isinstance(expr, n.Binary) and expr.op in ("==", "!="):
            for side, other in ((expr.left, expr.right), (expr.right, expr.left)):
                if isinstance(side, n.GlobalAccess) and side.name in ("msg.sender", "tx.origin"):
                    compared_nodes.add(id(side))
                    if not (isinstance(other, n.Ident) and other.name in param_names):
                        owner_cmp = True

    other_guard = any(id(node) not in compared_nodes for node in caller_nodes)
    return owner_cmp, other_guard


def _guard_conditions(body: n.Block) -> Iterator[n.Expr]:
    for stmt, _ in n.walk_statements(body):
        if isinstance(stmt, n.GuardCall) and stmt.name in ("require", "assert") and stmt.args:
            yield stmt.args[0]
        elif isinstance(stmt, n.IfStatement):
            yield stmt.condition


def detect_privileged_mint_withdraw(
    unit: n.SourceUnit, config: DetectorConfig = DetectorConfig()
) -> list[Finding]:
    """Public mint/withdraw entry points that are either wide open or under
    exclusive owner control. Multi-party guards (whitelists, role sets,
    merkle proofs) are considered legitimate and not flagged. View/pure
    functions (e.g. mintPrice getters) move no funds and are skipped."""
    index = _UnitIndex(unit)
    owner_modifiers = set(config.owner_modifiers)
    findings: list[Finding] = []

    for contract in unit.contracts:
        modifier_bodies = index.modifier_bodies(contract)
        for func in contract.functions:
            if func.body is None or func.role != "function":
                continue
            if func.visibility not in ("public", "external", "default"):
                continue
            if func.mutability in ("view", "pure"):
                continue
            if not _MINT_WITHDRAW_RE.search(func.name):
                continue

            param_names = {p for p in func.parameter_names if p}
            has_owner_modifier = False
            owner_cmp = False
            other_guard = False

            for mod_name, _ in func.modifiers_invoked:
                if mod_name in owner_modifiers:
                    has_owner_modifier = True
                elif mod_name in modifier_bodies:
                    m_owner, m_other = False, False
                    for cond in _guard_conditions(modifier_bodies[mod_name]):
                        c_owner, c_other = _comparison_evidence(cond, set())
                        m_owner |= c_owner
                        m_other |= c_other
                    has_owner_modifier |= m_owner
                    other_guard |= m_other

            for cond in _guard_conditions(func.body):
                c_owner, c_other = _comparison_evidence(cond, param_names)
                owner_cmp |= c_owner
                other_guard |= c_other

            if other_guard:
                continue  # non-trivial guard alongside: not a backdoor shape
            if has_owner_modifier or owner_cmp:
                sub_kind = OWNER_ONLY
                description = f"{func.name} is under exclusive owner control"
            else:
                sub_kind = UNRESTRICTED
                description = f"{func.name} is callable by anyone with no access control"
            findings.append(
                Finding(
                    pattern=PatternKind.PRIVILEGED_MINT_WITHDRAW,
                    contract_name=contract.name,
                    function_name=func.name,
                    description=description,
                    span=func.span,
                    evidence=_evidence(unit, func.span[0]),
                    sub_kind=sub_kind,
                )
            )
    return findings


def detect_tx_origin_auth(unit: n.SourceUnit) -> list[Finding]:
    """tx.origin used for authorization: in require/assert/if conditions, in
    modifier bodies, or compared with ==/!= anywhere. Event arguments and
    plain assignments do not count."""
    findings: list[Finding] = []

    def _origins(expr: n.Expr) -> Iterator[n.GlobalAccess]:
        for node in n.walk_exprs(expr):
            if isinstance(node, n.GlobalAccess) and node.name == "tx.origin":
                yield node

    for contract in unit.contracts:
        occurrences: dict[tuple[int, int], tuple[str, str]] = {}

        def note(node: n.GlobalAccess, fn_name: str, context: str):
            occurrences.setdefault((node.line, node.col), (fn_name, context))

        for func in contract.functions:
            if func.body is None:
                continue
            fn_name = _display_name(func)
            for stmt, _ in n.walk_statements(func.body):
                if isinstance(stmt, n.GuardCall) and stmt.name in ("require", "assert"):
                    for arg in stmt.args:
                        for node in _origins(arg):
                            note(node, fn_name, f"{stmt.name} condition")
                elif isinstance(stmt, n.IfStatement):
                    for node in _origins(stmt.condition):
                        note(node, fn_name, "if condition")
                if isinstance(stmt, n.EmitStatement):
                    continue  # event arguments are not authorization
                for expr in n.statement_exprs(stmt):
                    for node in n.walk_exprs(expr):
                        if isinstance(node, n.Binary) and node.op in ("==", "!="):
                            for side in (node.left, node.right):
                                for origin in _origins(side):
                                    note(origin, fn_name, "comparison")

        for mod in contract.modifiers:
            if mod.body is None:
                continue
            for stmt, _ in n.walk_statements(mod.body):
                for expr in n.statement_exprs(stmt):
                    for node in _origins(expr):
                        note(node, mod.name, "modifier body")

        for (line, col), (fn_name, context) in sorted(occurrences.items()):
            findings.append(
                Finding(
                    pattern=PatternKind.TX_ORIGIN_AUTH,
                    contract_name=contract.name,
                    function_name=fn_name,
                    description=f"tx.origin used for authorization ({context})",
                    span=(line, line),
                    evidence=_evidence(unit, line),
                )
            )
    return findings


def detect_deprecated_pragma(
    unit: n.SourceUnit, config: DetectorConfig = DetectorConfig()
) -> list[Finding]:
    """File-level finding when a solidity pragma admits a compiler older than
    the checked-arithmetic threshold (default 0.8.0)."""
    threshold = config.deprecated_below
    for pragma in unit.pragmas:
        if pragma.kind != "solidity" or pragma.version_range is None:
            continue
        if pragma.version_range.admits_below(threshold):
            return [
                Finding(
                    pattern=PatternKind.DEPRECATED_PRAGMA,
                    contract_name="",
                    function_name="",
                    description=f"pragma {pragma.constraint_text!r} admits compilers below {threshold}",
                    span=pragma.span,
                    evidence=_evidence(unit, pragma.span[0]),
                )
            ]
    return []


_DETECTOR_FUNCS = {
    PatternKind.SELF_DESTRUCT: lambda unit, config: detect_selfdestruct(unit),
    PatternKind.DELEGATE_CALL: lambda unit, config: detect_delegatecall(unit),
    PatternKind.EXTERNAL_CALL_IN_LOOP: lambda unit, config: detect_external_call_in_loop(unit),
    PatternKind.PRIVILEGED_MINT_WITHDRAW: detect_privileged_mint_withdraw,
    PatternKind.TX_ORIGIN_AUTH: lambda unit, config: detect_tx_origin_auth(unit),
    PatternKind.DEPRECATED_PRAGMA: detect_deprecated_pragma,
}


def run_all(unit: n.SourceUnit, config: DetectorConfig = DetectorConfig()) -> list[Finding]:
    """Run every enabled detector; output order is deterministic."""
    findings: list[Finding] = []
    for pattern in PatternKind:
        if pattern in config.enabled:
            findings.extend(_DETECTOR_FUNCS[pattern](unit, config))
    findings.sort(
        key=lambda f: (
            f.contract_name,
            f.span[0],
            _PATTERN_ORDER[f.pattern],
            f.function_name,
            f.sub_kind,
            f.span[1],
        )
    )
    return findings
