"""MiniLang syntax tree.

Every node records ``lo``/``hi``: the half-open token-index range it covers in
the program's token stream.  Parentheses are not nodes; a parenthesised
expression keeps the range of its inner expression.  Ranges are excluded from
equality so two parses of differently formatted text compare equal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional, Union

RELATIONAL = ("<", "<=", ">", ">=")
EQUALITY = ("==", "!=")
COMPARISON = RELATIONAL + EQUALITY
ARITHMETIC = ("+", "-", "*", "/", "%")
LOGICAL = ("&&", "||")


def _range():
    return field(default=0, compare=False, repr=False)


@dataclass
class Num:
    value: int
    lo: int = _range()
    hi: int = _range()


@dataclass
class Var:
    name: str
    lo: int = _range()
    hi: int = _range()


@dataclass
class Unary:
    op: str
    operand: "Expr"
    lo: int = _range()
    hi: int = _range()


@dataclass
class Binary:
    op: str
    left: "Expr"
    right: "Expr"
    op_index: int = _range()
    lo: int = _range()
    hi: int = _range()


@dataclass
class Ternary:
    cond: "Expr"
    then: "Expr"
    other: "Expr"
    lo: int = _range()
    hi: int = _range()


@dataclass
class Call:
    name: str
    args: list["Expr"]
    lo: int = _range()
    hi: int = _range()


Expr = Union[Num, Var, Unary, Binary, Ternary, Call]


@dataclass
class Block:
    body: list["Stmt"]
    lo: int = _range()
    hi: int = _range()


@dataclass
class Assign:
    name: str
    value: Expr
    lo: int = _range()
    hi: int = _range()


@dataclass
class ExprStmt:
    expr: Expr
    lo: int = _range()
    hi: int = _range()


@dataclass
class If:
    cond: Expr
    then: Block
    other: Optional[Union[Block, "If"]] = None
    else_index: int = _range()
    lo: int = _range()
    hi: int = _range()


@dataclass
class While:
    cond: Expr
    body: Block
    lo: int = _range()
    hi: int = _range()


@dataclass
class Return:
    value: Expr
    lo: int = _range()
    hi: int = _range()


Stmt = Union[Assign, ExprStmt, If, While, Return]


@dataclass
class FunctionDecl:
    name: str
    params: list[str]
    body: Block
    lo: int = _range()
    hi: int = _range()


@dataclass
class Program:
    functions: list[FunctionDecl]
    source_text: str = field(default="", compare=False, repr=False)
    tokens: object = field(default=None, compare=False, repr=False)

    def function(self, name: str) -> FunctionDecl:
        for fn in self.functions:
            if fn.name == name:
                return fn
        raise KeyError(name)

    @property
    def function_names(self) -> list[str]:
        return [fn.name for fn in self.functions]


# -- traversal helpers ------------------------------------------------------

def child_exprs(expr: Expr) -> list[Expr]:
    match expr:
        case Unary():
            return [expr.operand]
        case Binary():
            return [expr.left, expr.right]
        case Ternary():
            return [expr.cond, expr.then, expr.other]
        case Call():
            return list(expr.args)
    return []


def walk_expr(expr: Expr) -> Iterator[Expr]:
    """Pre-order traversal of an expression tree."""
    yield expr
    for child in child_exprs(expr):
        yield from walk_expr(child)


def own_exprs(stmt: Stmt) -> list[Expr]:
    """Expressions that belong to ``stmt`` itself, not to nested statements."""
    match stmt:
        case Assign():
            return [stmt.value]
        case ExprStmt():
            return [stmt.expr]
        case Return():
            return [stmt.value]
        case If() | While():
            return [stmt.cond]
    return []


def nested_statements(stmt: Stmt) -> list[Stmt]:
    match stmt:
        case If():
            inner = list(stmt.then.body)
            if isinstance(stmt.other, Block):
                inner += stmt.other.body
            elif isinstance(stmt.other, If):
                inner.append(stmt.other)
            return inner
        case While():
            return list(stmt.body.body)
    return []


def walk_statements(stmts: list[Stmt]) -> Iterator[Stmt]:
    """Pre-order over statements; this order defines statement indices."""
    for stmt in stmts:
        yield stmt
        yield from walk_statements(nested_statements(stmt))


def function_statements(fn: FunctionDecl) -> list[Stmt]:
    return list(walk_statements(fn.body.body))


def node_count(expr: Expr) -> int:
    return sum(1 for _ in walk_expr(expr))


def statement_cost(stmt: Stmt) -> int:
    """Interpreter steps charged each time ``stmt`` (or a loop condition) runs:
    one for the statement plus one per expression node it owns."""
    return 1 + sum(node_count(e) for e in own_exprs(stmt))


def branch_conditions(program: Program) -> Iterator[tuple[FunctionDecl, Expr]]:
    """Conditions of ``if``, ``while`` and ternary expressions, in source order."""
    found = []
    for fn in program.functions:
        for stmt in function_statements(fn):
            if isinstance(stmt, (If, While)):
                found.append((fn, stmt.cond))
            for e in own_exprs(stmt):
                for sub in walk_expr(e):
                    if isinstance(sub, Ternary):
                        found.append((fn, sub.cond))
    found.sort(key=lambda pair: pair[1].lo)
    return iter(found)
