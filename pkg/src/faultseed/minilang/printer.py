"""Canonical pretty-printer; ``parse(format_program(p)) == p`` structurally."""

from __future__ import annotations

from .ast import (
    Assign, Binary, Block, Call, ExprStmt, If, Num, Program, Return, Ternary,
    Unary, Var, While,
)

_PREC = {
    "||": 2, "&&": 3,
    "==": 4, "!=": 4,
    "<": 5, "<=": 5, ">": 5, ">=": 5,
    "+": 6, "-": 6,
    "*": 7, "/": 7, "%": 7,
}
_TERNARY, _UNARY, _ATOM = 1, 8, 9


def _prec(expr) -> int:
    if isinstance(expr, Ternary):
        return _TERNARY
    if isinstance(expr, Binary):
        return _PREC[expr.op]
    if isinstance(expr, Unary):
        return _UNARY
    return _ATOM


def _wrap(expr, minimum: int) -> str:
    text = format_expr(expr)
    return f"({text})" if _prec(expr) < minimum else text


def format_expr(expr) -> str:
    match expr:
        case Num():
            return str(expr.value)
        case Var():
            return expr.name
        case Call():
            return f"{expr.name}({', '.join(format_expr(a) for a in expr.args)})"
        case Unary():
            inner = _wrap(expr.operand, _UNARY)
            # keep "- -x" from printing as a single token pair "--x"
            sep = " " if inner.startswith(("-", "!")) else ""
            return f"{expr.op}{sep}{inner}"
        case Binary():
            p = _PREC[expr.op]
            return f"{_wrap(expr.left, p)} {expr.op} {_wrap(expr.right, p + 1)}"
        case Ternary():
            return (f"{_wrap(expr.cond, _TERNARY + 1)} ? {format_expr(expr.then)}"
                    f" : {format_expr(expr.other)}")
    raise TypeError(f"not an expression: {expr!r}")


def _format_block(block: Block, depth: int) -> list[str]:
    lines = []
    for stmt in block.body:
        lines.extend(_format_stmt(stmt, depth))
    return lines


def _format_if(stmt: If, depth: int, pad: str) -> list[str]:
    lines = [f"if ({format_expr(stmt.cond)}) {{"]
    lines += _format_block(stmt.then, depth + 1)
    if stmt.other is None:
        lines.append(pad + "}")
    elif isinstance(stmt.other, If):
        nested = _format_if(stmt.other, depth, pad)
        lines.append(pad + "} else " + nested[0])
        lines += nested[1:]
    else:
        lines.append(pad + "} else {")
        lines += _format_block(stmt.other, depth + 1)
        lines.append(pad + "}")
    return lines


def _format_stmt(stmt, depth: int) -> list[str]:
    pad = "    " * depth
    match stmt:
        case Assign():
            return [f"{pad}{stmt.name} = {format_expr(stmt.value)};"]
        case ExprStmt():
            return [f"{pad}{format_expr(stmt.expr)};"]
        case Return():
            return [f"{pad}return {format_expr(stmt.value)};"]
        case While():
            return ([f"{pad}while ({format_expr(stmt.cond)}) {{"]
                    + _format_block(stmt.body, depth + 1) + [pad + "}"])
        case If():
            lines = _format_if(stmt, depth, pad)
            lines[0] = pad + lines[0]
            return lines
    raise TypeError(f"not a statement: {stmt!r}")


def format_program(program: Program) -> str:
    chunks = []
    for fn in program.functions:
        lines = [f"fn {fn.name}({', '.join(fn.params)}) {{"]
        lines += _format_block(fn.body, 1)
        lines.append("}")
        chunks.append("\n".join(lines))
    return "\n\n".join(chunks) + "\n"
