"""Translate a MiniLang program into a Python closure factory.

Each MiniLang function becomes a nested Python function sharing one
``nonlocal`` step budget.  Calling the factory yields a fresh function table
with a fresh budget, so concurrent runs never share mutable state.  Step
charges are identical to the reference interpreter.
"""

from __future__ import annotations

from functools import lru_cache

from .ast import (
    Assign, Binary, Block, Call, ExprStmt, If, Num, Program, Return, Ternary,
    Unary, Var, While, statement_cost,
)
from .semantics import (
    MAX_CALL_DEPTH, MiniRuntimeError, StepLimitExceeded, div, mod, wrap,
)

_OFFSET = 1 << 63
_MASK = (1 << 64) - 1


def _wrapped(code: str) -> str:
    return f"((({code}) + {_OFFSET} & {_MASK}) - {_OFFSET})"


def _expr(e) -> str:
    match e:
        case Num():
            return f"({wrap(e.value)})"
        case Var():
            return f"v_{e.name}"
        case Unary():
            inner = _expr(e.operand)
            return _wrapped(f"-{inner}") if e.op == "-" else f"(0 if {_cond(e.operand)} else 1)"
        case Ternary():
            return f"({_expr(e.then)} if {_cond(e.cond)} else {_expr(e.other)})"
        case Call():
            args = "".join(f", {_expr(a)}" for a in e.args)
            return f"F_{e.name}(_d + 1{args})"
        case Binary():
            a, b = _expr(e.left), _expr(e.right)
            match e.op:
                case "&&" | "||":
                    return f"(1 if {_cond(e)} else 0)"
                case "+" | "-" | "*":
                    return _wrapped(f"{a} {e.op} {b}")
                case "/":
                    return f"_div({a}, {b})"
                case "%":
                    return f"_mod({a}, {b})"
                case _:
                    return f"(1 if {_cond(e)} else 0)"
    raise TypeError(f"not an expression: {e!r}")


def _cond(e) -> str:
    """Truth-valued code for ``e`` in a branch position (skips the 0/1 boxing)."""
    if isinstance(e, Binary):
        match e.op:
            case "&&":
                return f"({_cond(e.left)} and {_cond(e.right)})"
            case "||":
                return f"({_cond(e.left)} or {_cond(e.right)})"
            case "<" | "<=" | ">" | ">=" | "==" | "!=":
                return f"({_expr(e.left)} {e.op} {_expr(e.right)})"
    if isinstance(e, Unary) and e.op == "!":
        return f"(not {_cond(e.operand)})"
    return _expr(e)


class _Emitter:
    def __init__(self):
        self.lines: list[str] = []

    def emit(self, depth: int, line: str) -> None:
        self.lines.append("    " * depth + line)

    def charge(self, depth: int, stmt) -> None:
        self.emit(depth, f"steps -= {statement_cost(stmt)}")
        self.emit(depth, "if steps < 0: raise _Steps()")

    def block(self, block: Block, depth: int) -> None:
        if not block.body:
            self.emit(depth, "pass")
        for stmt in block.body:
            self.stmt(stmt, depth)

    def stmt(self, s, depth: int) -> None:
        if isinstance(s, While):
            self.emit(depth, "while True:")
            self.charge(depth + 1, s)
            self.emit(depth + 1, f"if not {_cond(s.cond)}: break")
            self.block(s.body, depth + 1)
            return
        self.charge(depth, s)
        match s:
            case Assign():
                self.emit(depth, f"v_{s.name} = {_expr(s.value)}")
            case ExprStmt():
                self.emit(depth, _expr(s.expr))
            case Return():
                self.emit(depth, f"return {_expr(s.value)}")
            case If():
                self.emit(depth, f"if {_cond(s.cond)}:")
                self.block(s.then, depth + 1)
                if s.other is not None:
                    self.emit(depth, "else:")
                    if isinstance(s.other, If):
                        self.stmt(s.other, depth + 1)
                    else:
                        self.block(s.other, depth + 1)


def to_python(program: Program) -> str:
    out = _Emitter()
    out.emit(0, "def _factory(steps):")
    for fn in program.functions:
        params = "".join(f", v_{p}" for p in fn.params)
        out.emit(1, f"def F_{fn.name}(_d{params}):")
        out.emit(2, "nonlocal steps")
        out.emit(2, f"if _d > {MAX_CALL_DEPTH}: raise _Fault('call depth exceeded')")
        out.block(fn.body, 2)
        out.emit(2, "return 0")
    table = ", ".join(f"{fn.name!r}: F_{fn.name}" for fn in program.functions)
    out.emit(1, f"return {{{table}}}")
    return "\n".join(out.lines) + "\n"


@lru_cache(maxsize=512)
def _factory_for(python_source: str):
    namespace = {
        "_Steps": StepLimitExceeded, "_Fault": MiniRuntimeError,
        "_div": div, "_mod": mod,
    }
    exec(compile(python_source, "<minilang>", "exec"), namespace)
    return namespace["_factory"]


def compile_program(program: Program):
    """Return ``factory(step_limit) -> {name: callable}``; callables take the
    call depth (1 for entry) followed by the integer arguments."""
    return _factory_for(to_python(program))


def call_compiled(factory, arity: dict[str, int], function: str,
                  args: list[int], step_limit: int) -> int:
    """Run one entry call on a fresh function table from ``factory``."""
    if function not in arity:
        raise MiniRuntimeError(f"unknown function {function!r}")
    if arity[function] != len(args):
        raise MiniRuntimeError(f"{function!r} expects {arity[function]} arguments")
    table = factory(step_limit)
    try:
        return table[function](1, *(wrap(a) for a in args))
    except UnboundLocalError as exc:
        raise MiniRuntimeError(str(exc)) from exc


def run_compiled(program: Program, function: str, args: list[int], step_limit: int) -> int:
    arity = {fn.name: len(fn.params) for fn in program.functions}
    return call_compiled(compile_program(program), arity, function, args, step_limit)
