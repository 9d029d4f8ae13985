"""Reference tree-walking interpreter.

Slow but direct; the harness uses the compiled path in ``compiler`` and the
test-suite checks both agree, step accounting included.
"""

from __future__ import annotations

import sys

from .ast import (
    Assign, Binary, Block, Call, ExprStmt, If, Num, Program, Return, Ternary,
    Unary, Var, While, statement_cost,
)
from .semantics import (
    MAX_CALL_DEPTH, MiniRuntimeError, StepLimitExceeded, div, mod, wrap,
)

_COMPARE = {
    "<": lambda a, b: a < b, "<=": lambda a, b: a <= b,
    ">": lambda a, b: a > b, ">=": lambda a, b: a >= b,
    "==": lambda a, b: a == b, "!=": lambda a, b: a != b,
}


class _Returned(Exception):
    def __init__(self, value: int):
        self.value = value


class Interpreter:
    def __init__(self, program: Program, step_limit: int):
        self.functions = {fn.name: fn for fn in program.functions}
        self.steps = step_limit

    def _charge(self, stmt) -> None:
        self.steps -= statement_cost(stmt)
        if self.steps < 0:
            raise StepLimitExceeded()

    def call(self, name: str, args: list[int], depth: int = 1) -> int:
        fn = self.functions.get(name)
        if fn is None:
            raise MiniRuntimeError(f"unknown function {name!r}")
        if len(args) != len(fn.params):
            raise MiniRuntimeError(f"{name!r} expects {len(fn.params)} arguments")
        if depth > MAX_CALL_DEPTH:
            raise MiniRuntimeError("call depth exceeded")
        env = dict(zip(fn.params, (wrap(a) for a in args)))
        try:
            self._block(fn.body, env, depth)
        except _Returned as ret:
            return ret.value
        return 0

    def _block(self, block: Block, env: dict, depth: int) -> None:
        for stmt in block.body:
            self._stmt(stmt, env, depth)

    def _stmt(self, stmt, env: dict, depth: int) -> None:
        if isinstance(stmt, While):
            while True:
                self._charge(stmt)
                if not self._eval(stmt.cond, env, depth):
                    return
                self._block(stmt.body, env, depth)
        self._charge(stmt)
        match stmt:
            case Assign():
                env[stmt.name] = self._eval(stmt.value, env, depth)
            case ExprStmt():
                self._eval(stmt.expr, env, depth)
            case Return():
                raise _Returned(self._eval(stmt.value, env, depth))
            case If():
                if self._eval(stmt.cond, env, depth):
                    self._block(stmt.then, env, depth)
                elif isinstance(stmt.other, Block):
                    self._block(stmt.other, env, depth)
                elif isinstance(stmt.other, If):
                    self._stmt(stmt.other, env, depth)

    def _eval(self, expr, env: dict, depth: int) -> int:
        match expr:
            case Num():
                return wrap(expr.value)
            case Var():
                if expr.name not in env:
                    raise MiniRuntimeError(f"variable {expr.name!r} read before assignment")
                return env[expr.name]
            case Unary():
                v = self._eval(expr.operand, env, depth)
                return wrap(-v) if expr.op == "-" else int(v == 0)
            case Ternary():
                if self._eval(expr.cond, env, depth):
                    return self._eval(expr.then, env, depth)
                return self._eval(expr.other, env, depth)
            case Call():
                fn = self.functions.get(expr.name)
                if fn is None or len(fn.params) != len(expr.args):
                    raise MiniRuntimeError(f"bad call to {expr.name!r}")
                args = [self._eval(a, env, depth) for a in expr.args]
                return self.call(expr.name, args, depth + 1)
            case Binary():
                op = expr.op
                if op == "&&":
                    return int(bool(self._eval(expr.left, env, depth))
                               and bool(self._eval(expr.right, env, depth)))
                if op == "||":
                    return int(bool(self._eval(expr.left, env, depth))
                               or bool(self._eval(expr.right, env, depth)))
                a = self._eval(expr.left, env, depth)
                b = self._eval(expr.right, env, depth)
                if op in _COMPARE:
                    return int(_COMPARE[op](a, b))
                if op == "+":
                    return wrap(a + b)
                if op == "-":
                    return wrap(a - b)
                if op == "*":
                    return wrap(a * b)
                if op == "/":
                    return div(a, b)
                return mod(a, b)
        raise TypeError(f"not an expression: {expr!r}")


def interpret(program: Program, function: str, args: list[int], step_limit: int) -> int:
    """Evaluate ``function(*args)``; raises MiniRuntimeError or StepLimitExceeded."""
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 20_000))
    try:
        return Interpreter(program, step_limit).call(function, list(args))
    finally:
        sys.setrecursionlimit(old)
