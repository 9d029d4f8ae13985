"""Integer semantics shared by both MiniLang execution paths."""

from __future__ import annotations

INT_MIN = -(1 << 63)
INT_MAX = (1 << 63) - 1
_OFFSET = 1 << 63
_MASK = (1 << 64) - 1

MAX_CALL_DEPTH = 100
DEFAULT_STEP_LIMIT = 100_000


class MiniRuntimeError(Exception):
    """Division by zero, unassigned variable, call depth overflow."""


class StepLimitExceeded(Exception):
    pass


def wrap(value: int) -> int:
    """Two's-complement wraparound to signed 64 bits."""
    return ((value + _OFFSET) & _MASK) - _OFFSET


def div(a: int, b: int) -> int:
    """Integer division truncating toward zero."""
    if b == 0:
        raise MiniRuntimeError("division by zero")
    q = abs(a) // abs(b)
    return wrap(q if (a < 0) == (b < 0) else -q)


def mod(a: int, b: int) -> int:
    """Remainder with the sign of the dividend (``a == div(a, b) * b + mod(a, b)``)."""
    if b == 0:
        raise MiniRuntimeError("modulo by zero")
    r = abs(a) % abs(b)
    return r if a >= 0 else -r
