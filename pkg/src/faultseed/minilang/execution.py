"""Test cases and their execution against a MiniLang program."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .ast import Program
from .compiler import call_compiled, compile_program
from .interpreter import interpret
from .semantics import DEFAULT_STEP_LIMIT, MiniRuntimeError, StepLimitExceeded

EXPECT_ERROR = "error"

PASS = "PASS"
FAIL = "FAIL"
RUNTIME_ERROR = "RUNTIME_ERROR"
STEP_LIMIT_EXCEEDED = "STEP_LIMIT_EXCEEDED"


class UnknownFunction(LookupError):
    pass


@dataclass(frozen=True)
class TestCase:
    id: str
    function: str
    inputs: tuple[int, ...]
    expected: Union[int, str]

    __test__ = False  # not a pytest class

    @classmethod
    def from_dict(cls, data: dict) -> "TestCase":
        expected = data["expected"]
        if isinstance(expected, str) and expected != EXPECT_ERROR:
            raise ValueError(f"test {data.get('id')!r}: expected must be int or {EXPECT_ERROR!r}")
        return cls(str(data["id"]), data["function"], tuple(int(x) for x in data["inputs"]), expected)

    def to_dict(self) -> dict:
        return {"id": self.id, "function": self.function,
                "inputs": list(self.inputs), "expected": self.expected}


@dataclass(frozen=True)
class ExecOutcome:
    status: str
    value: int | None = None

    @property
    def failed(self) -> bool:
        """Runtime errors and step-limit exhaustion count as failures."""
        return self.status != PASS


def _classify(test: TestCase, thunk) -> ExecOutcome:
    try:
        value = thunk()
    except StepLimitExceeded:
        return ExecOutcome(STEP_LIMIT_EXCEEDED)
    except MiniRuntimeError:
        return ExecOutcome(PASS if test.expected == EXPECT_ERROR else RUNTIME_ERROR)
    if test.expected != EXPECT_ERROR and value == test.expected:
        return ExecOutcome(PASS, value)
    return ExecOutcome(FAIL, value)


class Executable:
    """A program compiled once and run against many tests."""

    def __init__(self, program: Program):
        self.program = program
        self.arity = {fn.name: len(fn.params) for fn in program.functions}
        self._factory = compile_program(program)

    def run(self, test: TestCase, step_limit: int = DEFAULT_STEP_LIMIT) -> ExecOutcome:
        if step_limit <= 0:
            raise ValueError("step_limit must be positive")
        if test.function not in self.arity:
            raise UnknownFunction(test.function)
        return _classify(test, lambda: call_compiled(
            self._factory, self.arity, test.function, list(test.inputs), step_limit))


def run_test(program: Program, test: TestCase, step_limit: int = DEFAULT_STEP_LIMIT,
             *, reference: bool = False) -> ExecOutcome:
    """Run ``test`` on ``program``.  ``reference=True`` uses the tree-walking
    interpreter instead of the compiled path; outcomes are identical."""
    if not reference:
        return Executable(program).run(test, step_limit)
    if step_limit <= 0:
        raise ValueError("step_limit must be positive")
    if test.function not in program.function_names:
        raise UnknownFunction(test.function)
    return _classify(test, lambda: interpret(program, test.function, list(test.inputs), step_limit))
