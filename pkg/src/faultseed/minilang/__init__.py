"""MiniLang: a small deterministic integer language used as mutation subject."""

from .ast import Program, FunctionDecl
from .corpus import BUNDLED_CORPUS, CorpusEntry, CorpusError, load_corpus, load_entry
from .execution import (
    EXPECT_ERROR, FAIL, PASS, RUNTIME_ERROR, STEP_LIMIT_EXCEEDED, ExecOutcome,
    Executable, TestCase, UnknownFunction, run_test,
)
from .parser import MiniSyntaxError, parse, parses
from .printer import format_program
from .semantics import DEFAULT_STEP_LIMIT, MiniRuntimeError, StepLimitExceeded

__all__ = [
    "BUNDLED_CORPUS", "CorpusEntry", "CorpusError", "DEFAULT_STEP_LIMIT",
    "EXPECT_ERROR", "ExecOutcome", "Executable", "FAIL", "FunctionDecl",
    "MiniRuntimeError", "MiniSyntaxError", "PASS", "Program", "RUNTIME_ERROR",
    "STEP_LIMIT_EXCEEDED", "StepLimitExceeded", "TestCase", "UnknownFunction",
    "format_program", "load_corpus", "load_entry", "parse", "parses", "run_test",
]
