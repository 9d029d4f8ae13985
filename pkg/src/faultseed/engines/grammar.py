"""Grammar-based mutation: a fixed catalog of simple syntactic operators
applied exhaustively at every applicable site.

Catalog (frozen; eleven operator families)::

    RELATIONAL_REPLACEMENT   each of < <= > >= == != to every other one
    CONDITIONALS_BOUNDARY    < <-> <=,  > <-> >=
    ARITHMETIC_REPLACEMENT   each binary + - * / % to every other one
    LOGICAL_REPLACEMENT      && <-> ||
    CONDITION_NEGATION       branch condition c  ->  !(c)
    REMOVE_CONDITIONALS      branch condition  ->  1 == 1  and  0 == 1
    INLINE_CONSTANT          literal n  ->  n + 1, n - 1, 0  (distinct, != n)
    PRIMITIVE_RETURNS        returned expression  ->  0
    RETURN_VALS              return e;  ->  return (e) == 0 ? 1 : 0;
    STATEMENT_DELETION       remove a non-return statement
    NEGATION_INSERTION       variable operand x  ->  -x

Branch conditions are those of ``if``, ``while`` and ``?:``.  Operators are
applied family by family, sites in source order.  This approximates a
bytecode-level tool at source level; it is not a claim about which operators
such a tool fired.
"""

from __future__ import annotations

from ..minilang import Program
from ..minilang.ast import (
    ARITHMETIC, COMPARISON, LOGICAL, RELATIONAL, Binary, If, Num, Return,
    Ternary, Var, While, branch_conditions, function_statements, own_exprs,
    walk_expr, nested_statements,
)
from .mutant import GRAMMAR, Mutant, MutantCollector

OPERATOR_FAMILIES = (
    "RELATIONAL_REPLACEMENT",
    "CONDITIONALS_BOUNDARY",
    "ARITHMETIC_REPLACEMENT",
    "LOGICAL_REPLACEMENT",
    "CONDITION_NEGATION",
    "REMOVE_CONDITIONALS",
    "INLINE_CONSTANT",
    "PRIMITIVE_RETURNS",
    "RETURN_VALS",
    "STATEMENT_DELETION",
    "NEGATION_INSERTION",
)

TRUE_CONDITION = ["1", "==", "1"]
FALSE_CONDITION = ["0", "==", "1"]
_BOUNDARY = {"<": "<=", "<=": "<", ">": ">=", ">=": ">"}


def literal_tokens(value: int) -> list[str]:
    return [str(value)] if value >= 0 else ["-", str(-value)]


def literal_replacements(value: int) -> list[int]:
    out = []
    for v in (value + 1, value - 1, 0):
        if v != value and v not in out:
            out.append(v)
    return out


def _all_exprs(program: Program):
    for fn in program.functions:
        for stmt in function_statements(fn):
            for root in own_exprs(stmt):
                yield from walk_expr(root)


def _deletable(program: Program):
    """Non-return statements that sit directly in a block (``else if``
    branches are not block members and cannot be removed alone)."""
    out = []
    for fn in program.functions:
        else_ifs = {id(s.other) for s in function_statements(fn)
                    if isinstance(s, If) and isinstance(s.other, If)}
        out += [s for s in function_statements(fn)
                if not isinstance(s, Return) and id(s) not in else_ifs]
    return sorted(out, key=lambda s: s.lo)


def generate_grammar_mutants(program: Program) -> list[Mutant]:
    tokens = program.tokens.tokens
    exprs = sorted(_all_exprs(program), key=lambda e: (e.lo, e.hi))
    binaries = sorted((e for e in exprs if isinstance(e, Binary)), key=lambda e: e.op_index)
    conditions = [cond for _, cond in branch_conditions(program)]
    returns = sorted((s for fn in program.functions for s in function_statements(fn)
                      if isinstance(s, Return)), key=lambda s: s.lo)
    out = MutantCollector(program, GRAMMAR, dedupe_source=False)

    def text(lo: int, hi: int) -> list[str]:
        return [t.text for t in tokens[lo:hi]]

    for b in binaries:
        if b.op in COMPARISON:
            for op in COMPARISON:
                if op != b.op:
                    out.offer("RELATIONAL_REPLACEMENT", b.op_index, b.op_index + 1, [op])
    for b in binaries:
        if b.op in RELATIONAL:
            out.offer("CONDITIONALS_BOUNDARY", b.op_index, b.op_index + 1, [_BOUNDARY[b.op]])
    for b in binaries:
        if b.op in ARITHMETIC:
            for op in ARITHMETIC:
                if op != b.op:
                    out.offer("ARITHMETIC_REPLACEMENT", b.op_index, b.op_index + 1, [op])
    for b in binaries:
        if b.op in LOGICAL:
            other = "||" if b.op == "&&" else "&&"
            out.offer("LOGICAL_REPLACEMENT", b.op_index, b.op_index + 1, [other])
    for c in conditions:
        out.offer("CONDITION_NEGATION", c.lo, c.hi, ["!", "("] + text(c.lo, c.hi) + [")"])
    for c in conditions:
        out.offer("REMOVE_CONDITIONALS", c.lo, c.hi, TRUE_CONDITION)
        out.offer("REMOVE_CONDITIONALS", c.lo, c.hi, FALSE_CONDITION)
    for e in exprs:
        if isinstance(e, Num):
            for v in literal_replacements(e.value):
                out.offer("INLINE_CONSTANT", e.lo, e.hi, literal_tokens(v))
    for r in returns:
        out.offer("PRIMITIVE_RETURNS", r.value.lo, r.value.hi, ["0"])
    for r in returns:
        out.offer("RETURN_VALS", r.lo, r.hi,
                  ["return", "("] + text(r.value.lo, r.value.hi) + [")", "==", "0", "?", "1", ":", "0", ";"])
    for s in _deletable(program):
        out.offer("STATEMENT_DELETION", s.lo, s.hi, [])
    for e in exprs:
        if isinstance(e, Var):
            out.offer("NEGATION_INSERTION", e.lo, e.hi, ["-", e.name])
    return out.mutants
