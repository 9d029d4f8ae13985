"""Bug-report-driven seeding: rank statements by lexical similarity to a bug
report, then apply inverted fix-patterns at the top-ranked statements until a
mutant budget is reached."""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Iterable, NamedTuple, Optional

from ..lexing import IDENT, KEYWORD, split_identifier
from ..minilang import Program
from ..minilang.ast import (
    LOGICAL, RELATIONAL, COMPARISON, Assign, Binary, Call, ExprStmt, If, Num,
    Return, Ternary, Unary, Var, While, function_statements, nested_statements,
    own_exprs, walk_expr,
)
from .grammar import literal_tokens
from .mutant import PATTERN, Mutant, MutantCollector

DEFAULT_CAP = 100


class Location(NamedTuple):
    function: str
    statement_index: int
    score: float


@dataclass(frozen=True)
class LocalizationRanking:
    entries: tuple[Location, ...]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)


# -- localization -----------------------------------------------------------

_WORD = re.compile(r"[A-Za-z0-9_]+")


def report_terms(text: str) -> list[str]:
    terms = []
    for word in _WORD.findall(text):
        terms += split_identifier(word)
    return terms


def own_token_indices(stmt) -> list[int]:
    """Token indices of ``stmt`` that are not inside a nested statement."""
    inner = set()
    for child in nested_statements(stmt):
        inner.update(range(child.lo, child.hi))
    return [i for i in range(stmt.lo, stmt.hi) if i not in inner]


def statement_terms(program: Program, stmt) -> list[str]:
    tokens = program.tokens.tokens
    terms = []
    for i in own_token_indices(stmt):
        tok = tokens[i]
        if tok.kind == IDENT:
            terms += split_identifier(tok.text)
        elif tok.kind == KEYWORD:
            terms.append(tok.text)
    return terms


def _tfidf(counts: Counter, idf: dict[str, float]) -> dict[str, float]:
    return {t: c * idf[t] for t, c in counts.items() if t in idf}


def _cosine(u: dict[str, float], v: dict[str, float]) -> float:
    dot = sum(w * v.get(t, 0.0) for t, w in u.items())
    nu = math.sqrt(sum(w * w for w in u.values()))
    nv = math.sqrt(sum(w * w for w in v.values()))
    if nu == 0.0 or nv == 0.0:
        return 0.0
    return min(1.0, max(0.0, dot / (nu * nv)))


def localize(program: Program, bug_report: str) -> LocalizationRanking:
    """Score every statement by TF-IDF cosine similarity with the report.

    Documents are statements (identifier parts and keywords of the statement
    itself, nested statements excluded); idf is the smoothed
    ``ln((1 + N) / (1 + df)) + 1``.
    """
    if not bug_report.strip():
        raise ValueError("bug report must be non-empty")
    docs = []
    for fn in program.functions:
        for index, stmt in enumerate(function_statements(fn)):
            docs.append((fn.name, index, Counter(statement_terms(program, stmt))))
    n = len(docs)
    df = Counter(t for _, _, counts in docs for t in counts)
    idf = {t: math.log((1 + n) / (1 + d)) + 1.0 for t, d in df.items()}
    query = _tfidf(Counter(report_terms(bug_report)), idf)
    scored = [Location(name, index, _cosine(query, _tfidf(counts, idf)))
              for name, index, counts in docs]
    scored.sort(key=lambda loc: (-loc.score, loc.function, loc.statement_index))
    return LocalizationRanking(tuple(scored))


# -- inverted fix-patterns ----------------------------------------------------

Edit = tuple[int, int, list[str]]


@dataclass(frozen=True)
class FixPattern:
    pattern_id: str
    description: str
    apply: Callable[["_Site"], Iterable[Edit]]


class _Site:
    """One statement under mutation plus helpers over the token stream."""

    def __init__(self, program: Program, fn, stmt, in_block: bool):
        self.program = program
        self.fn = fn
        self.stmt = stmt
        self.in_block = in_block
        self.tokens = program.tokens.tokens

    def text(self, lo: int, hi: int) -> list[str]:
        return [t.text for t in self.tokens[lo:hi]]

    def exprs(self):
        out = []
        for root in own_exprs(self.stmt):
            out += list(walk_expr(root))
        return out

    def conditions(self):
        out = [self.stmt.cond] if isinstance(self.stmt, (If, While)) else []
        return out + [e.cond for e in self.exprs() if isinstance(e, Ternary)]

    def variables(self) -> list[str]:
        names = list(self.fn.params)
        for s in function_statements(self.fn):
            if isinstance(s, Assign) and s.name not in names:
                names.append(s.name)
        return names


def _negate_condition(site: _Site):
    for c in site.conditions():
        yield c.lo, c.hi, ["!", "("] + site.text(c.lo, c.hi) + [")"]


def _remove_guard(site: _Site):
    s = site.stmt
    if isinstance(s, If) and s.other is None and site.in_block:
        yield s.lo, s.hi, site.text(s.then.lo + 1, s.then.hi - 1)


def _off_by_one(site: _Site):
    for e in site.exprs():
        if isinstance(e, Binary) and e.op in COMPARISON:
            r = e.right
            body = site.text(r.lo, r.hi)
            if not isinstance(r, (Num, Var, Call, Unary)):
                body = ["("] + body + [")"]
            yield r.lo, r.hi, body + ["+", "1"]
            yield r.lo, r.hi, body + ["-", "1"]


def _swap_arguments(site: _Site):
    for e in site.exprs():
        if not isinstance(e, Call):
            continue
        for a, b in zip(e.args, e.args[1:]):
            adjacent = a.hi + 1 == b.lo and site.tokens[a.hi].text == ","
            if adjacent and site.text(a.lo, a.hi) != site.text(b.lo, b.hi):
                yield a.lo, b.hi, site.text(b.lo, b.hi) + [","] + site.text(a.lo, a.hi)


def _replace_variable(site: _Site):
    names = site.variables()
    for e in site.exprs():
        if isinstance(e, Var):
            for name in names:
                if name != e.name:
                    yield e.lo, e.hi, [name]


def _delete_statement(site: _Site):
    if site.in_block and not isinstance(site.stmt, Return):
        yield site.stmt.lo, site.stmt.hi, []


def _mutate_relational(site: _Site):
    swap = {"<": "<=", "<=": "<", ">": ">=", ">=": ">"}
    for e in site.exprs():
        if isinstance(e, Binary) and e.op in RELATIONAL:
            yield e.op_index, e.op_index + 1, [swap[e.op]]


def _replace_literal(site: _Site):
    for e in site.exprs():
        if isinstance(e, Num):
            for v in (0, 1, -1):
                if v != e.value:
                    yield e.lo, e.hi, literal_tokens(v)


def _early_return(site: _Site):
    s = site.stmt
    if site.in_block and not isinstance(s, Return):
        yield s.lo, s.hi, ["return", "0", ";"] + site.text(s.lo, s.hi)


def _drop_else(site: _Site):
    s = site.stmt
    if isinstance(s, If) and s.other is not None:
        yield s.else_index, s.hi, []


def _duplicate_statement(site: _Site):
    s = site.stmt
    if isinstance(s, (Assign, ExprStmt)):
        body = site.text(s.lo, s.hi)
        yield s.lo, s.hi, body + body


def _swap_logical(site: _Site):
    for e in site.exprs():
        if isinstance(e, Binary) and e.op in LOGICAL:
            yield e.op_index, e.op_index + 1, ["||" if e.op == "&&" else "&&"]


PATTERN_CATALOG: tuple[FixPattern, ...] = (
    FixPattern("NEGATE_CONDITION", "branch condition c -> !(c)", _negate_condition),
    FixPattern("REMOVE_GUARD", "if (c) { S } -> S", _remove_guard),
    FixPattern("OFF_BY_ONE", "right operand r of a comparison -> r + 1, r - 1", _off_by_one),
    FixPattern("SWAP_ARGUMENTS", "swap two adjacent call arguments", _swap_arguments),
    FixPattern("REPLACE_VARIABLE", "variable read -> another variable of the function", _replace_variable),
    FixPattern("DELETE_STATEMENT", "remove a non-return statement", _delete_statement),
    FixPattern("MUTATE_RELATIONAL", "widen/narrow: < <-> <=, > <-> >=", _mutate_relational),
    FixPattern("REPLACE_LITERAL", "literal -> 0, 1, -1", _replace_literal),
    FixPattern("EARLY_RETURN", "S -> return 0; S", _early_return),
    FixPattern("DROP_ELSE", "if (c) A else B -> if (c) A", _drop_else),
    FixPattern("DUPLICATE_STATEMENT", "S -> S S", _duplicate_statement),
    FixPattern("SWAP_LOGICAL", "&& <-> ||", _swap_logical),
)


def _sites(program: Program) -> dict[tuple[str, int], tuple]:
    sites = {}
    for fn in program.functions:
        stmts = function_statements(fn)
        else_ifs = {id(s.other) for s in stmts if isinstance(s, If) and isinstance(s.other, If)}
        for index, stmt in enumerate(stmts):
            sites[(fn.name, index)] = (fn, stmt, id(stmt) not in else_ifs)
    return sites


def generate_pattern_mutants(program: Program, ranking: LocalizationRanking,
                             cap: int = DEFAULT_CAP,
                             scope_filter: Optional[set[str]] = None) -> list[Mutant]:
    """Walk ranked locations; at each, apply every matching pattern in catalog
    order until ``cap`` mutants exist."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    sites = _sites(program)
    out = MutantCollector(program, PATTERN, dedupe_source=True)
    for loc in ranking:
        if scope_filter is not None and loc.function not in scope_filter:
            continue
        fn, stmt, in_block = sites[(loc.function, loc.statement_index)]
        site = _Site(program, fn, stmt, in_block)
        for pattern in PATTERN_CATALOG:
            for lo, hi, new_tokens in pattern.apply(site):
                mutant = out.offer(pattern.pattern_id, lo, hi, new_tokens,
                                   meta={"statement_index": loc.statement_index,
                                         "location_score": loc.score})
                if mutant is not None and len(out.mutants) >= cap:
                    return out.mutants
    return out.mutants
