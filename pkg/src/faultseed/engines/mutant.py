"""The Mutant record and the token-level edit that produces it."""

from __future__ import annotations

import difflib
import hashlib
from dataclasses import dataclass, field
from typing import Optional

from ..lexing import LexError, lex, render
from ..minilang import MiniSyntaxError, Program, parse

GRAMMAR = "GRAMMAR"
PATTERN = "PATTERN"
PREDICTOR = "PREDICTOR"
ENGINES = (GRAMMAR, PATTERN, PREDICTOR)
ID_PREFIX = {GRAMMAR: "g", PATTERN: "p", PREDICTOR: "m"}


@dataclass
class Mutant:
    id: str
    engine: str
    operator_id: str
    function: str
    span: tuple[int, int]
    original_tokens: list[str]
    mutated_tokens: list[str]
    patched_source: str
    token_range: tuple[int, int] = (0, 0)
    score: Optional[float] = None
    meta: dict = field(default_factory=dict)

    def to_dict(self, original_source: str | None = None) -> dict:
        data = {
            "id": self.id,
            "engine": self.engine,
            "operator_id": self.operator_id,
            "function": self.function,
            "span": list(self.span),
            "token_range": list(self.token_range),
            "original_tokens": self.original_tokens,
            "mutated_tokens": self.mutated_tokens,
            "score": self.score,
            "patched_source": self.patched_source,
        }
        if self.meta:
            data["meta"] = self.meta
        if original_source is not None:
            data["diff"] = unified_diff(original_source, self.patched_source)
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "Mutant":
        return cls(
            id=data["id"], engine=data["engine"], operator_id=data["operator_id"],
            function=data["function"], span=tuple(data["span"]),
            original_tokens=list(data["original_tokens"]),
            mutated_tokens=list(data["mutated_tokens"]),
            patched_source=data["patched_source"],
            token_range=tuple(data.get("token_range", (0, 0))),
            score=data.get("score"), meta=dict(data.get("meta", {})),
        )


def unified_diff(before: str, after: str) -> str:
    return "".join(difflib.unified_diff(
        before.splitlines(keepends=True), after.splitlines(keepends=True),
        fromfile="fixed.mini", tofile="mutant.mini"))


def mutant_id(engine: str, operator_id: str, span: tuple[int, int], replacement: list[str]) -> str:
    """Content hash, stable across runs."""
    key = f"{engine}|{operator_id}|{span[0]}|{span[1]}|{render(replacement)}"
    return f"{ID_PREFIX.get(engine, engine[:1].lower())}{hashlib.sha1(key.encode()).hexdigest()[:11]}"


def apply_edit(program: Program, lo: int, hi: int, new_tokens: list[str]) -> Optional[str]:
    """Replace tokens ``[lo, hi)`` with ``new_tokens``.

    Returns the patched source, or None when it no longer lexes into exactly
    the intended token sequence or fails to parse.  Text outside the edited
    span, comments and layout included, is kept verbatim.
    """
    source = program.source_text
    tokens = program.tokens.tokens
    if hi > lo:
        start, end = tokens[lo].start, tokens[hi - 1].end
    else:
        start = end = tokens[lo].start if lo < len(tokens) else len(source)
    expected = [t.text for t in tokens[:lo]] + list(new_tokens) + [t.text for t in tokens[hi:]]
    text = render(new_tokens)
    for candidate in (source[:start] + text + source[end:],
                      source[:start] + " " + text + " " + source[end:]):
        try:
            if lex(candidate).texts != expected:
                continue
        except LexError:
            continue
        try:
            parse(candidate)
        except MiniSyntaxError:
            return None
        return candidate
    return None


def function_at(program: Program, token_index: int) -> str:
    for fn in program.functions:
        if fn.lo <= token_index < fn.hi:
            return fn.name
    raise ValueError(f"token {token_index} lies outside every function")


class MutantCollector:
    """Materializes candidate edits, drops invalid ones and duplicates."""

    def __init__(self, program: Program, engine: str, *, dedupe_source: bool):
        self.program = program
        self.engine = engine
        self.dedupe_source = dedupe_source
        self.mutants: list[Mutant] = []
        self._ids: set[str] = set()
        self._sources: set[str] = set()

    def offer(self, operator_id: str, lo: int, hi: int, new_tokens: list[str],
              score: float | None = None, meta: dict | None = None) -> Optional[Mutant]:
        tokens = self.program.tokens.tokens
        original = [t.text for t in tokens[lo:hi]]
        if original == list(new_tokens):
            return None
        patched = apply_edit(self.program, lo, hi, new_tokens)
        if patched is None or patched == self.program.source_text:
            return None
        if hi > lo:
            span = (tokens[lo].start, tokens[hi - 1].end)
        else:
            pos = tokens[lo].start if lo < len(tokens) else len(self.program.source_text)
            span = (pos, pos)
        mid = mutant_id(self.engine, operator_id, span, list(new_tokens))
        if mid in self._ids or (self.dedupe_source and patched in self._sources):
            return None
        mutant = Mutant(
            id=mid, engine=self.engine, operator_id=operator_id,
            function=function_at(self.program, lo), span=span,
            original_tokens=original, mutated_tokens=list(new_tokens),
            patched_source=patched, token_range=(lo, hi), score=score,
            meta=dict(meta or {}),
        )
        self._ids.add(mid)
        self._sources.add(patched)
        self.mutants.append(mutant)
        return mutant
