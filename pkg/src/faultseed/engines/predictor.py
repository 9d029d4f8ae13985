"""Mask-and-predict mutation.

Each maskable token of each statement is replaced by a ``<mask>`` sentinel,
a predictor proposes the k most likely replacements, and every proposal that
still compiles and differs from the original becomes a mutant.  The bundled
predictor is a left-context n-gram model with stupid back-off; anything that
maps ``(MaskedQuery, k)`` to a ``Prediction`` can be swapped in.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Optional

from ..lexing import IDENT, INT_LIT, OPERATOR, lex
from ..minilang import Program
from ..minilang.ast import function_statements
from .mutant import PREDICTOR, Mutant, MutantCollector
from .pattern import own_token_indices

MASK = "<mask>"
DEFAULT_K = 5
DEFAULT_CONTEXT_LIMIT = 512
DEFAULT_ORDER = 3
BACKOFF = 0.4
MASKABLE_KINDS = frozenset({IDENT, OPERATOR, INT_LIT})

ALL = "ALL"
ONE_PER_FUNCTION = "ONE_PER_FUNCTION"
POLICIES = (ALL, ONE_PER_FUNCTION)

MODEL_HEADER = "# faultseed-ngram v1"


class EmptyCorpus(ValueError):
    pass


@dataclass(frozen=True)
class MaskedQuery:
    context_tokens: tuple[str, ...]
    context_limit: int
    original: str = ""

    def __post_init__(self):
        if self.context_tokens.count(MASK) != 1:
            raise ValueError("query must contain exactly one mask")
        if len(self.context_tokens) > self.context_limit:
            raise ValueError("query longer than its context limit")

    @property
    def mask_index(self) -> int:
        return self.context_tokens.index(MASK)


@dataclass(frozen=True)
class Prediction:
    candidates: tuple[tuple[str, float], ...]
    k: int

    def __post_init__(self):
        if len(self.candidates) > self.k:
            raise ValueError("more candidates than k")
        scores = [s for _, s in self.candidates]
        if any(a < b for a, b in zip(scores, scores[1:])):
            raise ValueError("candidate scores must be non-increasing")


@dataclass
class NGramModel:
    order: int
    counts: dict[tuple[tuple[str, ...], str], int]
    vocabulary: frozenset[str] = frozenset()
    _totals: dict[tuple[str, ...], int] = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if not self.vocabulary:
            self.vocabulary = frozenset(tok for ctx, tok in self.counts if not ctx)
        totals: Counter = Counter()
        for (ctx, _), c in self.counts.items():
            totals[ctx] += c
        self._totals = dict(totals)

    def count(self, context: tuple[str, ...], token: str) -> int:
        return self.counts.get((tuple(context), token), 0)

    def score(self, left: tuple[str, ...], token: str) -> float:
        """Stupid back-off: relative frequency under the longest observed
        left context, times BACKOFF per dropped context token."""
        left = tuple(left[max(0, len(left) - (self.order - 1)):]) if self.order > 1 else ()
        penalty = 1.0
        for drop in range(len(left) + 1):
            ctx = left[drop:]
            total = self._totals.get(ctx, 0)
            c = self.counts.get((ctx, token), 0)
            if total and c:
                return penalty * c / total
            penalty *= BACKOFF
        return 0.0


def train_ngram(corpus_sources: Iterable[str], order: int = DEFAULT_ORDER) -> NGramModel:
    """Count every token under each of its left contexts of length
    ``0 .. order-1`` (shorter near the start of a source)."""
    if order < 1:
        raise ValueError("order must be at least 1")
    counts: Counter = Counter()
    for source in corpus_sources:
        texts = lex(source).texts
        for i, tok in enumerate(texts):
            for length in range(min(order - 1, i) + 1):
                counts[(tuple(texts[i - length:i]), tok)] += 1
    if not counts:
        raise EmptyCorpus("no tokens to train on")
    return NGramModel(order, dict(counts))


def predict(model: NGramModel, query: MaskedQuery, k: int = DEFAULT_K) -> Prediction:
    if k < 1:
        raise ValueError("k must be at least 1")
    m = query.mask_index
    left = tuple(query.context_tokens[max(0, m - (model.order - 1)):m])
    scored = [(tok, model.score(left, tok)) for tok in model.vocabulary if tok != query.original]
    scored.sort(key=lambda pair: (-pair[1], pair[0]))
    return Prediction(tuple(scored[:k]), k)


def save_model(model: NGramModel, path: Path | str) -> None:
    lines = sorted(f"{' '.join(ctx)}\t{tok}\t{c}" for (ctx, tok), c in model.counts.items())
    Path(path).write_text(f"{MODEL_HEADER} order={model.order}\n" + "\n".join(lines) + "\n")


def load_model(path: Path | str) -> NGramModel:
    header, *lines = Path(path).read_text().splitlines()
    if not header.startswith(MODEL_HEADER):
        raise ValueError(f"{path}: not an n-gram model file")
    order = int(header.rsplit("order=", 1)[1])
    counts = {}
    for line in lines:
        ctx, tok, c = line.split("\t")
        counts[(tuple(ctx.split()), tok)] = int(c)
    return NGramModel(order, counts)


# -- mutant generation --------------------------------------------------------

Predictor = Callable[[MaskedQuery, int], Prediction]


def masked_query(texts: list[str], index: int, context_limit: int) -> MaskedQuery:
    """Window of at most ``context_limit`` tokens around ``index``, centred
    where the stream allows."""
    n = len(texts)
    lo = max(0, index - (context_limit - 1) // 2)
    hi = min(n, lo + context_limit)
    lo = max(0, hi - context_limit)
    window = texts[lo:hi]
    window[index - lo] = MASK
    return MaskedQuery(tuple(window), context_limit, texts[index])


def masked_queries(program: Program, context_limit: int = DEFAULT_CONTEXT_LIMIT):
    """``(function, token_index, query)`` for every maskable token, statement
    by statement."""
    tokens = program.tokens.tokens
    texts = [t.text for t in tokens]
    for fn in program.functions:
        for stmt in function_statements(fn):
            for i in own_token_indices(stmt):
                if tokens[i].kind in MASKABLE_KINDS:
                    yield fn.name, i, masked_query(texts, i, context_limit)


def generate_predictor_mutants(program: Program, model: Optional[NGramModel] = None,
                               k: int = DEFAULT_K,
                               context_limit: int = DEFAULT_CONTEXT_LIMIT,
                               policy: str = ALL,
                               predictor: Optional[Predictor] = None) -> list[Mutant]:
    if policy not in POLICIES:
        raise ValueError(f"unknown policy {policy!r}")
    if predictor is None:
        if model is None:
            raise ValueError("need a model or a predictor")
        predictor = lambda query, k: predict(model, query, k)  # noqa: E731
    out = MutantCollector(program, PREDICTOR, dedupe_source=True)
    kinds = {i: t.kind for i, t in enumerate(program.tokens.tokens)}
    for _, index, query in masked_queries(program, context_limit):
        for token, score in predictor(query, k).candidates:
            out.offer(f"MASKED_{kinds[index]}", index, index + 1, [token], score=score)
    if policy == ALL:
        return out.mutants
    best: dict[str, Mutant] = {}
    for m in out.mutants:
        key = (-m.score, m.span, m.mutated_tokens)
        if m.function not in best or key < (-best[m.function].score, best[m.function].span,
                                             best[m.function].mutated_tokens):
            best[m.function] = m
    return [best[fn.name] for fn in program.functions if fn.name in best]
