"""Syntactic and semantic similarity between mutants and a real fault."""

from __future__ import annotations

import difflib
import math
from collections import Counter
from dataclasses import asdict, dataclass
from typing import Optional, Sequence

from .engines.mutant import Mutant
from .harness import INVALID, FaultReference, KillMatrix
from .lexing import lex
from .minilang import parse

BLEU = "BLEU"
COSINE = "COSINE"
JACCARD = "JACCARD"
SYNTACTIC_METRICS = (BLEU, COSINE, JACCARD)

FILE = "FILE"
FUNCTION = "FUNCTION"
PATCH = "PATCH"
GRANULARITIES = (FILE, FUNCTION, PATCH)


class EmptySequence(ValueError):
    pass


def _require(*seqs: Sequence[str]) -> None:
    if any(len(s) == 0 for s in seqs):
        raise EmptySequence("similarity of an empty token sequence is undefined")


def ngrams(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1))


def bleu(reference: Sequence[str], candidate: Sequence[str], *,
         brevity_penalty: bool = True, max_n: int = 4) -> float:
    """Geometric mean of clipped n-gram precisions, n = 1..min(max_n, |ref|, |cand|).

    Unsmoothed: a zero precision at any order gives 0.  Not symmetric; the
    reference is the real fault, the candidate the mutant.
    """
    _require(reference, candidate)
    order = min(max_n, len(reference), len(candidate))
    log_sum = 0.0
    for n in range(1, order + 1):
        cand, ref = ngrams(candidate, n), ngrams(reference, n)
        matched = sum(min(c, ref[g]) for g, c in cand.items())
        if matched == 0:
            return 0.0
        log_sum += math.log(matched / sum(cand.values()))
    score = math.exp(log_sum / order)
    if brevity_penalty and len(candidate) < len(reference):
        score *= math.exp(1 - len(reference) / len(candidate))
    return min(1.0, score)


def cosine_sim(reference: Sequence[str], candidate: Sequence[str]) -> float:
    _require(reference, candidate)
    a, b = Counter(reference), Counter(candidate)
    dot = sum(c * b[t] for t, c in a.items())
    norm = math.sqrt(sum(c * c for c in a.values())) * math.sqrt(sum(c * c for c in b.values()))
    return min(1.0, dot / norm)


def jaccard_sim(reference: Sequence[str], candidate: Sequence[str]) -> float:
    _require(reference, candidate)
    a, b = set(reference), set(candidate)
    return len(a & b) / len(a | b)


def ochiai(failing_a: set[str] | frozenset[str], failing_b: set[str] | frozenset[str]) -> float:
    """|A ∩ B| / sqrt(|A|·|B|), and 0 when either side is empty."""
    if not failing_a or not failing_b:
        return 0.0
    return min(1.0, len(set(failing_a) & set(failing_b)) / math.sqrt(len(failing_a) * len(failing_b)))


METRIC_FUNCTIONS = {BLEU: bleu, COSINE: cosine_sim, JACCARD: jaccard_sim}


def syntactic(metric: str, reference: Sequence[str], candidate: Sequence[str]) -> float:
    try:
        fn = METRIC_FUNCTIONS[metric.upper()]
    except KeyError:
        raise ValueError(f"unknown syntactic metric {metric!r}") from None
    return fn(reference, candidate)


@dataclass(frozen=True)
class SimilarityRecord:
    mutant_id: str
    fault_id: str
    syntactic: float
    semantic: float
    metric_name: str
    granularity: str = FILE
    engine: str = ""
    function: str = ""
    span: tuple[int, int] = (0, 0)
    at_patch: bool = False
    exact_match: bool = False

    def __post_init__(self):
        for value in (self.syntactic, self.semantic):
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{self.mutant_id}: similarity {value} outside [0, 1]")

    def to_dict(self) -> dict:
        data = asdict(self)
        data["span"] = list(self.span)
        return data


# -- comparison regions ----------------------------------------------------------

@dataclass(frozen=True)
class PatchRegion:
    """Whole source lines of the fixed version around one edit of the fault,
    as a token range ``[lo, hi)``.  ``offset`` is the length change caused by
    earlier edits, ``delta`` the change caused by this one."""
    lo: int
    hi: int
    delta: int
    offset: int = 0


def _line_bounds(lines: list[int], lo: int, hi: int) -> tuple[int, int]:
    n = len(lines)
    first = lines[min(lo, n - 1)]
    last = lines[min(hi, n) - 1] if hi > lo else first
    while lo > 0 and lines[lo - 1] >= first:
        lo -= 1
    while hi < n and lines[hi] <= last:
        hi += 1
    return lo, hi


def patch_regions(fault: FaultReference) -> list[PatchRegion]:
    """Line-aligned regions of the fixed version that the fault edits, in
    source order.  Edits on shared or adjacent lines merge into one region."""
    fixed, faulty = list(fault.fixed_tokens), list(fault.faulty_tokens)
    ops = [op for op in difflib.SequenceMatcher(None, fixed, faulty, autojunk=False).get_opcodes()
           if op[0] != "equal"]
    stream = lex(fault.fixed_source) if fault.fixed_source else None
    if stream is None or len(stream.tokens) != len(fixed):
        lines = list(range(len(fixed)))  # no layout known: one token per line
    else:
        lines = [fault.fixed_source.count("\n", 0, t.start) for t in stream.tokens]
    spans: list[list[int]] = []
    for _, i1, i2, j1, j2 in ops:
        lo, hi = _line_bounds(lines, i1, i2)
        delta = (j2 - j1) - (i2 - i1)
        if spans and lo <= spans[-1][1]:
            spans[-1][1] = max(spans[-1][1], hi)
            spans[-1][2] += delta
        else:
            spans.append([lo, hi, delta])
    regions: list[PatchRegion] = []
    offset = 0
    for lo, hi, delta in spans:
        # an edit deleting whole lines leaves nothing on the faulty side;
        # take in neighbouring lines until something remains
        while hi - lo + delta <= 0 and (hi < len(lines) or lo > 0):
            if hi < len(lines):
                hi = _line_bounds(lines, hi, hi + 1)[1]
            else:
                lo = _line_bounds(lines, lo - 1, lo)[0]
        if regions and lo <= regions[-1].hi:
            prev = regions.pop()
            offset -= prev.delta
            lo, hi, delta = prev.lo, max(prev.hi, hi), prev.delta + delta
        regions.append(PatchRegion(lo, hi, delta, offset))
        offset += delta
    return regions


def _touches(token_range: tuple[int, int], region: PatchRegion) -> bool:
    lo, hi = token_range
    if hi == lo:
        return region.lo <= lo <= region.hi
    return lo < region.hi and hi > region.lo


def overlaps_patch(mutant: Mutant, regions: Sequence[PatchRegion]) -> bool:
    return any(_touches(mutant.token_range, r) for r in regions)


def _patch_slices(mutant: Mutant, mutant_tokens: Sequence[str], fault: FaultReference,
                  regions: Sequence[PatchRegion]) -> tuple[list[str], list[str]]:
    """Smallest stretch covering the mutant's edit and every fault region it
    touches.  Outside it the fixed, faulty and mutant streams agree, so the
    stretch maps into each of them by a constant shift."""
    hit = [r for r in regions if _touches(mutant.token_range, r)]
    lo, hi = mutant.token_range
    u_lo, u_hi = min([lo] + [r.lo for r in hit]), max([hi] + [r.hi for r in hit])
    shift = hit[0].offset
    grown = sum(r.delta for r in hit)
    mutant_grown = len(mutant_tokens) - len(fault.fixed_tokens)
    return (list(fault.faulty_tokens[u_lo + shift:u_hi + shift + grown]),
            list(mutant_tokens[u_lo:u_hi + mutant_grown]))


def _function_slice(source: str, names: frozenset[str]) -> list[str]:
    program = parse(source)
    texts = program.tokens.texts
    out: list[str] = []
    for fn in program.functions:
        if fn.name in names:
            out.extend(texts[fn.lo:fn.hi])
    return out


def similarity_table(matrix: KillMatrix, fault: FaultReference, mutants: Sequence[Mutant],
                     syntactic_metric: str = BLEU, granularity: str = FILE) -> list[SimilarityRecord]:
    """One record per valid mutant in scope.

    FILE compares whole token streams.  FUNCTION keeps mutants inside a
    function the fault changed and compares those functions only.  PATCH
    keeps mutants whose edit touches the lines the fault changed and compares
    the smallest line-aligned region holding both edits.
    """
    granularity = granularity.upper()
    if granularity not in GRANULARITIES:
        raise ValueError(f"unknown granularity {granularity!r}")
    metric = syntactic_metric.upper()
    regions = patch_regions(fault)
    fault_fn_tokens: Optional[list[str]] = None
    records = []
    for mutant in sorted(mutants, key=lambda m: m.id):
        vector = matrix[mutant.id]
        if vector.status == INVALID:
            continue
        at_patch = overlaps_patch(mutant, regions)
        mutant_tokens = lex(mutant.patched_source).texts
        if granularity == FILE:
            ref, cand = list(fault.faulty_tokens), list(mutant_tokens)
        elif granularity == FUNCTION:
            if mutant.function not in fault.changed_functions:
                continue
            if fault_fn_tokens is None:
                fault_fn_tokens = _function_slice(fault.faulty_source, fault.changed_functions)
            ref = fault_fn_tokens
            cand = _function_slice(mutant.patched_source, fault.changed_functions)
        else:
            if not at_patch:
                continue
            ref, cand = _patch_slices(mutant, mutant_tokens, fault, regions)
        if not ref or not cand:
            continue
        records.append(SimilarityRecord(
            mutant.id, fault.fault_id, syntactic(metric, ref, cand),
            ochiai(vector.failing_tests, fault.failing_tests), metric, granularity,
            mutant.engine, mutant.function, tuple(mutant.span), at_patch,
            tuple(mutant_tokens) == tuple(fault.faulty_tokens)))
    return records
