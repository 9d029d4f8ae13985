from __future__ import annotations

import math

import pytest
from hypothesis import given, settings, strategies as st

from faultseed.engines import PATTERN, generate_pattern_mutants, localize
from faultseed.engines.pattern import PATTERN_CATALOG, LocalizationRanking, Location
from faultseed.lexing import lex
from faultseed.minilang import load_corpus, parse


def test_tfidf_hand_oracle():
    program = parse("fn f(a, b) { x = a + b; return x; }")
    ranking = localize(program, "return x")
    scores = {loc.statement_index: loc.score for loc in ranking}
    c = math.log(1.5) + 1.0  # idf of a term found in one of two statements
    assert scores[1] == pytest.approx(1.0)
    assert scores[0] == pytest.approx(1.0 / (math.sqrt(c * c + 1) * math.sqrt(1 + 2 * c * c)))
    assert [loc.statement_index for loc in ranking] == [1, 0]


def test_identifier_parts_match_report_words():
    program = parse("fn f(n) { digitSum = n; total = 1; return total; }")
    top = localize(program, "the digit sum is off").entries[0]
    assert top.statement_index == 0 and top.score > 0


def test_no_overlap_scores_zero_and_ties_by_position():
    program = parse("fn f(a) { b = a; return b; }")
    ranking = localize(program, "completely unrelated words")
    assert [loc.score for loc in ranking] == [0.0, 0.0]
    assert [loc.statement_index for loc in ranking] == [0, 1]


def test_empty_report_rejected():
    with pytest.raises(ValueError):
        localize(parse("fn f(a) { return a; }"), "   ")


def test_gcd_loop_ranked_first(entries):
    entry = entries["gcd"]
    ranking = localize(parse(entry.fixed_source), entry.bug_report)
    first = ranking.entries[0]
    assert (first.function, first.statement_index) == ("gcd", 0)


def test_cap_is_exact_on_large_subject(entries):
    entry = entries["triangle"]
    program = parse(entry.fixed_source)
    ranking = localize(program, entry.bug_report)
    assert len(generate_pattern_mutants(program, ranking, cap=100)) == 100
    uncapped = generate_pattern_mutants(program, ranking, cap=10_000)
    capped_one = generate_pattern_mutants(program, ranking, cap=1)
    assert [m.id for m in capped_one] == [uncapped[0].id]


def test_cap_below_one_rejected():
    program = parse("fn f(a) { return a; }")
    with pytest.raises(ValueError):
        generate_pattern_mutants(program, localize(program, "a"), cap=0)


def test_scope_filter_restricts_functions(entries):
    entry = entries["clamp"]
    program = parse(entry.fixed_source)
    ranking = localize(program, entry.bug_report)
    names = {fn.name for fn in program.functions}
    assert len(names) > 1
    target = sorted(names)[0]
    mutants = generate_pattern_mutants(program, ranking, cap=1000, scope_filter={target})
    assert mutants and {m.function for m in mutants} == {target}


def test_walk_follows_ranking_order():
    program = parse("fn f(a, b) { x = a + 1; y = b - 2; return x + y; }")
    ranking = LocalizationRanking((Location("f", 1, 0.9), Location("f", 0, 0.5), Location("f", 2, 0.1)))
    mutants = generate_pattern_mutants(program, ranking, cap=1000)
    order = [m.meta["statement_index"] for m in mutants]
    seen = list(dict.fromkeys(order))
    assert seen == [1, 0, 2]


@pytest.mark.parametrize("source, pattern, expected", [
    ("fn f(a) { if (a > 0) { a = 1; } return a; }", "NEGATE_CONDITION",
     "fn f(a) { if (!(a > 0)) { a = 1; } return a; }"),
    ("fn f(a) { if (a > 0) { a = 1; } return a; }", "REMOVE_GUARD",
     "fn f(a) { a = 1; return a; }"),
    ("fn f(a) { if (a > 0) { a = 1; } else { a = 2; } return a; }", "DROP_ELSE",
     "fn f(a) { if (a > 0) { a = 1; } return a; }"),
    ("fn g(x, y) { return x - y; } fn f(a, b) { return g(a, b); }", "SWAP_ARGUMENTS",
     "fn g(x, y) { return x - y; } fn f(a, b) { return g(b, a); }"),
    ("fn f(a, b) { return a && b; }", "SWAP_LOGICAL", "fn f(a, b) { return a || b; }"),
    ("fn f(a) { a = a + 1; return a; }", "DUPLICATE_STATEMENT",
     "fn f(a) { a = a + 1;a = a + 1; return a; }"),
])
def test_pattern_examples(source, pattern, expected):
    program = parse(source)
    ranking = localize(program, "a")
    produced = [lex(m.patched_source).texts for m in generate_pattern_mutants(program, ranking, cap=1000)
                if m.operator_id == pattern]
    assert lex(expected).texts in produced


def test_every_pattern_fires_on_corpus(corpus):
    fired = set()
    for entry in corpus:
        program = parse(entry.fixed_source)
        ranking = localize(program, entry.bug_report)
        fired |= {m.operator_id for m in generate_pattern_mutants(program, ranking, cap=10_000)}
    assert fired == {p.pattern_id for p in PATTERN_CATALOG}
    assert len(PATTERN_CATALOG) == 12


def test_corpus_pattern_mutants_parse_and_differ(corpus):
    for entry in corpus:
        program = parse(entry.fixed_source)
        mutants = generate_pattern_mutants(program, localize(program, entry.bug_report))
        sources = [m.patched_source for m in mutants]
        assert len(sources) == len(set(sources))
        for m in mutants:
            assert m.engine == PATTERN and m.id.startswith("p")
            assert m.patched_source != entry.fixed_source
            parse(m.patched_source)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 150), st.sampled_from(["gcd", "triangle", "clamp", "collatz", "power"]))
def test_cap_is_respected_and_prefix_stable(cap, name):
    entry = {e.name: e for e in load_corpus()}[name]
    program = parse(entry.fixed_source)
    ranking = localize(program, entry.bug_report)
    capped = generate_pattern_mutants(program, ranking, cap=cap)
    full = generate_pattern_mutants(program, ranking, cap=10_000)
    assert len(capped) == min(cap, len(full))
    assert [m.id for m in capped] == [m.id for m in full[:len(capped)]]
