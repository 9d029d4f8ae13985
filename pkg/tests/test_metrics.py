from __future__ import annotations

import math

import pytest
from hypothesis import given, settings, strategies as st

from faultseed.engines import generate_grammar_mutants
from faultseed.harness import INVALID, SURVIVED, execute_all, execute_reference
from faultseed.lexing import lex
from faultseed.metrics import (
    BLEU, FILE, FUNCTION, GRANULARITIES, PATCH, SYNTACTIC_METRICS, EmptySequence,
    SimilarityRecord, bleu, cosine_sim, jaccard_sim, ochiai, patch_regions, similarity_table,
    syntactic,
)
from faultseed.minilang import parse


def split(text):
    return text.split()


def brute_bleu(ref, cand):
    """BLEU from explicit n-gram lists, clipping by repeated removal."""
    order = min(4, len(ref), len(cand))
    precisions = []
    for n in range(1, order + 1):
        pool = [tuple(ref[i:i + n]) for i in range(len(ref) - n + 1)]
        grams = [tuple(cand[i:i + n]) for i in range(len(cand) - n + 1)]
        hits = 0
        for g in grams:
            if g in pool:
                pool.remove(g)
                hits += 1
        precisions.append(hits / len(grams))
    if min(precisions) == 0:
        return 0.0
    score = math.prod(precisions) ** (1 / order)
    if len(cand) < len(ref):
        score *= math.exp(1 - len(ref) / len(cand))
    return score


# -- unit oracles -----------------------------------------------------------------

def test_bleu_examples():
    assert bleu(split("a b c"), split("a b c")) == 1.0
    assert bleu(split("a b"), split("c d")) == 0.0
    expected = (4 / 5 * 3 / 4 * 2 / 3 * 1 / 2) ** 0.25
    assert bleu(split("a b c d e"), split("a b c d f")) == pytest.approx(expected, abs=1e-9)
    assert expected == pytest.approx(0.6687, abs=1e-4)


def test_bleu_brevity_penalty_flag():
    ref, cand = split("a b c d e f"), split("a b c")
    assert bleu(ref, cand) == pytest.approx(math.exp(1 - 6 / 3), abs=1e-9)
    assert bleu(ref, cand, brevity_penalty=False) == 1.0


def test_bleu_short_sequences_cap_the_order():
    assert bleu(["x"], ["x"]) == 1.0
    assert bleu(split("a b"), split("a c")) == 0.0  # bigram precision is zero


def test_cosine_and_jaccard_examples():
    assert cosine_sim(split("a b"), split("a b")) == pytest.approx(1.0)
    assert cosine_sim(split("a"), split("b")) == 0.0
    assert cosine_sim(split("a a b"), split("a b b")) == pytest.approx(0.8, abs=1e-9)
    assert jaccard_sim(split("a b c"), split("c b a")) == 1.0
    assert jaccard_sim(split("a"), split("b")) == 0.0
    assert jaccard_sim(split("a b c"), split("b c d")) == pytest.approx(0.5, abs=1e-9)


def test_ochiai_examples():
    assert ochiai({"t1", "t2"}, {"t1", "t2"}) == 1.0
    assert ochiai({"t1"}, {"t2"}) == 0.0
    assert ochiai({"t1", "t2"}, {"t1"}) == pytest.approx(1 / math.sqrt(2), abs=1e-9)
    assert ochiai(set(), {"t1"}) == 0.0 == ochiai(set(), set())


@pytest.mark.parametrize("fn", [bleu, cosine_sim, jaccard_sim])
def test_empty_sequences_rejected(fn):
    with pytest.raises(EmptySequence):
        fn([], ["a"])
    with pytest.raises(EmptySequence):
        fn(["a"], [])


def test_metric_lookup():
    assert syntactic("bleu", ["a"], ["a"]) == 1.0
    with pytest.raises(ValueError):
        syntactic("rouge", ["a"], ["a"])


# -- properties -----------------------------------------------------------------

tokens = st.lists(st.sampled_from(["a", "b", "c", "d", "e"]), min_size=1, max_size=12)
test_sets = st.sets(st.sampled_from(["t1", "t2", "t3", "t4"]))


@settings(max_examples=200)
@given(tokens, tokens)
def test_bleu_matches_brute_force(ref, cand):
    assert bleu(ref, cand) == pytest.approx(brute_bleu(ref, cand), abs=1e-9)


@given(tokens, tokens)
def test_bounds_and_symmetry(x, y):
    for fn in (bleu, cosine_sim, jaccard_sim):
        assert 0.0 <= fn(x, y) <= 1.0
        assert fn(x, x) == pytest.approx(1.0)
    assert cosine_sim(x, y) == pytest.approx(cosine_sim(y, x))
    assert jaccard_sim(x, y) == jaccard_sim(y, x)


@given(test_sets, test_sets)
def test_ochiai_symmetric_and_one_iff_equal(a, b):
    assert ochiai(a, b) == ochiai(b, a)
    assert 0.0 <= ochiai(a, b) <= 1.0
    assert (ochiai(a, b) == 1.0) == (a == b and bool(a))


def test_bleu_is_asymmetric_somewhere():
    ref, cand = split("a b c d e f"), split("a b c d")
    assert bleu(ref, cand) != bleu(cand, ref)


def test_record_bounds():
    with pytest.raises(ValueError):
        SimilarityRecord("m", "f", 1.5, 0.0, BLEU)
    assert SimilarityRecord("m", "f", 0.5, 1.0, BLEU).to_dict()["span"] == [0, 0]


# -- similarity tables ---------------------------------------------------------------

@pytest.fixture(scope="module")
def gcd_setup(entries):
    entry = entries["gcd"]
    program = parse(entry.fixed_source)
    mutants = generate_grammar_mutants(program)
    matrix = execute_all(program, mutants, entry.tests)
    return execute_reference(entry), mutants, matrix


def test_gcd_file_table_has_a_row_per_valid_mutant(gcd_setup):
    fault, mutants, matrix = gcd_setup
    table = similarity_table(matrix, fault, mutants)
    assert len(table) == len(mutants) - len(matrix.ids(INVALID))
    assert [r.mutant_id for r in table] == sorted(r.mutant_id for r in table)


def test_mutant_equal_to_fault_scores_one(gcd_setup):
    fault, mutants, matrix = gcd_setup
    table = {r.mutant_id: r for r in similarity_table(matrix, fault, mutants)}
    exact = [m for m in mutants if tuple(lex(m.patched_source).texts) == fault.faulty_tokens]
    assert exact
    for m in exact:
        record = table[m.id]
        assert record.syntactic == 1.0 and record.semantic == 1.0 and record.exact_match


def test_survived_mutants_have_zero_semantic(gcd_setup):
    fault, mutants, matrix = gcd_setup
    survived = set(matrix.ids(SURVIVED))
    assert survived
    for r in similarity_table(matrix, fault, mutants):
        if r.mutant_id in survived:
            assert r.semantic == 0.0


@pytest.mark.parametrize("granularity", GRANULARITIES)
@pytest.mark.parametrize("metric", SYNTACTIC_METRICS)
def test_every_granularity_and_metric_is_computable(entries, granularity, metric):
    for name in ("clamp", "digits", "triangle"):
        entry = entries[name]
        program = parse(entry.fixed_source)
        mutants = generate_grammar_mutants(program)
        matrix = execute_all(program, mutants, entry.tests)
        fault = execute_reference(entry)
        table = similarity_table(matrix, fault, mutants, metric, granularity)
        assert table, (name, granularity)
        for r in table:
            assert r.granularity == granularity and r.metric_name == metric
            if granularity == FUNCTION:
                assert r.function in fault.changed_functions
            if granularity == PATCH:
                assert r.at_patch


def test_patch_table_semantic_matches_file(gcd_setup):
    fault, mutants, matrix = gcd_setup
    file_rows = {r.mutant_id: r for r in similarity_table(matrix, fault, mutants, granularity=FILE)}
    for r in similarity_table(matrix, fault, mutants, granularity=PATCH):
        assert r.semantic == file_rows[r.mutant_id].semantic


def test_patch_regions_cover_every_fault(corpus):
    for entry in corpus:
        fault = execute_reference(entry)
        regions = patch_regions(fault)
        assert regions, entry.name
        for r in regions:
            assert 0 <= r.lo < r.hi <= len(fault.fixed_tokens)
            assert r.hi - r.lo + r.delta > 0


def test_patch_slice_of_exact_mutant_equals_fault_slice(gcd_setup):
    fault, mutants, matrix = gcd_setup
    rows = similarity_table(matrix, fault, mutants, granularity=PATCH)
    assert any(r.exact_match and r.syntactic == 1.0 for r in rows)


def test_unknown_granularity_rejected(gcd_setup):
    fault, mutants, matrix = gcd_setup
    with pytest.raises(ValueError):
        similarity_table(matrix, fault, mutants, granularity="LINE")
