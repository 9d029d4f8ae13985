from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st
from scipy import stats

from faultseed.analysis import (
    DegenerateVariance, NoKilledMutants, TooFewMutants, correlations, cross_tool_subsumption,
    kendall_tau_a, location_sensitivity, pearson_r, quartiles, resemblance, subsumption,
    subsumption_from_sets, summarize_resemblance, tau_p_value,
)
from faultseed.engines import generate_grammar_mutants
from faultseed.harness import KILLED, SURVIVED, KillMatrix, KillVector, execute_all, execute_reference
from faultseed.metrics import BLEU, FILE, SimilarityRecord, similarity_table
from faultseed.minilang import parse, run_test


def rec(mid, syn, sem=0.0, fault="f", **kw):
    return SimilarityRecord(mid, fault, syn, sem, BLEU, **kw)


def matrix_of(sets, tests=("t1", "t2", "t3")):
    vectors = {m: KillVector(m, KILLED if s else SURVIVED, frozenset(s)) for m, s in sets.items()}
    return KillMatrix("s", tuple(tests), vectors)


# -- quartiles ----------------------------------------------------------------------

def test_even_split():
    part = quartiles([rec(f"m{i}", i / 10) for i in range(8)])
    assert [len(q) for q in part.quartiles] == [2, 2, 2, 2]
    assert part.q1 == ("m0", "m1") and part.q4 == ("m6", "m7")


def test_remainder_goes_low():
    part = quartiles([rec(f"m{i}", i / 10) for i in range(9)])
    assert [len(q) for q in part.quartiles] == [3, 2, 2, 2]


def test_ties_split_by_id():
    part = quartiles([rec(m, 0.5) for m in ["d", "b", "a", "c"]])
    assert part.quartiles == (("a",), ("b",), ("c",), ("d",))


def test_too_few_records():
    with pytest.raises(TooFewMutants):
        quartiles([rec("a", 0.1)] * 3)


@given(st.lists(st.floats(0, 1), min_size=4, max_size=40))
def test_partition_reassembles_input(scores):
    records = [rec(f"m{i:02d}", s) for i, s in enumerate(scores)]
    part = quartiles(records)
    flat = [m for q in part.quartiles for m in q]
    assert sorted(flat) == sorted(r.mutant_id for r in records)
    sizes = [len(q) for q in part.quartiles]
    assert max(sizes) - min(sizes) <= 1 and sizes == sorted(sizes, reverse=True)
    by_id = {r.mutant_id: r.syntactic for r in records}
    assert [by_id[m] for m in flat] == sorted(by_id.values())


# -- resemblance --------------------------------------------------------------------

def test_single_resembling_mutant_in_q1():
    records = [rec("a", 0.1, 1.0), rec("b", 0.2), rec("c", 0.3, 0.5), rec("d", 0.9)]
    report = resemblance(records, quartiles(records))
    assert report.resembled and report.quartile_resembled == (True, False, False, False)
    assert report.ratio == pytest.approx(0.25)


def test_no_resembling_mutant():
    records = [rec(m, 0.5, 0.7) for m in "abcd"]
    assert not resemblance(records, quartiles(records)).resembled


def test_resemblance_requires_one_fault():
    with pytest.raises(ValueError):
        resemblance([rec("a", 0.1, fault="x"), rec("b", 0.1, fault="y")])


def test_summary_percentages():
    hit = resemblance([rec("a", 1.0, 1.0, exact_match=True), rec("b", 0.2)])
    miss = resemblance([rec("a", 0.3), rec("b", 0.2)], None)
    summary = summarize_resemblance([hit, miss])
    assert summary.resembled_pct == 50.0 and summary.exact_match_pct == 50.0
    assert summary.mean_ratio == pytest.approx(0.25)


def test_resemblance_matches_brute_force_execution(entries):
    # the gcd fault weakens `!= 0` to `> 0`; the relational catalog holds its twin
    entry = entries["gcd"]
    program = parse(entry.fixed_source)
    mutants = generate_grammar_mutants(program)
    matrix = execute_all(program, mutants, entry.tests)
    fault = execute_reference(entry)
    records = similarity_table(matrix, fault, mutants)
    report = resemblance(records, quartiles(records))
    faulty = parse(entry.faulty_source)
    fault_fails = {t.id for t in entry.tests if run_test(faulty, t, reference=True).failed}
    twins = 0
    for m in mutants:
        p = parse(m.patched_source)
        if {t.id for t in entry.tests if run_test(p, t, reference=True).failed} == fault_fails:
            twins += 1
    assert report.resembled and report.resembling == twins >= 1
    assert report.ratio == pytest.approx(twins / len(records))
    # every resembling mutant fails exactly the fault's tests
    for r in records:
        if r.semantic == 1.0:
            assert matrix[r.mutant_id].failing_tests == fault.failing_tests


# -- correlation --------------------------------------------------------------------

def test_identical_and_reversed_orderings():
    xs = [0.1, 0.4, 0.2, 0.9, 0.5]
    same = correlations([rec(f"m{i}", x, x) for i, x in enumerate(xs)])
    assert same.kendall_tau_a == pytest.approx(1.0) and same.pearson_r == pytest.approx(1.0)
    flipped = correlations([rec(f"m{i}", x, 1 - x) for i, x in enumerate(xs)])
    assert flipped.kendall_tau_a == pytest.approx(-1.0) and flipped.pearson_r == pytest.approx(-1.0)


def test_three_pair_tau():
    assert kendall_tau_a([0.1, 0.2, 0.3], [0.5, 0.4, 0.9]) == pytest.approx(1 / 3, abs=1e-9)


def test_constant_coordinate_leaves_r_undefined():
    result = correlations([rec(f"m{i}", i / 10, 0.0) for i in range(5)])
    assert result.pearson_r is None and result.r_p is None
    assert result.kendall_tau_a == 0.0
    with pytest.raises(DegenerateVariance):
        pearson_r([1, 2, 3], [5, 5, 5])
    with pytest.raises(TooFewMutants):
        correlations([rec("a", 0.1), rec("b", 0.2)])


def brute_tau(xs, ys):
    n, score = len(xs), 0
    for i, j in combinations(range(n), 2):
        product = (xs[i] - xs[j]) * (ys[i] - ys[j])
        score += (product > 0) - (product < 0)
    return score / (n * (n - 1) / 2)


pairs = st.lists(st.tuples(st.sampled_from([0.0, 0.25, 0.5, 0.75, 1.0]),
                           st.floats(-5, 5, allow_nan=False)), min_size=2, max_size=40)


@settings(max_examples=100)
@given(pairs, st.integers(1, 7))
def test_tau_matches_enumeration_for_any_chunk(data, chunk):
    xs, ys = zip(*data)
    assert kendall_tau_a(xs, ys, chunk=chunk) == pytest.approx(brute_tau(xs, ys))


@given(pairs)
def test_tau_invariant_under_cubing(data):
    xs, ys = zip(*data)
    assert kendall_tau_a([x ** 3 for x in xs], ys) == pytest.approx(kendall_tau_a(xs, ys))


def test_p_values_against_scipy():
    xs = [0.1, 0.4, 0.35, 0.8, 0.2, 0.9, 0.6, 0.55]
    ys = [0.3, 0.5, 0.2, 0.9, 0.1, 0.7, 0.8, 0.4]
    result = correlations([rec(f"m{i}", x, y) for i, (x, y) in enumerate(zip(xs, ys))])
    r, p = stats.pearsonr(xs, ys)
    assert result.pearson_r == pytest.approx(r) and result.r_p == pytest.approx(p)
    # without ties tau-a equals tau-b
    assert result.kendall_tau_a == pytest.approx(stats.kendalltau(xs, ys).statistic)
    assert 0 < tau_p_value(result.kendall_tau_a, 8) < 1
    assert tau_p_value(0.0, 50) == pytest.approx(1.0)


# -- subsumption ---------------------------------------------------------------------

def test_subset_subsumes_superset():
    graph = subsumption(matrix_of({"m1": {"t1"}, "m2": {"t1", "t2"}}))
    assert graph.subsuming_groups == [frozenset({"m1"})]
    assert len(graph.edges) == 1


def test_single_group():
    graph = subsumption(matrix_of({"a": {"t1"}, "b": {"t1"}, "c": set()}))
    assert graph.groups == (frozenset({"a", "b"}),) and not graph.edges
    assert graph.subsuming_mutants == {"a", "b"}


def test_incomparable_groups_both_subsume():
    graph = subsumption(matrix_of({"m1": {"t1"}, "m2": {"t2"}}))
    assert len(graph.groups) == 2 and not graph.edges and len(graph.subsuming) == 2


def test_no_killed_mutants():
    with pytest.raises(NoKilledMutants):
        subsumption(matrix_of({"a": set()}))


killsets = st.dictionaries(st.sampled_from([f"m{i}" for i in range(10)]),
                           st.frozensets(st.sampled_from(["t1", "t2", "t3", "t4"]), min_size=1),
                           min_size=1)


@settings(max_examples=100)
@given(killsets)
def test_subsumption_matches_brute_force(sets):
    graph = subsumption_from_sets(sets)
    # brute force on mutants: m is subsuming iff no other mutant's set is a proper subset of its own
    expected = {m for m, s in sets.items() if not any(o < s for o in sets.values())}
    assert graph.subsuming_mutants == expected
    n = len(graph.groups)
    for i in range(n):
        assert (i, i) not in graph.edges
        for j in range(n):
            assert not ((i, j) in graph.edges and (j, i) in graph.edges)
            for k in range(n):
                if (i, j) in graph.edges and (j, k) in graph.edges:
                    assert (i, k) in graph.edges


# -- cross-tool contribution -----------------------------------------------------------

def brute_contribution(pools, a, b):
    """Enumerate mutants instead of groups: a failing set is subsuming when no
    pooled set is a proper subset of it."""
    all_sets = [s for pool in pools.values() for s in pool.values() if s]
    top = {s for s in all_sets if not any(o < s for o in all_sets)}
    owners = {s: {t for t, pool in pools.items() if s in pool.values()} for s in top}
    with_a = sum(a in o for o in owners.values())
    extra = sum(b in o and a not in o for o in owners.values())
    return extra / with_a if with_a else None


def test_duplicated_tool_contributes_nothing():
    a = matrix_of({"a1": {"t1"}, "a2": {"t2"}})
    b = matrix_of({"b1": {"t1"}})
    table = cross_tool_subsumption({"A": a, "B": b})
    assert table[("A", "B")] == 0.0
    assert table[("B", "A")] == 1.0


def test_disjoint_tools_each_contribute_fully():
    table = cross_tool_subsumption({"A": matrix_of({"a": {"t1"}}), "B": matrix_of({"b": {"t2"}})})
    assert table[("A", "B")] == 1.0 and table[("B", "A")] == 1.0


def test_tool_without_subsuming_mutants():
    table = cross_tool_subsumption({"A": matrix_of({"a": {"t1", "t2"}}), "B": matrix_of({"b": {"t1"}})})
    assert table[("A", "B")] is None and table[("B", "A")] == 0.0


def test_mismatched_tests_rejected():
    with pytest.raises(ValueError):
        cross_tool_subsumption({"A": matrix_of({"a": {"t1"}}), "B": matrix_of({"b": {"t1"}}, ("t1",))})


@settings(max_examples=100)
@given(st.lists(st.tuples(st.sampled_from("ABC"),
                          st.frozensets(st.sampled_from(["t1", "t2", "t3"]))), min_size=1, max_size=6))
def test_contribution_matches_enumeration(drawn):
    pools = {t: {} for t in "ABC"}
    for i, (tool, s) in enumerate(drawn):
        pools[tool][f"m{i}"] = s
    if not any(s for pool in pools.values() for s in pool.values()):
        return
    matrices = {t: matrix_of({m: set(s) for m, s in pool.items()}) for t, pool in pools.items()}
    table = cross_tool_subsumption(matrices)
    for (a, b), value in table.items():
        expected = brute_contribution(pools, a, b)
        assert value == (None if expected is None else pytest.approx(expected))


# -- same-location sensitivity -----------------------------------------------------------

def test_location_pairs():
    records = [
        rec("a", 0.9, 1.0, function="f", span=(3, 4), at_patch=True),
        rec("b", 0.8, 1.0, function="f", span=(3, 4)),
        rec("c", 0.5, 0.2, function="f", span=(9, 10)),
        rec("d", 0.1, 0.7, function="f", span=(9, 10)),
        rec("e", 0.4, 0.0, function="g", span=(1, 2)),
    ]
    deltas = location_sensitivity(records)
    assert deltas.patch == [(pytest.approx(0.1), 0.0)]
    assert deltas.other == [(pytest.approx(0.4), pytest.approx(0.5))]


def test_gcd_relational_pair_at_one_site(entries):
    entry = entries["gcd"]
    program = parse(entry.fixed_source)
    fault = execute_reference(entry)
    site = [m for m in generate_grammar_mutants(program)
            if m.operator_id == "RELATIONAL_REPLACEMENT" and m.original_tokens == ["!="]]
    matrix = execute_all(program, site, entry.tests)
    records = similarity_table(matrix, fault, site, granularity=FILE)
    deltas = location_sensitivity(records)
    n = len(records)
    assert len(deltas.patch) == n * (n - 1) // 2 and not deltas.other
    assert all(d_syn < 0.1 for d_syn, _ in deltas.patch)
