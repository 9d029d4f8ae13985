from __future__ import annotations

import re

import pytest
from hypothesis import given, strategies as st

from faultseed.lexing import (
    IDENT, INT_LIT, KEYWORD, OPERATOR, PUNCT, LexError, lex, render, split_identifier,
)


def kinds_and_texts(source):
    return [(t.kind, t.text) for t in lex(source).tokens]


def test_simple_expression():
    assert kinds_and_texts("a == b") == [(IDENT, "a"), (OPERATOR, "=="), (IDENT, "b")]


def test_maximal_munch():
    assert kinds_and_texts("a<=b") == [(IDENT, "a"), (OPERATOR, "<="), (IDENT, "b")]
    assert lex("a<=b").texts != ["a", "<", "=", "b"]


def test_assignment_statement_kinds():
    assert [t.kind for t in lex("x1 = 10;").tokens] == [IDENT, OPERATOR, INT_LIT, PUNCT]


def test_keywords_and_comments():
    stream = lex("fn f() { // comment\n return 1; }")
    assert stream.texts == ["fn", "f", "(", ")", "{", "return", "1", ";", "}"]
    assert stream.tokens[0].kind == KEYWORD
    assert stream.tokens[5].kind == KEYWORD


def test_illegal_character_reports_offset():
    with pytest.raises(LexError) as info:
        lex("a = $;")
    assert info.value.offset == 4


def test_blank_source_is_empty():
    assert len(lex("   \n// only a comment\n")) == 0


def test_split_identifier():
    assert split_identifier("digit_sum") == ["digit", "sum"]
    assert split_identifier("inRange") == ["in", "range"]
    assert split_identifier("getMaxValue") == ["get", "max", "value"]


def test_corpus_files_lex(corpus):
    for entry in corpus:
        for source in (entry.fixed_source, entry.faulty_source):
            assert len(lex(source)) > 0


pieces = st.sampled_from(
    ["a", "b", "x1", "count", "0", "7", "42", "+", "-", "*", "/", "%", "<", "<=", ">", ">=",
     "==", "!=", "&&", "||", "!", "=", "(", ")", "{", "}", ",", ";", "?", ":", "if", "while",
     "return", "fn", "else"])
gaps = st.sampled_from([" ", "  ", "\n", "\t", " // note\n"])


@given(st.lists(st.tuples(pieces, gaps), min_size=1, max_size=30))
def test_spans_reproduce_source(parts):
    source = "".join(p + g for p, g in parts)
    stream = lex(source)
    assert stream.texts == [p for p, _ in parts]
    previous_end = 0
    for tok in stream.tokens:
        assert tok.start >= previous_end
        assert source[tok.start:tok.end] == tok.text
        gap = source[previous_end:tok.start]
        assert re.fullmatch(r"(\s|//[^\n]*)*", gap)
        previous_end = tok.end


@given(st.lists(pieces, min_size=1, max_size=30))
def test_render_relex_is_idempotent(texts):
    once = lex(render(texts)).texts
    assert lex(render(once)).texts == once == texts
