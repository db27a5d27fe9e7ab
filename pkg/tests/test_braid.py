import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from braidhfk.braid import (BraidParseError, BraidWord, closure_structure, markov_variants,
                            parse_braid, random_word, reverse_invert)


def test_parse_forms_agree():
    a = parse_braid("1 -2 1 -2", 3)
    b = parse_braid("s1 S2 s1 S2", 3)
    c = parse_braid(json.dumps({"strands": 3, "word": [1, -2, 1, -2]}))
    assert a == b == c
    assert a.letters == ((1, 1), (2, -1), (1, 1), (2, -1))


def test_strands_inferred():
    assert parse_braid("1 2").strands == 3
    assert parse_braid("").strands == 1


@pytest.mark.parametrize("text,n", [("1 x", 2), ("0", 2), ("3", 3), ('{"word": [1]}', None),
                                    ("1.5", 3)])
def test_parse_errors(text, n):
    with pytest.raises(BraidParseError):
        parse_braid(text, n)


def test_closure_components():
    assert closure_structure(parse_braid("", 3)).component_count == 3
    assert closure_structure(parse_braid("1 1", 2)).component_count == 2
    assert closure_structure(parse_braid("1 2", 3)).component_count == 1


def test_reverse_invert():
    w = parse_braid("1 -2 2", 3)
    assert reverse_invert(w).letters == ((2, -1), (2, 1), (1, -1))
    assert reverse_invert(reverse_invert(w)) == w


words = st.integers(1, 5).flatmap(lambda n: st.integers(0, 8).map(
    lambda k: random_word(random.Random(n * 31 + k), n, k if n > 1 else 0)))


@given(words, st.integers(0, 100))
def test_markov_variants_keep_component_count(w, seed):
    c = closure_structure(w).component_count
    for v in markov_variants(w, seed, 3):
        assert closure_structure(v).component_count == c
        assert v.strands >= w.strands


@given(words)
def test_json_roundtrip(w):
    assert parse_braid(json.dumps(w.to_json())) == w
    assert isinstance(w, BraidWord)
