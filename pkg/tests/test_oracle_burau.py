from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from braidhfk.braid import BraidWord, closure_structure, conjugate, stabilize
from braidhfk.oracle.burau import Laurent, alexander_from_burau, burau_matrix

from conftest import word


def poly(d):
    return {k: v for k, v in d.items() if v}


def test_laurent_arithmetic():
    t = Laurent.mono(1, 1)
    one = Laurent.mono(1)
    p = (one - t) * (one + t)
    assert poly(p) == {0: 1, 2: -1}
    assert poly(p.divide(one - t)) == {0: 1, 1: 1}
    assert p.at_one() == 0


def test_generator_and_inverse_cancel():
    n = 4
    for i in range(1, n):
        a, b = burau_matrix(n, i, 1), burau_matrix(n, i, -1)
        prod = [[sum((a[r][k] * b[k][c] for k in range(n - 1)), Laurent()) for c in range(n - 1)]
                for r in range(n - 1)]
        for r in range(n - 1):
            for c in range(n - 1):
                assert poly(prod[r][c]) == ({0: 1} if r == c else {})


# textbook Alexander polynomials
KNOWN = {
    ("", 1): {0: 1},
    ("1", 2): {0: 1},
    ("1 1 1", 2): {-1: 1, 0: -1, 1: 1},
    ("1 -2 1 -2", 3): {-1: -1, 0: 3, 1: -1},
    ("1 1 1 1 1", 2): {-2: 1, -1: -1, 0: 1, 1: -1, 2: 1},
    ("1 2 1 2 1 2 1 2", 3): {-3: 1, -2: -1, 0: 1, 2: -1, 3: 1},
}


def test_known_polynomials():
    for (text, n), want in KNOWN.items():
        assert poly(alexander_from_burau(word(text, n))) == want, text


def test_mirror_has_same_polynomial():
    assert poly(alexander_from_burau(word("-1 -1 -1", 2))) == KNOWN[("1 1 1", 2)]


knot_words = st.integers(2, 4).flatmap(lambda n: st.lists(
    st.tuples(st.integers(1, n - 1), st.sampled_from((1, -1))), max_size=7).map(
        lambda ls: BraidWord(n, tuple(ls)))).filter(
            lambda w: closure_structure(w).component_count == 1)


@settings(max_examples=40, deadline=None)
@given(knot_words)
def test_normalized_symmetric_and_unit_at_one(w):
    p = poly(alexander_from_burau(w))
    assert p == {-k: v for k, v in p.items()}
    assert sum(p.values()) == 1


@settings(max_examples=25, deadline=None)
@given(knot_words, st.data())
def test_markov_invariant(w, data):
    i = data.draw(st.integers(1, w.strands - 1))
    s = data.draw(st.sampled_from((1, -1)))
    base = poly(alexander_from_burau(w))
    assert poly(alexander_from_burau(conjugate(w, i, s))) == base
    assert poly(alexander_from_burau(stabilize(w, s))) == base
