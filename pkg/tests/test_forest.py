from math import comb

import pytest
from hypothesis import given, strategies as st

from qschub.errors import BoundExceededError, ParseError
from qschub.forest import (
    IndexedForest,
    MarkedNestedForest,
    NestedForest,
    ct_monomial,
    enumerate_nsuppfor,
    enumerate_suppfor,
    parse_forest,
    product,
)
from qschub.ops import Letter, apply_word
from qschub.poly import monomial
from qschub.rtword import trim_set
from qschub.verify import monomials


def catalan(n):
    return comb(2 * n, n) // (n + 1)


def ballot(n, i):
    return (n - i) * comb(n + i, i) // (n + i)


def test_codes_of_small_forests():
    assert IndexedForest(()).code == ()
    assert IndexedForest(()).times(3).code == (0, 0, 1)
    assert MarkedNestedForest.generator_r(1).aug_code == ((1, 0),)


def test_qdes_and_trimming():
    wedge3 = IndexedForest(()).times(3)
    assert wedge3.qdes() == (3,)
    assert wedge3.trim_at(3) == IndexedForest(())
    comb_left = IndexedForest(()).times(1).times(1)
    assert comb_left.qdes() == (1,)


def test_thompson_relation():
    e = IndexedForest(())
    for i in range(2, 5):
        for j in range(1, i):
            assert e.times(i).times(j) == e.times(j).times(i + 1)


def test_ct_monomial_small():
    wedge = IndexedForest(()).times(1).nested()
    assert ct_monomial(wedge, (1,)) == 1
    assert ct_monomial(wedge, (0, 1)) == -1
    assert ct_monomial(wedge, ()) == 0


@pytest.mark.parametrize("n", range(1, 8))
def test_ballot_grading_and_catalan_total(n):
    forests = enumerate_suppfor(n)
    assert len(forests) == catalan(n)
    for i in range(n):
        assert sum(1 for F in forests if F.size == i) == ballot(n, i)


def test_nested_counts_are_large_schroeder():
    assert [len(enumerate_nsuppfor(n)) for n in range(1, 6)] == [1, 2, 6, 22, 90]


def test_enumeration_bound():
    with pytest.raises(BoundExceededError):
        enumerate_suppfor(12)


def test_ct_monomial_agrees_with_operators():
    monos = monomials(4, 4)
    for F in enumerate_nsuppfor(4):
        for word in trim_set(F, 4):
            for m in monos:
                (code,) = [k for k, _q, _c in m.terms()] or [()]
                assert ct_monomial(F, code) == apply_word(word, m).ct()


@pytest.mark.parametrize("text", ["c=(1,0,2)", "{1,3,4,5}:^^..^..", "{1,2}:^.. {3,4}*:^..", "a=((1,0),(0,1),(1,0))"])
def test_text_roundtrip(text):
    F = parse_forest(text)
    assert parse_forest(str(F)) == F


@pytest.mark.parametrize("text", ["c=1,2", "{1,3}:^.", "{3,1}:^..", "{1,2}:x"])
def test_bad_forest_text(text):
    with pytest.raises(ParseError):
        parse_forest(text)


words = st.lists(st.tuples(st.sampled_from("rt"), st.integers(1, 4)), max_size=5)


def _build(word):
    F = MarkedNestedForest.empty()
    for kind, i in word:
        F = F.times_t(i) if kind == "t" else F.times_r(i)
    return F


@given(words, words, words)
def test_marked_product_is_associative(a, b, c):
    A, B, C = _build(a), _build(b), _build(c)
    assert product(product(A, B), C) == product(A, product(B, C))
    assert product(A, B) == _build(a + b)


@given(words)
def test_normal_form_roundtrip(a):
    F = _build(a)
    assert MarkedNestedForest.from_aug_code(F.aug_code) == F
    G = MarkedNestedForest.empty()
    for letter in F.word():
        G = G.times_t(letter.index) if letter.kind == "t" else G.times_r(letter.index)
    assert G == F


@given(words, st.lists(st.integers(0, 2), min_size=4, max_size=4))
def test_normal_form_word_acts_like_any_word(a, exps):
    F = _build(a)
    word = tuple(F.word())
    original = tuple(Letter(k, i) for k, i in a)
    f = monomial(tuple(exps)) + monomial((1, 1))
    assert apply_word(word, f) == apply_word(original, f)
