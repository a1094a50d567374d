import random
from math import prod

import pytest
from hypothesis import given, strategies as st

from qschub.errors import BoundExceededError, PreconditionError
from qschub.forest import enumerate_nsuppfor
from qschub.ops import apply_word, parse_word
from qschub.perm import interval, uv_of
from qschub.rtword import (
    box_contains,
    box_of,
    enumerate_rtseq,
    enumerate_star_matrices,
    forest_from_matrix,
    forest_of,
    format_matrix,
    is_rtseq,
    nested_forest_of,
    parse_matrix,
    rewrite_to_nonnested,
    specializations,
    star_matrix,
    trim_set,
    trimming_diagram,
    validate_rtseq_n,
    validate_star_matrix,
    word_from_matrix,
)
from qschub.verify import monomials

W = parse_word


def test_membership():
    assert is_rtseq(W("r1 t1 t2 t1 r2"), 5)
    assert not is_rtseq(W("t1 r1"))
    assert not is_rtseq(W("r1 r3"), 2)
    with pytest.raises(PreconditionError):
        validate_rtseq_n(W("r1 t2"), 2)


@pytest.mark.parametrize("n", range(1, 7))
def test_enumeration_size(n):
    assert sum(1 for _ in enumerate_rtseq(n)) == prod(2 * p - 1 for p in range(1, n + 1))


def test_two_words_share_a_forest():
    a, b = W("r1 t1 t2 t1 r2"), W("r1 t1 t1 r2 t4")
    assert forest_of(a) == forest_of(b)
    assert b in trim_set(nested_forest_of(a), 5)


@pytest.mark.parametrize("n", range(1, 6))
def test_trim_methods_agree_and_partition(n):
    total = 0
    for F in enumerate_nsuppfor(n):
        words = trim_set(F, n, method="filter")
        assert words == trim_set(F, n, method="backtrack")
        assert all(nested_forest_of(w) == F for w in words)
        total += len(words)
    assert total == sum(1 for _ in enumerate_rtseq(n))


def test_filter_bound():
    with pytest.raises(BoundExceededError):
        trim_set(enumerate_nsuppfor(2)[0], 8, method="filter")


def test_matrix_examples():
    assert star_matrix(W("r1")) == (("1",),)
    assert format_matrix(star_matrix(W("r1 t1"))) == "* 1\n1 0"
    assert format_matrix(star_matrix(W("r1 t1 t1"))) == "* 1 0\n* 0 1\n1 0 0"
    assert format_matrix(star_matrix(W("r1 t1 t1 r2"))) == "0 1 0 0\n* 0 1 0\n* 0 0 1\n1 0 0 0"
    expected = "0 0 0 * 1\n0 1 0 0 0\n* 0 1 0 0\n* 0 0 1 0\n1 0 0 0 0"
    assert format_matrix(star_matrix(W("r1 t1 t1 r2 t4"))) == expected
    assert parse_matrix(expected) == star_matrix(W("r1 t1 t1 r2 t4"))


@pytest.mark.parametrize("n", range(1, 6))
def test_matrix_model_is_exact(n):
    images = {star_matrix(w) for w in enumerate_rtseq(n)}
    assert len(images) == sum(1 for _ in enumerate_rtseq(n))
    assert images == set(enumerate_star_matrices(n))
    for w in enumerate_rtseq(n):
        M = star_matrix(w)
        assert validate_star_matrix(M)
        assert word_from_matrix(M) == w
        assert forest_from_matrix(M) == nested_forest_of(w)
        assert trimming_diagram(w).contract() == nested_forest_of(w)


def test_boxes():
    assert box_of(W("r1 t1 t1")) == ((1, 2), (1, 2))
    assert box_of(W("r1 r1 r2")) == ((1, 1), (2, 2))


@pytest.mark.parametrize("n", range(2, 5))
def test_specializations_are_subintervals(n):
    for w in enumerate_rtseq(n):
        u, v = uv_of(w)
        spans = set(interval(u, v))
        faces = set()
        for s in enumerate_rtseq(n):
            us, vs = uv_of(s)
            inside = bool(spans) and us in spans and vs in spans
            assert inside == box_contains(box_of(w), box_of(s))
            if inside:
                faces.add(s)
        assert faces == set(specializations(w)) & set(enumerate_rtseq(n))


def test_rewrite_example():
    assert rewrite_to_nonnested(W("r1 t1 r2")) == {W("r1 r1 t2"): 1, W("r1 r2 t1"): 1}
    for m in monomials(3, 2):
        assert apply_word(W("r1 t1 r2"), m) == apply_word(W("r1 r1 t2"), m) + apply_word(W("r1 r2 t1"), m)


@given(st.integers(1, 5).flatmap(lambda n: st.sampled_from(list(enumerate_rtseq(n)))), st.integers(0, 10**6))
def test_rewriting_preserves_the_functional_in_any_order(word, seed):
    n = len(word)
    a = rewrite_to_nonnested(word)
    b = rewrite_to_nonnested(word, order="random", rng=random.Random(seed))
    assert a == b
    for w in a:
        first_t = next((k for k, l in enumerate(w) if l.kind == "t"), len(w))
        assert all(l.kind == "t" for l in w[first_t:])
    for m in monomials(n, 3):
        assert apply_word(word, m) == sum(c * apply_word(w, m) for w, c in a.items())


def test_diagram_render_shape():
    text = trimming_diagram(W("r1 t1 t1")).render()
    assert text.count("o") == 6 and "b" in text and "r" in text
