import pytest
from hypothesis import given, strategies as st

from qschub.errors import ParseError, PreconditionError
from qschub.ops import parse_word
from qschub.perm import (
    Permutation,
    bruhat_leq,
    decreasing_chain_targets,
    ell_sequence,
    from_ell_sequence,
    from_lehmer_code,
    grassmannian_sort,
    ins,
    ins_inverse,
    interval,
    lehmer_code,
    maximal_pairs,
    reduced_word,
    symmetric_group,
    uv_of,
)

P = Permutation.parse


def test_parse_and_canonical_form():
    assert P("2134") == P("21") and str(P("2134")) == "21"
    assert P("10,1,2,3,4,5,6,7,8,9").window(10)[0] == 10
    with pytest.raises(ParseError):
        P("1a3")
    with pytest.raises(ParseError):
        P("113")
    with pytest.raises(PreconditionError):
        Permutation((1, 1))


def test_insertion():
    assert ins(3, P("143652")) == P("2514763")
    assert ins(1, Permutation.identity()) == Permutation.identity()
    assert ins_inverse(P("2514763")) == (3, P("143652"))


def test_ell_sequence():
    assert ell_sequence(P("426153789"), 9) == (4, 2, 4, 1, 2, 1, 1, 1, 1)
    assert ell_sequence(Permutation.identity(), 5) == (1,) * 5
    assert from_ell_sequence((4, 2, 4, 1, 2, 1, 1, 1, 1)) == P("426153789")


def test_intervals():
    assert interval(P("132"), P("132")) == [P("132")]
    assert len(interval(Permutation.identity(), P("4321"))) == 24
    assert interval(P("321"), P("123")) == []


def test_bruhat_tableau_matches_cover_closure():
    group = list(symmetric_group(4))
    for u in group:
        above = set(interval(u, Permutation.longest(4), method="covers"))
        assert above == {v for v in group if bruhat_leq(u, v)}


def test_uv_examples():
    u, v = uv_of(parse_word("r1 t1 t2 t1 r2"))
    assert (u.window(5), v.window(5)) == ((2, 1, 4, 3, 5), (5, 1, 2, 4, 3))
    u, v = uv_of(parse_word("r1 t1 t1 r2 t4"))
    assert (u.window(5), v.window(5)) == ((3, 2, 4, 1, 5), (5, 2, 3, 4, 1))
    assert uv_of(parse_word("r1 r1 r1 r1")) == (Permutation.identity(),) * 2


def test_maximal_pairs():
    assert maximal_pairs(2) == [(Permutation.identity(), P("21"))]
    pairs = set(maximal_pairs(3))
    assert pairs == {uv_of(parse_word("r1 t1 t1")), uv_of(parse_word("r1 t1 t2"))}


def test_grassmannian_sorts_and_codes():
    assert grassmannian_sort(P("65412378"), 4) == P("14562378")
    g = grassmannian_sort(P("86541237"), 4)
    assert g == P("45681237")
    padded = lambda c: (tuple(c) + (0,) * 5)[:5]
    assert padded(lehmer_code(g)) == (3, 3, 3, 4, 0)
    assert padded(lehmer_code(grassmannian_sort(P("65412378"), 4))) == (0, 2, 2, 2, 0)


def test_decreasing_chains():
    got = decreasing_chain_targets(P("152436"), 3, 3)
    assert got[P("264135")] == (6, 4, 2)
    assert got[P("263415")] == (6, 3, 2)
    assert decreasing_chain_targets(P("2413"), 2, 0) == {P("2413"): ()}


@given(st.permutations(range(1, 7)))
def test_code_and_word_roundtrips(values):
    w = Permutation(tuple(values))
    assert from_lehmer_code(lehmer_code(w)) == w
    assert sum(lehmer_code(w)) == w.length() == len(reduced_word(w))
    prod = Permutation.identity()
    for a in reduced_word(w):
        prod = prod * Permutation.simple(a)
    assert prod == w
    assert from_ell_sequence(ell_sequence(w, 6)) == w


@given(st.permutations(range(1, 6)), st.permutations(range(1, 6)))
def test_inverse_and_length(a, b):
    u, v = Permutation(tuple(a)), Permutation(tuple(b))
    assert (u * v).inverse() == v.inverse() * u.inverse()
    assert u.inverse().length() == u.length()
    assert bruhat_leq(u, v) == bruhat_leq(u.inverse(), v.inverse())
