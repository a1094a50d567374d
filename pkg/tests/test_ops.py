import pytest
from hypothesis import given, strategies as st

from qschub.errors import ParseError
from qschub.ops import (
    R,
    T,
    apply_word,
    divided_difference,
    divided_difference_via_division,
    format_word,
    is_quasisymmetric,
    is_symmetric,
    parse_word,
    r_cyc,
    r_op,
    s_op,
    t_cyc,
    t_op,
    t_op_via_quotient,
)
from qschub.poly import MultiPoly, exact_divide, parse, x
from strategies import polys

x1, x2, x3 = x(1), x(2), x(3)


def test_divided_difference_examples():
    assert divided_difference(1, x1) == 1
    assert not divided_difference(1, x1 * x2)
    assert divided_difference(1, x1**2) == x1 + x2


def test_r_and_t_examples():
    assert not r_op(2, x1**2 * x2)
    assert r_op(1, x2) == x1
    assert t_op(1, x1) == 1
    assert t_op(1, x2) == -1
    assert not t_op(1, x1 + x2)


def test_cyclic_variants():
    assert r_cyc(1, 3, x1) == x3
    assert r_cyc(2, 3, x1 * x2**2) == x1 * x3**2
    assert t_cyc(1, 2, x1) == 1
    assert t_cyc(1, 3, x1) == 1


def test_quasisymmetry_membership():
    assert is_quasisymmetric(x1 + x2, 2) and is_symmetric(x1 + x2, 2)
    m21 = parse("x1*x2^2 + x1*x3^2 + x2*x3^2")
    assert is_quasisymmetric(m21, 3) and not is_symmetric(m21, 3)
    assert not is_quasisymmetric(x2, 2)


def test_words():
    word = parse_word("r1 t1, t2 t1 r2")
    assert word == (R(1), T(1), T(2), T(1), R(2))
    assert format_word(word) == "r1 t1 t2 t1 r2"
    assert apply_word((), x1 + 1) == x1 + 1
    assert apply_word((R(1),) * 3, MultiPoly.one() * 5) == 5
    with pytest.raises(ParseError):
        parse_word("r1 s2")


def test_applying_t2_t1_equals_t1_t3():
    f = parse("x1^2*x3 + 2*x2*x4^2 - x3^3 + x1*x2*x3*x4")
    assert t_op(2, t_op(1, f)) == t_op(1, t_op(3, f))


@given(polys(), st.integers(1, 4))
def test_closed_forms_match_division(f, i):
    assert divided_difference(i, f) == divided_difference_via_division(i, f)
    assert t_op(i, f) == t_op_via_quotient(i, f)
    assert t_op(i, f) == r_op(i, divided_difference(i, f)) == r_op(i + 1, divided_difference(i, f))


@given(polys(), st.integers(1, 4))
def test_nil_hecke(f, i):
    d = divided_difference
    assert not d(i, d(i, f))
    assert d(i, d(i + 1, d(i, f))) == d(i + 1, d(i, d(i + 1, f)))
    assert d(i, d(i + 3, f)) == d(i + 3, d(i, f))


@given(polys(), polys(max_vars=3, max_degree=2), st.integers(1, 4))
def test_twisted_leibniz(f, g, i):
    d = divided_difference
    assert d(i, f * g) == f * d(i, g) + d(i, f) * s_op(i, g)


@given(polys(max_vars=6), st.integers(1, 4), st.integers(0, 3))
def test_thompson_relations(f, j, gap):
    i = j + gap
    if i > j:
        assert t_op(i, t_op(j, f)) == t_op(j, t_op(i + 1, f))
        assert r_op(i, t_op(j, f)) == t_op(j, r_op(i + 1, f))
    assert t_op(i, r_op(j, f)) == r_op(j, t_op(i + 1, f))
    assert r_op(i, r_op(j, f)) == r_op(j, r_op(i + 1, f))


@given(polys(max_vars=6), st.integers(1, 4))
def test_tr_relation(f, i):
    assert t_op(i, r_op(i + 1, f)) == r_op(i, t_op(i + 1, f)) + r_op(i + 1, t_op(i, f))


@given(polys(max_vars=4), st.integers(1, 3))
def test_t_cyc_matches_quotient_definition(f, i):
    n = 4
    num = r_cyc(i + 1, n, f) - r_cyc(i, n, f)
    assert t_cyc(i, n, f) == exact_divide(num, x(i) - x(n))
