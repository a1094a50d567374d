import pytest
from hypothesis import given, strategies as st

from qschub.errors import NotDivisibleError, ParseError, RingMismatchError
from qschub.poly import (
    MultiPoly,
    RationalFn,
    exact_divide,
    format_poly,
    monomial,
    parse,
    permute_vars,
    qvar,
    substitute,
    x,
)
from strategies import polys

x1, x2, x3 = x(1), x(2), x(3)


def test_cancellation_and_products():
    assert (x1 + x2) + (-x2) == x1
    assert x1 * x2 == monomial((1, 1))
    zero = x1 * 0
    assert not zero and zero.raw_terms == {}


def test_substitute():
    assert substitute(x2, {2: MultiPoly.zero()}) == 0
    assert substitute(x1 * x3, {1: x2, 3: x1}) == x1 * x2
    assert substitute(x1 + x2, {1: MultiPoly.zero(), 2: x1}) == x1


def test_exact_divide():
    assert exact_divide(x1**2 - x2**2, x1 - x2) == x1 + x2
    assert exact_divide(MultiPoly.zero(), x1 - x2) == 0
    assert exact_divide(x1 * x2 - x1 * x3, x2 - x3) == x1
    with pytest.raises(NotDivisibleError):
        exact_divide(x1 + 1, x1 - x2)


def test_rational_functions():
    total = RationalFn(x1, [x1 - x2]) + RationalFn(x2, [x2 - x1])
    assert total.to_poly() == 1
    a, b = x1 + 3, x2 - x1
    assert (RationalFn(a, [b]) * RationalFn(b, [a])).to_poly() == 1
    assert RationalFn(x1**2 - x2**2, [x1 - x2]).to_poly() == x1 + x2


def test_parse_examples():
    f = parse("x1^2*x2 - 3*x3")
    assert len(f) == 2 and f.coefficient((2, 1)) == 1 and f.coefficient((0, 0, 1)) == -3
    assert not parse("0")
    assert parse("q*x1 + q^2", q=True) == qvar() * x(1, True) + qvar() ** 2


@pytest.mark.parametrize("text, pos", [("x1 +* x2", 4), ("x0", 0), ("2*y", 2)])
def test_parse_errors_report_position(text, pos):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.pos is not None


def test_ring_mismatch():
    with pytest.raises(RingMismatchError):
        _ = x(1) + x(1, True)


def test_constant_term_and_degree():
    f = parse("3 + x1")
    assert f.ct() == 3 and f.degree() == 1
    assert parse("x1*x2").ct() == 0
    assert MultiPoly.zero().degree() == -1


@given(polys(), polys(), polys())
def test_ring_axioms(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h


@given(polys())
def test_format_parse_roundtrip(f):
    assert parse(format_poly(f)) == f
    assert hash(parse(str(f))) == hash(f)


@given(polys(), polys())
def test_division_recovers_factor(f, g):
    if g:
        assert exact_divide(f * g, g) == f


@given(polys(max_vars=4), st.permutations([1, 2, 3, 4]))
def test_permute_vars_is_a_ring_map(f, perm):
    sigma = lambda k: perm[k - 1] if k <= 4 else k
    g = x1 * x3 - 2
    assert permute_vars(f * g, sigma) == permute_vars(f, sigma) * permute_vars(g, sigma)
