import pytest
from hypothesis import given, strategies as st

from qschub.bases import forest_poly, schubert
from qschub.divsym import (
    dec_q_weight,
    ds_direct,
    ds_factorized,
    ds_plain,
    group_algebra_product,
    q_trim_weights,
    qds_direct,
    qds_factorized,
    tau,
    trim_weights,
)
from qschub.errors import PreconditionError
from qschub.perm import symmetric_group
from qschub.poly import MultiPoly, monomial, parse, qvar, x
from qschub.verify import monomials
from strategies import polys

x1, x2 = x(1), x(2)


def test_small_values():
    assert ds_direct(x1 * x2, 3) == 1
    assert ds_factorized(x1 * x2, 3) == 1
    assert ds_direct(x2, 2) == -1
    assert ds_direct(MultiPoly.one() * 7, 1) == 7
    assert ds_direct(x1, 2, method="naive") == 1


@pytest.mark.parametrize("n", range(1, 5))
def test_direct_and_factorized_agree(n):
    for m in monomials(n, n + 1):
        a = ds_direct(m, n)
        assert a == ds_factorized(m, n)
        if m.degree() <= n - 1:
            assert a == ds_plain(m, n)
        if n <= 3:
            assert a == ds_direct(m, n, method="naive")


def test_degree_bounds():
    with pytest.raises(PreconditionError):
        ds_plain(x1**3, 3)
    with pytest.raises(PreconditionError):
        ds_direct(x(4), 3)
    with pytest.raises(PreconditionError):
        qds_factorized(x1, 3)


@given(polys(max_vars=3, max_degree=4))
def test_linearity(f):
    g = parse("x1*x2 - 2*x3")
    assert ds_factorized(f + g, 3) == ds_factorized(f, 3) + ds_factorized(g, 3)


@pytest.mark.parametrize("n", range(1, 5))
def test_q_forms(n):
    for m in monomials(n, n - 1):
        if m.degree() != n - 1:
            continue
        a = qds_direct(m, n)
        assert a == qds_factorized(m, n)
        assert a.eval_q(1) == ds_direct(m, n)
        if n <= 3:
            assert a == qds_direct(m, n, method="naive")


def test_schubert_values_positive():
    for n in range(1, 6):
        for w in symmetric_group(n):
            if w.length() == n - 1:
                v = ds_factorized(schubert(w), n)
                assert v == v.ct() and v.ct() > 0


@pytest.mark.parametrize("n", range(2, 6))
def test_tau_product_is_the_group_sum(n):
    acc = tau(2)
    for m in range(3, n + 1):
        acc = group_algebra_product(acc, tau(m))
    assert sorted(acc.values()) == [1] * len(list(symmetric_group(n)))
    assert set(acc) == set(symmetric_group(n))


@pytest.mark.parametrize("n", range(2, 6))
def test_trim_weights(n):
    weights = trim_weights(n)
    qweights = q_trim_weights(n)
    q = qvar()
    for F, c in weights.items():
        P = forest_poly(F)
        assert P.evaluate({k: 1 for k in range(1, n)}) == c
        powers = {k: q ** (k - 1) for k in range(1, n)}
        assert P.with_q().evaluate(powers) == qweights[F]
        assert dec_q_weight(F) == qweights[F]
