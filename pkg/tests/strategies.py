"""Hypothesis strategies shared by the property tests."""

from hypothesis import strategies as st

from qschub.poly import MultiPoly, monomial


@st.composite
def polys(draw, max_vars=5, max_degree=4, max_terms=5):
    nvars = draw(st.integers(1, max_vars))
    f = MultiPoly.zero()
    for _ in range(draw(st.integers(0, max_terms))):
        code = tuple(draw(st.lists(st.integers(0, max_degree), min_size=nvars, max_size=nvars)))
        if sum(code) > max_degree:
            continue
        f = f + monomial(code, draw(st.integers(-4, 4)))
    return f
