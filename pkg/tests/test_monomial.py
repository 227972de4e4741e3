"""Monomials, mutation monomials, and the factorization routine."""

from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import even_pairs, unfolded
from foldcrys.cartan import builtin_datum, unfold
from foldcrys.monomial import Monomial, a_factorize, a_monomial


@pytest.fixture(scope="module")
def uq_b2():
    return unfolded("B2")


def test_monomial_roundtrip_text():
    m = Monomial({(1, -4): 2, (2, 0): -1})
    assert Monomial.from_text(m.to_text()) == m
    assert Monomial.from_text("1") == Monomial.unit()


def test_monomial_arithmetic():
    a = Monomial({(1, 0): 1})
    b = Monomial({(1, 0): -1, (2, 2): 3})
    assert (a * b) == Monomial({(2, 2): 3})
    assert (a / a) == Monomial.unit()
    assert (b ** 2) == Monomial({(1, 0): -2, (2, 2): 6})


def test_a_monomial_b2(uq_b2):
    # vertex 1 has period 4 and one incoming neighbour with c_12 = -1
    a = a_monomial(uq_b2, 1, -4)
    assert a == Monomial({(1, -4): 1, (1, 0): 1, (2, -2): -1})
    # vertex 2 has period 2 and c_21 = -2
    b = a_monomial(uq_b2, 2, -2)
    assert b == Monomial({(2, -2): 1, (2, 0): 1, (1, -2): -1, (1, 0): -1})


def test_a_monomial_weight_is_minus_cartan_column(uq_b2):
    uq = uq_b2
    for (i, r) in uq.underline_I:
        wt = a_monomial(uq, i, r).weight(uq)
        col = uq.vertex_index((i, r))
        for ui in uq.underline_I:
            assert wt[ui] == uq.underline_C[uq.vertex_index(ui)][col]


@st.composite
def mutation_products(draw, uq):
    pairs = even_pairs(uq, -8, 8)
    picks = draw(
        st.lists(st.sampled_from(pairs), min_size=0, max_size=5)
    )
    exps = Counter()
    m = Monomial.unit()
    for (i, k) in picks:
        exps[(i, k)] += 1
        m = m * a_monomial(uq, i, k)
    return dict(exps), m


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_a_factorize_roundtrip(data):
    uq = unfold(builtin_datum("B2"))
    exps, m = data.draw(mutation_products(uq))
    fac = a_factorize(uq, m)
    assert fac is not None
    assert dict(fac) == {k: e for k, e in exps.items() if e}


def test_a_factorize_rejects_non_products(uq_b2):
    assert a_factorize(uq_b2, Monomial({(1, 0): 1})) is None
    assert a_factorize(uq_b2, Monomial({(2, 0): -1})) is None
