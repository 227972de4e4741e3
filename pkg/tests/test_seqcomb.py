"""Level-sequence combinatorics: triple encodings, completion search,
and the truncation condition."""

from itertools import product

import pytest

from conftest import unfolded
from foldcrys.seqcomb import (
    SizeCap,
    cyclotomic_seq,
    cyclotomic_triple,
    e_w_mu_support,
    enumerate_P,
    exists_x,
    in_J,
    is_even_idempotent,
    is_even_sequence,
    kappa_tuples,
    seq_max,
    seq_to_triple,
    tau,
    triple_to_seq,
    underline_order,
    vertex_tuples,
)

ORDER = ("a", "b")


def test_tau_strips_zeros():
    w = {0: {"a": 1}, 2: {"a": 0}, 5: {"b": 2}}
    m, vecs, levels = tau(w)
    assert m == 2
    assert levels == (0, 5)
    assert vecs == ({"a": 1}, {"b": 2})
    assert seq_max(w) == 5
    assert seq_max({1: {"a": 0}}) is None


def test_vertex_and_kappa_tuples():
    tuples = vertex_tuples({"a": 2, "b": 1}, ORDER)
    assert len(tuples) == 3
    assert tuples[0] == ("a", "a", "b")
    assert kappa_tuples(2, 2) == [
        (0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2),
    ]


def test_seq_triple_roundtrip():
    levels = (-1, 1)
    for vseq in enumerate_P({"a": 2, "b": 1}, (-2, 2), ORDER):
        tp = seq_to_triple(vseq, levels, ORDER)
        assert in_J(tp.x, tp.v, tp.kappa, levels, ORDER)
        back = triple_to_seq(tp.x, tp.v)
        assert tau(back) == tau(vseq)


def brute_exists(v, kappa, levels, order, window):
    lo, hi = window
    for x in product(range(lo, hi + 1), repeat=len(v)):
        if in_J(x, v, kappa, levels, order):
            return True
    return False


def test_exists_x_matches_brute_force():
    levels = (-1, 1)
    window = (-2, 2)
    for alpha in ({"a": 2}, {"a": 1, "b": 1}, {"a": 2, "b": 1}):
        h = sum(alpha.values())
        for v in vertex_tuples(alpha, ORDER):
            for kappa in kappa_tuples(h, len(levels)):
                got = exists_x(v, kappa, levels, ORDER, window=window)
                assert got == brute_exists(v, kappa, levels, ORDER, window)


def test_cyclotomic_equivalence():
    window = (-2, 2)
    for w in enumerate_P({"a": 1, "b": 1}, window, ORDER):
        m, _vecs, levels = tau(w)
        for vseq in enumerate_P({"a": 1, "b": 1}, window, ORDER):
            tp = seq_to_triple(vseq, levels, ORDER)
            h = len(tp.x)
            assert cyclotomic_seq(w, vseq) == cyclotomic_triple(tp.kappa, h)


def test_underline_order_b2():
    uq = unfolded("B2")
    assert underline_order(uq) == ((2, 2), (1, 2), (1, 4))


def test_even_idempotents_b2():
    uq = unfolded("B2")
    order = underline_order(uq)
    # one copy of each vertex, no level constraints
    v = order
    assert is_even_idempotent(uq, v, (), ())
    # an impossible cut: all three at levels <= -100 outside the window
    assert not is_even_idempotent(
        uq, v, (3,), (-100,), window=(-8, 8)
    )


def test_even_sequence_b2():
    uq = unfolded("B2")
    assert is_even_sequence(uq, {2: {(1, 2): 1}, 0: {(2, 2): 1}})
    assert not is_even_sequence(uq, {1: {(1, 2): 1}})


def test_support_cap():
    with pytest.raises(SizeCap):
        e_w_mu_support(
            {"a": 2, "b": 2}, (0,), ORDER, window=(-2, 2), cap=1
        )
