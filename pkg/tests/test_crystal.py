"""Crystal statistics, operator axioms, components, and closures."""

import pytest

from conftest import make_rng, random_even_monomial, unfolded
from foldcrys.crystal import (
    CapExceeded,
    Caps,
    character,
    closure_Minfty,
    component,
    e_tilde,
    eps_phi,
    f_tilde,
)
from foldcrys.coweight import EvenCoweight
from foldcrys.lie import RootSystem, weight_multiplicities
from foldcrys.monomial import Monomial, OddMonomial


@pytest.fixture(scope="module")
def uq():
    return unfolded("B2")


def check_axioms(uq, m):
    for ui in uq.underline_I:
        col = uq.vertex_index(ui)
        eps, phi, _ml, _nl = eps_phi(uq, m, ui)
        assert eps >= 0 and phi >= 0
        # statistics difference equals the weight at the vertex
        assert phi - eps == m.weight(uq)[ui]
        up = e_tilde(uq, m, ui)
        assert (up is None) == (eps == 0)
        if up is not None:
            assert up.is_even(uq)
            assert f_tilde(uq, up, ui) == m
            eps2, phi2, _, _ = eps_phi(uq, up, ui)
            assert eps2 == eps - 1 and phi2 == phi + 1
            wt, wt2 = m.weight(uq), up.weight(uq)
            for x in uq.underline_I:
                row = uq.vertex_index(x)
                assert wt2[x] - wt[x] == uq.underline_C[row][col]
        down = f_tilde(uq, m, ui)
        assert (down is None) == (phi == 0)
        if down is not None:
            assert down.is_even(uq)
            assert e_tilde(uq, down, ui) == m
            eps2, phi2, _, _ = eps_phi(uq, down, ui)
            assert eps2 == eps + 1 and phi2 == phi - 1


@pytest.mark.parametrize("name", ["B2", "G2", "C3"])
def test_crystal_axioms_random(name):
    uq = unfolded(name)
    rng = make_rng(hash(name) & 0xFFFF)
    for _ in range(300):
        check_axioms(uq, random_even_monomial(uq, rng))


def test_odd_monomial_rejected(uq):
    with pytest.raises(OddMonomial):
        eps_phi(uq, Monomial({(1, 1): 1}), (1, 2))


def test_b2_f_tilde_example(uq):
    # lowering the generator at (1,4) divides by the mutation monomial at level 0
    m = Monomial({(1, 4): 1})
    down = f_tilde(uq, m, (1, 4))
    assert down == m / Monomial({(1, 0): 1, (1, 4): 1, (2, 2): -1})
    assert down == Monomial({(1, 0): -1, (2, 2): 1})


def test_component_sizes_and_characters(uq):
    rs = RootSystem(uq.underline_C)
    for (i, k), size in (((1, 4), 4), ((2, 2), 6)):
        graph = component(uq, Monomial.variable(i, k))
        assert len(graph) == size
        assert len(graph.highest) == 1
        lam = tuple(
            1 if ui == (i, k) else 0 for ui in uq.underline_I
        )
        ch = weight_multiplicities(rs, lam)
        assert character(uq, graph) == ch.mult


def test_g2_unfolded_component_is_d4_fundamental():
    uq = unfolded("G2")
    rs = RootSystem(uq.underline_C)
    ui = uq.underline_I[0]
    graph = component(uq, Monomial.variable(*ui))
    lam = tuple(1 if x == ui else 0 for x in uq.underline_I)
    ch = weight_multiplicities(rs, lam)
    assert len(graph) == ch.dim()
    assert character(uq, graph) == ch.mult


def test_component_cap(uq):
    with pytest.raises(CapExceeded):
        component(uq, Monomial.variable(1, 4), cap=2)


def test_closure_caps(uq):
    rho = EvenCoweight.from_string("1:[-4]", 2)
    with pytest.raises(CapExceeded):
        closure_Minfty(uq, rho, Caps(nodes=2))


def test_closure_counts(uq):
    for rho_s, count in (("1:[-4]", 4), ("2:[-2]", 6), ("1:[-4,-6]", 15)):
        rho = EvenCoweight.from_string(rho_s, 2)
        graph, stable = closure_Minfty(uq, rho, Caps())
        assert len(graph) == count
        assert all(m.is_l_dominant() for m in stable)
