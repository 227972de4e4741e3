"""Cartan data validation and unfolding."""

import networkx as nx
import pytest

from foldcrys.cartan import (
    BadParity,
    InvalidDatum,
    NonSymmetrizable,
    NotFiniteType,
    builtin_datum,
    is_even_pair,
    unfold,
    validate_datum,
    zero_I_member,
)

UNFOLD_TABLE = {"B2": "A3", "B3": "A5", "C3": "D4", "F4": "E6", "G2": "D4"}


def adjacency_graph(c):
    g = nx.Graph()
    n = len(c)
    g.add_nodes_from(range(n))
    for i in range(n):
        for j in range(i + 1, n):
            if c[i][j] != 0:
                g.add_edge(i, j)
    return g


def test_builtin_types_validate():
    for name in ["A1", "A3", "A5", "B2", "B3", "C3", "D4", "E6", "F4", "G2"]:
        datum = builtin_datum(name)
        assert datum.n == int(name[1:])


def test_symmetrizer_is_symmetrizing():
    for name in ["B2", "B3", "C3", "F4", "G2"]:
        dt = builtin_datum(name)
        for i in range(1, dt.n + 1):
            for j in range(1, dt.n + 1):
                assert dt.b(i, j) == dt.b(j, i)


def test_invalid_data_rejected():
    with pytest.raises(NonSymmetrizable):
        validate_datum([[2, -1], [-3, 2]], [1, 1], parity=[0, 1])
    with pytest.raises(NotFiniteType):
        # affine A1 matrix
        validate_datum([[2, -2], [-2, 2]], [1, 1], parity=[0, 1])
    with pytest.raises(BadParity):
        validate_datum([[2, -1], [-1, 2]], [1, 1], parity=[0, 0])
    with pytest.raises(InvalidDatum):
        validate_datum([[2, 1], [1, 2]], [1, 1])


def test_unfolding_matches_table():
    for src, tgt in UNFOLD_TABLE.items():
        uq = unfold(builtin_datum(src))
        target = builtin_datum(tgt)
        assert len(uq.underline_I) == target.n
        g1 = adjacency_graph(uq.underline_C)
        g2 = adjacency_graph(target.c)
        assert nx.is_isomorphic(g1, g2), f"{src} unfolding is not {tgt}"


def test_ade_unfolding_is_identity():
    for name in ["A3", "D4", "E6"]:
        datum = builtin_datum(name)
        uq = unfold(datum)
        assert len(uq.underline_I) == datum.n
        # one residue per vertex, matrix equal up to vertex relabeling
        assert all(len(res) == 1 for res in uq.class_residues)
        g1 = adjacency_graph(uq.underline_C)
        g2 = adjacency_graph(datum.c)
        assert nx.is_isomorphic(g1, g2)


def test_b2_unfolded_arrows_exact():
    uq = unfold(builtin_datum("B2"))
    assert uq.underline_I == ((1, 2), (1, 4), (2, 2))
    assert set(uq.underline_E) == {((2, 2), (1, 2)), ((2, 2), (1, 4))}


def test_arrows_point_from_even_base_vertices():
    for name in ["B2", "B3", "C3", "F4", "G2"]:
        uq = unfold(builtin_datum(name))
        for (x, _y) in uq.underline_E:
            assert uq.base.parity[x[0] - 1] == 0


def test_even_pairs_and_residues():
    uq = unfold(builtin_datum("B2"))
    assert is_even_pair(uq, (1, 2), 2)
    assert is_even_pair(uq, (1, 2), -2)
    assert not is_even_pair(uq, (1, 2), 4)
    assert zero_I_member(uq, 1, -4) == (1, 4)
    assert zero_I_member(uq, 1, -3) is None
    assert zero_I_member(uq, 2, 6) == (2, 2)
