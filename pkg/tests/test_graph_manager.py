# Copyright (c) 2024-2026 The tdrefine developers.
# tdrefine is open-source software under the MIT license (see LICENSE).

from fractions import Fraction

import networkx as nx
import pytest

import tdrefine.graph_manager as gm


def test_make_graph():
    g = gm.make_graph(3, [(0, 1), (1, 2), (1, 0)])
    assert sorted(g.nodes) == [0, 1, 2]
    assert sorted(g.edges) == [(0, 1), (1, 2)]
    assert nx.is_frozen(g)


def test_make_graph_vertices():
    g = gm.make_graph(vertices=[4, 7], edges=[(4, 7)])
    assert sorted(g.nodes) == [4, 7]


def test_make_graph_self_loop():
    with pytest.raises(ValueError, match=r"Self-loops are not allowed: \(1, 1\)."):
        gm.make_graph(3, [(1, 1)])


def test_make_graph_unknown_vertex():
    with pytest.raises(ValueError, match="references an unknown vertex"):
        gm.make_graph(3, [(0, 3)])


def test_induced_subgraph():
    c6 = gm.generate('cycle', n=6)
    sub = gm.induced_subgraph(c6, {0, 1, 2, 5})
    assert sorted(sub.edges) == [(0, 1), (0, 5), (1, 2)]
    with pytest.raises(ValueError, match=r"Unknown vertex ids .*\[9\]"):
        gm.induced_subgraph(c6, {0, 9})


def test_components(graphs):
    comps = gm.components(graphs['disjoint'])
    assert comps == [frozenset({0, 1, 2}), frozenset({3, 4, 5})]
    assert gm.components(graphs['empty']) == []


def test_degrees(graphs):
    assert gm.neighbors(graphs['c6'], 0) == [1, 5]
    assert gm.degree(graphs['fan8'], 0) == 7
    assert gm.max_degree(graphs['grid3']) == 4
    assert gm.max_degree(graphs['empty']) == 0
    with pytest.raises(ValueError, match="Unknown vertex: 6."):
        gm.degree(graphs['c6'], 6)


@pytest.mark.parametrize('family, params, n, m',
    [('path', {'n': 10}, 10, 9),
     ('cycle', {'n': 10}, 10, 10),
     ('grid', {'n': 4}, 16, 24),
     ('fan', {'n': 8}, 8, 13),
     ('complete', {'n': 5}, 5, 10),
     ('random_gnm', {'n': 12, 'm': 20}, 12, 20),
     ('random_ktree_partial', {'n': 10, 'k': 2, 'p': 1.0}, 10, 17),
     ('tree_random', {'n': 20}, 20, 19),
    ])
def test_generate_sizes(family, params, n, m):
    g = gm.generate(family, seed=3, **params)
    assert g.number_of_nodes() == n
    assert g.number_of_edges() == m
    assert sorted(g.nodes) == list(range(n))


def test_generate_grid_labels():
    g = gm.generate('grid', n=3)
    # Vertex r*n + c sits at row r, column c:
    assert gm.neighbors(g, 4) == [1, 3, 5, 7]
    assert gm.neighbors(g, 0) == [1, 3]


def test_generate_tree_is_connected():
    g = gm.generate('tree_random', seed=11, n=30)
    assert nx.is_tree(g)


def test_generate_deterministic():
    g1 = gm.generate('random_ktree_partial', seed=5, n=40, k=3, p=0.6)
    g2 = gm.generate('random_ktree_partial', seed=5, n=40, k=3, p=0.6)
    assert sorted(g1.edges) == sorted(g2.edges)
    g3 = gm.generate('random_gnm', seed=5, n=20, m=30)
    g4 = gm.generate('random_gnm', seed=5, n=20, m=30)
    assert sorted(g3.edges) == sorted(g4.edges)


def test_generate_unknown_family():
    with pytest.raises(ValueError, match="Unknown graph family 'star'"):
        gm.generate('star', n=5)


def test_generate_missing_params():
    with pytest.raises(ValueError,
            match=r"Missing parameters for family 'random_gnm': \['m'\]."):
        gm.generate('random_gnm', n=5)


def test_generate_unexpected_params():
    with pytest.raises(ValueError,
            match=r"Unexpected parameters for family 'path': \['m'\]."):
        gm.generate('path', n=5, m=3)


@pytest.mark.parametrize('family, params',
    [('cycle', {'n': 2}),
     ('path', {'n': 0}),
     ('random_gnm', {'n': 4, 'm': 7}),
     ('random_ktree_partial', {'n': 10, 'k': 2, 'p': 1.5}),
    ])
def test_generate_invalid_params(family, params):
    with pytest.raises(ValueError):
        gm.generate(family, **params)


def test_weighting_unit(graphs):
    gamma = gm.Weighting.unit(graphs['p4'])
    assert gamma.total == Fraction(4)
    assert gamma([0, 1]) == Fraction(2)
    assert gamma[3] == Fraction(1)


def test_weighting_indicator():
    gamma = gm.Weighting.indicator([1, 2])
    assert gamma[0] == 0
    assert gamma([0, 1, 2]) == Fraction(2)


def test_weighting_rationals():
    gamma = gm.Weighting({0: '1/3', 1: 0.5, 2: 2})
    assert gamma.total == Fraction(17, 6)
    assert repr(gamma) == 'Weighting(total=17/6, support=3)'


def test_weighting_negative():
    with pytest.raises(ValueError,
            match="Weights must be non-negative, vertex 1 has weight -1."):
        gm.Weighting({0: 1, 1: -1})
