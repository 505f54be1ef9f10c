# Copyright (c) 2024-2026 The tdrefine developers.
# tdrefine is open-source software under the MIT license (see LICENSE).

from fractions import Fraction

import numpy as np
import pytest

import tdrefine.graph_manager as gm
import tdrefine.decomp_manager as dm
import tdrefine.separator_manager as sm
import tdrefine.oracle_manager as om


@pytest.fixture
def path9():
    g = gm.generate('path', n=9)
    td = dm.path_decomposition(g, [{i, i+1} for i in range(8)])
    return g, td


def test_tree_dec_sep_path(path9):
    g, td = path9
    z_set = sm.tree_dec_sep(g, gm.Weighting.unit(g), td, q=2)
    assert z_set == frozenset({1, 5})


def test_tree_dec_sep_trivial(path9):
    g, td = path9
    assert sm.tree_dec_sep(g, gm.Weighting.unit(g), td, q=0) == frozenset()
    zero = gm.Weighting({})
    assert sm.tree_dec_sep(g, zero, td, q=3) == frozenset()


def test_tree_dec_sep_negative_q(path9):
    g, td = path9
    with pytest.raises(ValueError, match="node budget q must be >= 0"):
        sm.tree_dec_sep(g, gm.Weighting.unit(g), td, q=-1)


def test_tree_dec_sep_invalid_td(graphs):
    g = graphs['p4']
    td = dm.path_decomposition(g, [{0, 1}, {2, 3}])
    with pytest.raises(ValueError, match="Invalid input tree-decomposition"):
        sm.tree_dec_sep(g, gm.Weighting.unit(g), td, q=1)


def test_tree_dec_sep_wrong_graph(graphs, cycle_td):
    with pytest.raises(ValueError, match="does not decompose the given graph"):
        sm.tree_dec_sep(
            graphs['p4'], gm.Weighting.unit(graphs['p4']), cycle_td, q=1)


def test_treewidth_sep_path(path9):
    g, td = path9
    x_set = sm.treewidth_sep(g, gm.Weighting.unit(g), td, q=2)
    assert x_set == frozenset({1, 2, 5, 6})


def test_set_sep_unknown_vertex(path9):
    g, td = path9
    with pytest.raises(ValueError, match=r"Unknown vertices .*\[12\]"):
        sm.set_sep(g, td, {0, 12}, q=1)


def test_tree_dec_sep_random_against_oracle():
    rng = np.random.default_rng(2)
    for seed in range(60):
        n = int(rng.integers(4, 16))
        g = gm.generate('random_ktree_partial', seed=seed, n=n, k=2, p=0.8)
        td = om.min_fill_heuristic(g)
        gamma = gm.Weighting(
            {v: Fraction(int(rng.integers(0, 5)), 2) for v in g.nodes})
        q = int(rng.integers(1, 4))
        z_set = sm.tree_dec_sep(g, gamma, td, q)
        assert len(z_set) <= q
        x_set = frozenset().union(*(td.bags[z] for z in z_set))
        ok, witness = om.verify_separator(
            g, gamma, x_set, gamma.total/(q+1))
        assert ok, witness


def test_pseudo_components_edgeless():
    g = gm.make_graph(4)
    sep = sm.pseudo_components(g, gm.Weighting.unit(g), set(), 2)
    assert sep.m == 2
    assert sep.cores == [frozenset({0, 1}), frozenset({2, 3})]
    assert sep.x_set == frozenset()


def test_pseudo_components_pairwise():
    g = gm.make_graph(9, [(0, 1), (2, 3), (3, 4), (6, 7)])
    gamma = gm.Weighting.unit(g)
    sep = sm.pseudo_components(g, gamma, {8}, 3)
    weights = [gamma(core) for core in sep.cores]
    assert all(weight <= 3 for weight in weights)
    assert all(
        weights[i] + weights[j] > 3
        for i in range(sep.m) for j in range(i+1, sep.m))
    assert sep.m <= 2*8/3
    assert sm.separation_report(g, sep) == []


def test_pseudo_components_heavy_component(graphs):
    g = graphs['p4']
    with pytest.raises(ValueError,
            match="Component containing vertex 0 weighs 4, more than w = 3."):
        sm.pseudo_components(g, gm.Weighting.unit(g), set(), 3)


def test_pseudo_components_invalid_cap(graphs):
    g = graphs['p4']
    with pytest.raises(ValueError, match="weight cap w must be positive"):
        sm.pseudo_components(g, gm.Weighting.unit(g), set(), 0)


def test_gen_separation_grid(graphs, grid_td):
    g = graphs['grid5']
    gamma = gm.Weighting.unit(g)
    sep = sm.gen_separation(g, gamma, grid_td, Fraction(1, 3))
    assert len(sep.x_set) <= 2*(dm.width(grid_td) + 1)
    assert sep.m <= 5
    assert all(gamma(core) <= Fraction(25, 3) for core in sep.cores)
    assert sm.separation_report(g, sep) == []


def test_gen_separation_invalid_beta(graphs, grid_td):
    g = graphs['grid5']
    with pytest.raises(ValueError, match="beta must be > 0"):
        sm.gen_separation(g, gm.Weighting.unit(g), grid_td, 0)
    with pytest.raises(ValueError, match="Invalid rational number for beta"):
        sm.gen_separation(g, gm.Weighting.unit(g), grid_td, 'one third')


def test_gen_separation_zero_weight(graphs, grid_td):
    g = graphs['grid5']
    sep = sm.gen_separation(g, gm.Weighting({}), grid_td, '1/2')
    assert sep.x_set == frozenset()
    assert sep.m == 1


def test_separation_set_sep_padding(graphs):
    g = graphs['k5']
    td = dm.single_bag(g)
    sep = sm.separation_set_sep(g, td, g.nodes, Fraction(2, 3))
    assert sep.m == 2
    assert sep.x_set == frozenset(range(5))
    assert sep.cores == [frozenset(), frozenset()]


def test_separation_set_sep_balance(graphs, cycle_td):
    g = graphs['c10']
    s_set = {0, 2, 4, 6, 8, 9}
    sep = sm.separation_set_sep(g, cycle_td, s_set, Fraction(2, 3))
    assert sep.m >= 2
    assert all(len(core & s_set) <= 4 for core in sep.cores)
    assert sm.separation_report(g, sep) == []


def test_separation_report_problems(graphs):
    g = graphs['p4']
    parts = [gm.induced_subgraph(g, {0, 1}), gm.induced_subgraph(g, {1, 2})]
    sep = sm.Separation(frozenset(), parts, [frozenset({0, 1}), frozenset({2})])
    problems = sm.separation_report(g, sep)
    assert 'vertices outside every part: [3]' in problems
    assert 'parts 0 and 1 intersect in [1], not X' in problems


def separator_instance(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 41))
    if seed % 2 == 0:
        k = int(rng.integers(1, 5))
        g = gm.generate(
            'random_ktree_partial', seed=seed, n=n, k=k, p=0.75)
    else:
        m = int(rng.integers(0, min(2*n, n*(n-1)//2) + 1))
        g = gm.generate('random_gnm', seed=seed, n=n, m=m)
    gamma = gm.Weighting(
        {v: Fraction(int(rng.integers(0, 7)), int(rng.integers(1, 4)))
         for v in g.nodes})
    q = int(rng.integers(0, 6))
    return g, gamma, om.min_fill_heuristic(g), q


@pytest.mark.slow
@pytest.mark.parametrize('batch', range(10))
def test_tree_dec_sep_corpus(batch):
    for seed in range(50*batch, 50*batch + 50):
        g, gamma, td, q = separator_instance(seed)
        bound = gamma.total/(q+1)
        z_set = sm.tree_dec_sep(g, gamma, td, q)
        assert len(z_set) <= q
        x_set = frozenset().union(*(td.bags[z] for z in z_set))
        ok, witness = om.verify_separator(g, gamma, x_set, bound)
        assert ok, (seed, witness)
        if bound == 0:
            continue
        sep = sm.pseudo_components(g, gamma, x_set, bound)
        outside = gamma(set(g.nodes) - x_set)
        assert sep.m <= max(2*outside/bound, 1)
        weights = [gamma(core) for core in sep.cores]
        assert all(weight <= bound for weight in weights)
        assert all(
            weights[i] + weights[j] > bound
            for i in range(sep.m) for j in range(i+1, sep.m))
        assert sm.separation_report(g, sep) == []
