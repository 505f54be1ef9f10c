# Copyright (c) 2024-2026 The tdrefine developers.
# tdrefine is open-source software under the MIT license (see LICENSE).

from collections import Counter

import pytest

import tdrefine.graph_manager as gm
import tdrefine.decomp_manager as dm
import tdrefine.slick_manager as sl
import tdrefine.oracle_manager as om


def check_slick_output(g, td, width, degree):
    assert dm.validate(td) == []
    assert dm.is_slick(td) == (True, None)
    assert dm.width(td) <= width
    assert dm.degree(td) <= degree
    profile = dm.spread_profile(td)
    assert all(profile[v] <= gm.degree(g, v) + 1 for v in g.nodes)


def test_alpha_beta_bounds():
    assert sl.alpha_beta_bounds(6, 12) == {
        'bag_size': 42, 'degree': 6, 'root_degree': 5}
    assert sl.alpha_beta_bounds(5, 3) == {
        'bag_size': 21, 'degree': 11, 'root_degree': 10}


def test_alpha_beta_base_case():
    g = gm.generate('cycle', n=8)
    counters = Counter()
    td = sl.alpha_beta(g, dm.cycle_decomposition(8), 6, 12, counters=counters)
    assert dm.order(td) == 1
    assert td.bags[0] == frozenset(range(8))
    assert counters == Counter({'alpha_beta_base': 1})


def test_alpha_beta_recursion_root_seed():
    td = dm.cycle_decomposition(100)
    g = td.graph
    counters = Counter()
    slick = sl.alpha_beta(g, td, 6, 12, r_set={5, 6}, counters=counters)
    assert {5, 6} <= slick.bags[slick.tree.root]
    assert counters['alpha_beta_frame'] >= 1
    assert counters['alpha_beta_base'] >= 1
    bounds = sl.alpha_beta_bounds(6, 12)
    check_slick_output(g, slick, bounds['bag_size']-1, bounds['degree'])
    assert slick.tree.degree(slick.tree.root) <= bounds['root_degree']


def test_alpha_beta_general_parameters():
    g = gm.generate('tree_random', seed=4, n=120)
    td = om.min_fill_heuristic(g)
    # q = ceil((2t+2*ell)/t) - 1 = 3 separator bags of size 2 fit in ell:
    slick = sl.alpha_beta(g, td, ell=6, t=6)
    bounds = sl.alpha_beta_bounds(6, 6)
    check_slick_output(g, slick, bounds['bag_size']-1, bounds['degree'])


def test_alpha_beta_invalid_parameters(cycle_td):
    g = cycle_td.graph
    with pytest.raises(ValueError, match="ell and t must be positive"):
        sl.alpha_beta(g, cycle_td, 0, 12)
    with pytest.raises(ValueError, match="root seed has 10 vertices, more than"):
        sl.alpha_beta(g, cycle_td, 1, 1, r_set=range(10))
    with pytest.raises(ValueError, match=r"Unknown vertices in root seed: \[10\]"):
        sl.alpha_beta(g, cycle_td, 6, 12, r_set={10})


def test_alpha_beta_ell_too_small(cycle_td):
    with pytest.raises(ValueError, match="ell = 2 is too small for input width 2"):
        sl.alpha_beta(cycle_td.graph, cycle_td, 2, 4)


def test_alpha_beta_invalid_td(graphs):
    g = graphs['p4']
    td = dm.path_decomposition(g, [{0, 1}, {2, 3}])
    with pytest.raises(ValueError, match="Invalid input tree-decomposition"):
        sl.alpha_beta(g, td, 4, 8)


@pytest.mark.parametrize('n', [50, 120, 200])
def test_slick_main_cycles(n):
    td = dm.cycle_decomposition(n)
    g = td.graph
    slick = sl.slick_main(g, td, k=2)
    check_slick_output(g, slick, 14*2+13, 6)
    # Cycle example: the input spread n-2 drops to at most 3:
    assert dm.spread(td, 0) == n - 2
    assert dm.max_spread(slick) <= 3


def test_slick_main_cycle10():
    td = dm.cycle_decomposition(10)
    slick = sl.slick_main(td.graph, td)
    assert dm.spread(td, 0) == 8
    assert dm.max_spread(slick) <= 3


def test_slick_main_grid(graphs, grid_td):
    slick = sl.slick_main(graphs['grid5'], grid_td, k=9)
    check_slick_output(graphs['grid5'], slick, 14*9+13, 6)


def test_slick_main_fan():
    g = gm.generate('fan', n=150)
    td = om.min_fill_heuristic(g)
    k = dm.width(td)
    slick = sl.slick_main(g, td, k)
    check_slick_output(g, slick, 14*k+13, 6)


@pytest.mark.parametrize('seed', [1, 2, 3])
def test_slick_main_random(seed):
    g = gm.generate('random_ktree_partial', seed=seed, n=150, k=2, p=0.8)
    td = om.min_fill_heuristic(g)
    k = dm.width(td)
    counters = Counter()
    slick = sl.slick_main(g, td, counters=counters)
    check_slick_output(g, slick, 14*k+13, 6)


def test_slick_main_single_vertex(graphs):
    g = graphs['vertex']
    slick = sl.slick_main(g, dm.single_bag(g))
    assert dm.order(slick) == 1
    assert dm.width(slick) == 0


def test_slick_main_empty(graphs):
    g = graphs['empty']
    slick = sl.slick_main(g, dm.single_bag(g))
    assert dm.order(slick) == 1
    assert slick.bags[0] == frozenset()


def test_slick_main_width_budget(cycle_td):
    with pytest.raises(ValueError,
            match="The input decomposition has width 2 > k = 1."):
        sl.slick_main(cycle_td.graph, cycle_td, k=1)


@pytest.mark.slow
def test_slick_main_corpus(corpus_instance):
    g, td = corpus_instance
    k = dm.width(td)
    slick = sl.slick_main(g, td, k)
    check_slick_output(g, slick, 14*k+13, 6)
