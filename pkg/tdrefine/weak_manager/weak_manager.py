# Copyright (c) 2024-2026 The tdrefine developers.
# tdrefine is open-source software under the MIT license (see LICENSE).

__all__ = [
    'heart',
    'weak_tree_decomp_gen',
    'weak_to_strong',
    'spread_small_degree',
    'tree_partition',
]

from collections import Counter
from fractions import Fraction

from .. import graph_manager as gm
from .. import decomp_manager as dm
from .. import separator_manager as sm
from .. import utils as u


def _outside(g, v, s_set):
    return sorted(w for w in g.adj[v] if w not in s_set)


def _heart(g, td, s_set, k, d, forest, counters):
    """
    Build a weak decomposition of g into forest, rooted at the returned
    node z, with S inside B_z.
    """
    z = _heart_frame(g, td, s_set, k, d, forest, counters)
    bag = forest.bags[z]
    u.certify(s_set <= bag, 'heart anchor inside B_z', f'S is not inside B_{z}')
    u.certify(
        2*len(bag) <= 3*len(s_set) - 4*k, 'heart anchor bag size',
        f'|B_z| = {len(bag)} > 3/2*{len(s_set)} - {2*k}')
    u.certify(
        2*k*len(forest.kids[z]) <= len(s_set) - 2*k, 'heart anchor degree',
        f'deg(z) = {len(forest.kids[z])} > {len(s_set)}/{2*k} - 1')
    return z


def _heart_frame(g, td, s_set, k, d, forest, counters):
    rest = set(g.nodes) - s_set

    if len(rest) <= 18*k*d:
        counters['heart_case1'] += 1
        z = forest.add(s_set)
        if len(rest) > 0:
            forest.add(rest, z)
        return z

    if len(s_set) <= 12*k:
        counters['heart_case2'] += 1
        s_one = {v for v in s_set if len(_outside(g, v, s_set)) <= d-2}
        s_prime = set()
        for v in sorted(s_set):
            outside = _outside(g, v, s_set)
            if v in s_one:
                s_prime.update(outside)
            else:
                s_prime.add(v)
                s_prime.update(outside[:d-1])
        u.certify(
            len(s_prime) <= d*len(s_set), 'heart anchor size',
            f'|S\'| = {len(s_prime)} > {d}*{len(s_set)}')
        if len(s_prime) < 4*k:
            pool = rest - s_prime
            u.certify(
                len(pool) >= 4*k - len(s_prime), 'heart anchor padding',
                f'{len(pool)} spare vertices for {4*k-len(s_prime)} slots')
            s_prime.update(u.smallest(pool, 4*k - len(s_prime)))

        child = gm.induced_subgraph(g, set(g.nodes) - s_one)
        z_child = _heart(
            child, dm.restrict(td, child), frozenset(s_prime), k, d,
            forest, counters)
        z = forest.add(s_set)
        forest.attach(z_child, z)
        return z

    counters['heart_case3'] += 1
    sep = sm.separation_set_sep(g, td, s_set, Fraction(2, 3), check=False)
    x_set = sep.x_set
    u.certify(
        sep.m == 2, 'heart split parts', f'{sep.m} parts instead of 2')
    u.certify(len(x_set) <= k, 'heart split separator', f'|X| = {len(x_set)} > {k}')
    anchors = [frozenset((s_set & core) | x_set) for core in sep.cores]
    for i, anchor in enumerate(anchors):
        u.certify(
            4*k <= len(anchor) <= 12*k*d, 'heart split anchor window',
            f'|S_{i+1}| = {len(anchor)} outside [{4*k}, {12*k*d}]')
    u.certify(
        sum(len(anchor) for anchor in anchors) <= len(s_set) + 2*k,
        'heart split anchor total',
        f'|S_1|+|S_2| = {sum(len(a) for a in anchors)} > {len(s_set)}+{2*k}')

    roots = []
    for part, anchor in zip(sep.parts, anchors):
        roots.append(_heart(
            part, dm.restrict(td, part), anchor, k, d, forest, counters))
    return forest.merge(*roots)


def _check_frame(g, td, k, d):
    if set(td.graph.nodes) != set(g.nodes):
        raise ValueError(
            "The tree-decomposition does not decompose the given graph.")
    violations = dm.validate(td, kind='strong')
    if len(violations) > 0:
        raise ValueError(
            f"Invalid input tree-decomposition:\n{dm.report_text(violations)}")
    if d < 2:
        raise ValueError(f"Parameter d must be >= 2, got {d}.")
    width = dm.width(td)
    k = max(width + 1, 1) if k is None else k
    if k < 1 or width > k - 1:
        raise ValueError(
            f"Parameter k = {k} needs a decomposition of width at most k-1, "
            f"got width {width}.")
    return k


def heart(g, td, s_set, k=None, d=2, counters=None):
    """
    (d-1)-slick weak tree-decomposition of g, rooted at a node z with
    S inside B_z.

    Every bag holds at most 18kd vertices, the tree degree is at most
    6d, the order is at most n/2k, |B_z| <= 3|S|/2 - 2k and
    deg(z) <= |S|/2k - 1.

    Parameters
    ----------
    g: networkx.Graph
    td: decomp_manager.TreeDecomposition
        A valid strong decomposition of g of width at most k-1.
    s_set: Iterable of vertices
        Anchor set S, with 4k <= |S| <= 12kd.
    k: Integer
        Defaults to width(td) + 1.
    d: Integer
        Slickness parameter, d >= 2.
    counters: collections.Counter
        Optional case counter (heart_case1, heart_case2, heart_case3).

    Returns
    -------
    wtd: Weak TreeDecomposition.
    z: The distinguished node (the root of wtd).
    """
    k = _check_frame(g, td, k, d)
    s_set = frozenset(s_set)
    unknown = s_set.difference(g.nodes)
    if len(unknown) > 0:
        raise ValueError(f"Unknown vertices in anchor set: {sorted(unknown)}.")
    if not 4*k <= len(s_set) <= 12*k*d:
        raise ValueError(
            f"The anchor set has {len(s_set)} vertices, outside "
            f"[4k, 12kd] = [{4*k}, {12*k*d}].")
    if counters is None:
        counters = Counter()

    forest = dm.Forest()
    with u.recursion_limit(4*g.number_of_nodes() + 1000):
        z = _heart(g, td, s_set, k, d, forest, counters)
    wtd = forest.freeze(z, g, kind='weak')
    z = wtd.tree.root
    largest = max(len(b) for b in wtd.bags.values())
    u.certify(
        largest <= 18*k*d, 'heart bag size', f'{largest} > {18*k*d}')
    u.certify(
        dm.degree(wtd) <= 6*d, 'heart degree', f'{dm.degree(wtd)} > {6*d}')
    n = g.number_of_nodes()
    u.certify(
        dm.order(wtd)*2*k <= n, 'heart order',
        f'{dm.order(wtd)} > {n}/{2*k}')
    violations = dm.validate(wtd, kind='weak')
    u.certify(
        len(violations) == 0, 'heart validity', dm.report_text(violations))
    slick, witness = dm.is_slick(wtd, d-1)
    u.certify(slick, 'heart slickness', f'fails at {witness}')
    return wtd, z


def weak_tree_decomp_gen(g, td, k=None, d=2, anchor=None, counters=None):
    """
    (d-1)-slick weak tree-decomposition of width at most 18kd, degree at
    most 6d and order at most max(n/2k, 1); every vertex v has spread at
    most deg(v)/(d-1) + 1.

    Parameters
    ----------
    g: networkx.Graph
    td: decomp_manager.TreeDecomposition
        A valid strong decomposition of g of width at most k-1.
    k: Integer
        Defaults to width(td) + 1.
    d: Integer
        Slickness parameter, d >= 2.
    anchor: Iterable of vertices
        Starting anchor set, 4k <= |anchor| <= 12kd.  Defaults to the 4k
        smallest vertex ids.
    counters: collections.Counter
        Optional case counter.

    Returns
    -------
    wtd: Weak TreeDecomposition.

    Examples
    --------
    >>> import tdrefine.decomp_manager as dm
    >>> import tdrefine.weak_manager as wm
    >>> td = dm.cycle_decomposition(6)
    >>> wtd = wm.weak_tree_decomp_gen(td.graph, td, k=3, d=2)
    >>> wtd.kind, dm.order(wtd)
    ('weak', 1)
    """
    k = _check_frame(g, td, k, d)
    n = g.number_of_nodes()
    if n < 4*k and anchor is None:
        wtd = dm.single_bag(g, kind='weak')
    else:
        s_set = u.smallest(g.nodes, 4*k) if anchor is None else anchor
        wtd, _ = heart(g, td, s_set, k, d, counters=counters)

    u.certify(
        dm.width(wtd) <= 18*k*d, 'weak_tree_decomp_gen width',
        f'{dm.width(wtd)} > {18*k*d}')
    u.certify(
        dm.degree(wtd) <= 6*d, 'weak_tree_decomp_gen degree',
        f'{dm.degree(wtd)} > {6*d}')
    u.certify(
        dm.order(wtd)*2*k <= max(n, 2*k), 'weak_tree_decomp_gen order',
        f'{dm.order(wtd)} > max({n}/{2*k}, 1)')
    dm.spread_bound_check(wtd, d-1)
    return wtd


def weak_to_strong(wtd):
    """
    Turn a weak tree-decomposition of width k into a tree-decomposition
    of width at most 2k+1 on the same tree, promoting into each child
    bag the parent-bag vertices with a new neighbor there.  Slickness
    is preserved.

    Parameters
    ----------
    wtd: decomp_manager.TreeDecomposition
        A valid weak (or partition) decomposition.

    Returns
    -------
    td: Strong TreeDecomposition.

    Examples
    --------
    >>> import tdrefine.graph_manager as gm
    >>> import tdrefine.decomp_manager as dm
    >>> import tdrefine.weak_manager as wm
    >>> g = gm.generate('path', n=4)
    >>> wtd = dm.path_decomposition(g, [{0, 1}, {2, 3}], kind='weak')
    >>> sorted(sorted(bag) for bag in wm.weak_to_strong(wtd).bags.values())
    [[0, 1], [1, 2, 3]]
    """
    violations = dm.validate(wtd, kind='weak')
    if len(violations) > 0:
        raise ValueError(
            "Invalid weak tree-decomposition:\n"
            f"{dm.report_text(violations)}")
    graph = wtd.graph
    bags = dict(wtd.bags)
    for x, y in wtd.tree.edges():
        bag_x, bag_y = wtd.bags[x], wtd.bags[y]
        promoted = {
            v for v in bag_x
            if any(w in bag_y and w not in bag_x for w in graph.adj[v])}
        bags[y] = bag_y | promoted
    td = dm.TreeDecomposition(wtd.tree, bags, graph, 'strong')

    violations = dm.validate(td)
    u.certify(
        len(violations) == 0, 'weak_to_strong validity',
        dm.report_text(violations))
    k = max(len(bag) for bag in wtd.bags.values()) - 1
    if graph.number_of_nodes() > 0:
        u.certify(
            dm.width(td) <= 2*k + 1, 'weak_to_strong width',
            f'{dm.width(td)} > 2*{k}+1')
    if dm.is_slick(wtd)[0]:
        slick, witness = dm.is_slick(td)
        u.certify(slick, 'weak_to_strong slickness', f'fails at {witness}')
    return td


def spread_small_degree(g, td, k=None, counters=None):
    """
    Slick tree-decomposition of width at most 72k+1, degree at most 12
    and order at most max(n/2k, 1); every vertex v has spread at most
    deg(v)+1.

    Parameters
    ----------
    g: networkx.Graph
    td: decomp_manager.TreeDecomposition
        A valid strong decomposition of g of width at most k-1.
    k: Integer
        Defaults to width(td) + 1.
    counters: collections.Counter
        Optional case counter.

    Returns
    -------
    td: Strong TreeDecomposition.
    """
    k = _check_frame(g, td, k, 2)
    wtd = weak_tree_decomp_gen(g, td, k, d=2, counters=counters)
    strong = weak_to_strong(wtd)

    n = g.number_of_nodes()
    u.certify(
        dm.width(strong) <= 72*k + 1, 'spread_small_degree width',
        f'{dm.width(strong)} > {72*k+1}')
    u.certify(
        dm.degree(strong) <= 12, 'spread_small_degree degree',
        f'{dm.degree(strong)} > 12')
    u.certify(
        dm.order(strong)*2*k <= max(n, 2*k), 'spread_small_degree order',
        f'{dm.order(strong)} > max({n}/{2*k}, 1)')
    dm.spread_bound_check(strong, 1)
    return strong


def tree_partition(g, td, k=None, counters=None):
    """
    Tree-partition of width at most 18k(D+2), degree at most 6(D+2) and
    order at most max(n/2k, 1), with D the maximum degree of g.

    Parameters
    ----------
    g: networkx.Graph
    td: decomp_manager.TreeDecomposition
        A valid strong decomposition of g of width at most k-1.
    k: Integer
        Defaults to width(td) + 1.
    counters: collections.Counter
        Optional case counter.

    Returns
    -------
    tp: TreeDecomposition of kind 'partition'.

    Examples
    --------
    >>> import tdrefine.graph_manager as gm
    >>> import tdrefine.decomp_manager as dm
    >>> import tdrefine.weak_manager as wm
    >>> g = gm.make_graph(1)
    >>> tp = wm.tree_partition(g, dm.single_bag(g))
    >>> tp.kind, tp.bags
    ('partition', {0: frozenset({0})})
    """
    d = gm.max_degree(g) + 2
    k = _check_frame(g, td, k, d)
    wtd = weak_tree_decomp_gen(g, td, k, d, counters=counters)
    tp = wtd.with_kind('partition')

    violations = dm.validate(tp)
    u.certify(
        len(violations) == 0, 'tree_partition validity',
        dm.report_text(violations))
    n = g.number_of_nodes()
    u.certify(
        dm.width(tp) <= 18*k*d, 'tree_partition width',
        f'{dm.width(tp)} > {18*k*d}')
    u.certify(
        dm.degree(tp) <= 6*d, 'tree_partition degree',
        f'{dm.degree(tp)} > {6*d}')
    u.certify(
        dm.order(tp)*2*k <= max(n, 2*k), 'tree_partition order',
        f'{dm.order(tp)} > max({n}/{2*k}, 1)')
    return tp
