# Copyright (c) 2024-2026 The tdrefine developers.
# tdrefine is open-source software under the MIT license (see LICENSE).

__all__ = [
    'alpha_beta',
    'alpha_beta_bounds',
    'slick_main',
]

import math
from collections import Counter

from .. import graph_manager as gm
from .. import decomp_manager as dm
from .. import separator_manager as sm
from .. import utils as u


def alpha_beta_bounds(ell, t):
    """
    Bounds guaranteed by alpha_beta for parameters (ell, t).

    Returns
    -------
    bounds: Dict with the maximum bag size, the tree degree, and the
        degree of the root.
    """
    extra = math.ceil(4*ell/t)
    return {
        'bag_size': 2*t + 3*ell,
        'degree': 4 + extra,
        'root_degree': 3 + extra,
    }


def _alpha_beta(g, td, ell, t, r_set, forest, counters):
    """Build the decomposition of g into forest, return its root node."""
    n = g.number_of_nodes()
    if n <= 2*t + 3*ell:
        counters['alpha_beta_base'] += 1
        return forest.add(g.nodes)
    counters['alpha_beta_frame'] += 1

    size = 2*t + 2*ell
    r_set = set(r_set)
    r_set.update(u.smallest(set(g.nodes) - r_set, size - len(r_set)))
    u.certify(
        len(r_set) == size, 'alpha_beta padding',
        f'|R| = {len(r_set)} != {size} with {n} vertices')

    q = math.ceil(size/t) - 1
    x_set = sm.set_sep(g, td, r_set, q, check=False)
    if len(x_set) > ell:
        raise ValueError(
            f"Separator of {len(x_set)} vertices exceeds ell = {ell}; "
            "ell is too small for the width of the input decomposition.")

    sep = sm.pseudo_components(g, gm.Weighting.indicator(r_set), x_set, t)
    u.certify(
        sep.m >= 3, 'alpha_beta part count', f'm = {sep.m} < 3 with |V| = {n}')

    root = forest.add(x_set | r_set)
    for part, core in zip(sep.parts, sep.cores):
        r_i = x_set | (r_set & core)
        r_minus = {
            v for v in r_i
            if all(w in r_i for w in part.adj[v])}
        r_prime = r_i - r_minus
        r_seed = set(r_prime)
        for v in sorted(r_prime):
            r_seed.add(min(w for w in part.adj[v] if w not in r_i))

        child_vertices = (x_set | core) - r_minus
        if len(child_vertices) == 0:
            continue
        u.certify(
            len(child_vertices) < n, 'alpha_beta progress',
            f'child graph keeps all {n} vertices')
        child = gm.induced_subgraph(g, child_vertices)
        child_root = _alpha_beta(
            child, dm.restrict(td, child), ell, t, r_seed, forest, counters)
        forest.attach(child_root, root)
    return root


def alpha_beta(g, td, ell, t, r_set=(), counters=None, check=True):
    """
    Build a slick tree-decomposition of g whose root bag contains R.

    Every bag has at most 2t+3*ell vertices, the tree degree is at most
    4+ceil(4*ell/t), and the root degree at most 3+ceil(4*ell/t).

    Parameters
    ----------
    g: networkx.Graph
    td: decomp_manager.TreeDecomposition
        A valid strong decomposition of g, threaded through the recursion
        to compute separators.
    ell: Integer
        Separator budget; needs (ceil((2t+2*ell)/t) - 1)(width(td)+1) <= ell.
    t: Integer
        Cap on the number of R-vertices per pseudo-component.
    r_set: Iterable of vertices
        Root seed R, with |R| <= 2t+2*ell.
    counters: collections.Counter
        Optional case counter (alpha_beta_base, alpha_beta_frame).
    check: Bool
        Validate the input decomposition first.

    Returns
    -------
    slick_td: A rooted, 1-slick, strong TreeDecomposition.

    Examples
    --------
    >>> import tdrefine.graph_manager as gm
    >>> import tdrefine.decomp_manager as dm
    >>> import tdrefine.slick_manager as sl
    >>> g = gm.generate('cycle', n=8)
    >>> td = sl.alpha_beta(g, dm.cycle_decomposition(8), ell=6, t=12)
    >>> dm.order(td)
    1
    """
    if ell < 1 or t < 1:
        raise ValueError(
            f"Parameters ell and t must be positive, got ell={ell}, t={t}.")
    r_set = frozenset(r_set)
    if len(r_set) > 2*t + 2*ell:
        raise ValueError(
            f"The root seed has {len(r_set)} vertices, more than "
            f"2t+2*ell = {2*t+2*ell}.")
    unknown = r_set.difference(g.nodes)
    if len(unknown) > 0:
        raise ValueError(f"Unknown vertices in root seed: {sorted(unknown)}.")
    if set(td.graph.nodes) != set(g.nodes):
        raise ValueError(
            "The tree-decomposition does not decompose the given graph.")
    if check:
        violations = dm.validate(td, kind='strong')
        if len(violations) > 0:
            raise ValueError(
                "Invalid input tree-decomposition:\n"
                f"{dm.report_text(violations)}")
    q = math.ceil((2*t + 2*ell)/t) - 1
    k = max(dm.width(td), 0)
    if q*(k+1) > ell:
        raise ValueError(
            f"ell = {ell} is too small for input width {k}: separators may "
            f"need {q}*({k}+1) = {q*(k+1)} vertices.")
    if counters is None:
        counters = Counter()

    forest = dm.Forest()
    with u.recursion_limit(4*g.number_of_nodes() + 1000):
        root = _alpha_beta(g, td, ell, t, r_set, forest, counters)
    slick_td = forest.freeze(root, g)

    bounds = alpha_beta_bounds(ell, t)
    u.certify(
        r_set <= slick_td.bags[slick_td.tree.root], 'alpha_beta root seed',
        'R is not inside the root bag')
    largest = max(len(bag) for bag in slick_td.bags.values())
    u.certify(
        largest <= bounds['bag_size'], 'alpha_beta bag size',
        f'{largest} > {bounds["bag_size"]}')
    u.certify(
        dm.degree(slick_td) <= bounds['degree'], 'alpha_beta degree',
        f'{dm.degree(slick_td)} > {bounds["degree"]}')
    root_degree = slick_td.tree.degree(slick_td.tree.root)
    u.certify(
        root_degree <= bounds['root_degree'], 'alpha_beta root degree',
        f'{root_degree} > {bounds["root_degree"]}')
    violations = dm.validate(slick_td)
    u.certify(
        len(violations) == 0, 'alpha_beta validity',
        dm.report_text(violations))
    slick, witness = dm.is_slick(slick_td)
    u.certify(slick, 'alpha_beta slickness', f'fails at {witness}')
    return slick_td


def slick_main(g, td, k=None, counters=None):
    """
    Slick tree-decomposition of width at most 14k+13 and degree at most
    6; every vertex v then has spread at most deg(v)+1.

    Parameters
    ----------
    g: networkx.Graph
    td: decomp_manager.TreeDecomposition
        A valid strong decomposition of g of width at most k.
    k: Integer
        Width budget, defaults to width(td).
    counters: collections.Counter
        Optional case counter.

    Returns
    -------
    slick_td: TreeDecomposition
    """
    width = max(dm.width(td), 0)
    k = width if k is None else k
    if k < width:
        raise ValueError(
            f"The input decomposition has width {width} > k = {k}.")
    ell = 2*(k+1)
    t = 2*ell
    slick_td = alpha_beta(g, td, ell, t, counters=counters)

    u.certify(
        dm.width(slick_td) <= 14*k + 13, 'slick_main width',
        f'{dm.width(slick_td)} > {14*k+13}')
    u.certify(
        dm.degree(slick_td) <= 6, 'slick_main degree',
        f'{dm.degree(slick_td)} > 6')
    dm.spread_bound_check(slick_td, 1)
    return slick_td
