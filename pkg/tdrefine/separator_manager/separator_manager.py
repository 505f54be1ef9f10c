# Copyright (c) 2024-2026 The tdrefine developers.
# tdrefine is open-source software under the MIT license (see LICENSE).

__all__ = [
    'Separation',
    'tree_dec_sep',
    'treewidth_sep',
    'set_sep',
    'pseudo_components',
    'gen_separation',
    'separation_set_sep',
    'separation_report',
]

import math
from collections import namedtuple
from fractions import Fraction

from .. import graph_manager as gm
from .. import decomp_manager as dm
from .. import utils as u


# Separator X, subgraphs G_1..G_m, and their cores C_i = V(G_i) - X:
Separation = namedtuple('Separation', 'x_set parts cores')
Separation.m = property(lambda self: len(self.parts))


def _check_input(g, td, check):
    if set(td.graph.nodes) != set(g.nodes):
        raise ValueError(
            "The tree-decomposition does not decompose the given graph.")
    if check:
        violations = dm.validate(td, kind='strong')
        if len(violations) > 0:
            raise ValueError(
                "Invalid input tree-decomposition:\n"
                f"{dm.report_text(violations)}")


def _heavy_nodes(td, alive, removed, gamma, threshold):
    """
    Alive nodes x whose graph G_x (vertices held by T_x, restricted to
    alive bags) weighs more than threshold.
    """
    tree = td.tree
    order = [x for x in tree.order if x in alive]
    top = {}
    for x in order:
        for v in td.bags[x]:
            if v not in removed:
                top.setdefault(v, x)
    down = {x: Fraction(0) for x in order}
    for v, x in top.items():
        down[x] += gamma[v]
    for x in reversed(order):
        if x != tree.root and tree.parent[x] in alive:
            down[tree.parent[x]] += down[x]

    heavy = []
    for x in order:
        weight = down[x] + sum(
            (gamma[v] for v in td.bags[x] if v not in removed and top[v] != x),
            Fraction(0))
        if weight > threshold:
            heavy.append(x)
    return heavy


def tree_dec_sep(g, gamma, td, q, check=True):
    """
    Find at most q tree nodes Z such that every component of
    g - U{B_z : z in Z} weighs at most gamma(g)/(q+1).

    Repeatedly take the deepest node v (ties: smallest id) whose
    subgraph G_v weighs more than gamma(g)/(q+1), then drop T_v and the
    vertices of G_v.

    Parameters
    ----------
    g: networkx.Graph
    gamma: graph_manager.Weighting
    td: decomp_manager.TreeDecomposition
        A valid strong decomposition of g.
    q: Integer
        Node budget, q >= 0.
    check: Bool
        Validate td first.

    Returns
    -------
    z_set: frozenset of tree nodes.

    Examples
    --------
    >>> import tdrefine.graph_manager as gm
    >>> import tdrefine.decomp_manager as dm
    >>> import tdrefine.separator_manager as sm
    >>> g = gm.generate('path', n=9)
    >>> td = dm.path_decomposition(g, [{i, i+1} for i in range(8)])
    >>> sorted(sm.tree_dec_sep(g, gm.Weighting.unit(g), td, q=2))
    [1, 5]
    """
    if q < 0:
        raise ValueError(f"The node budget q must be >= 0, got {q}.")
    _check_input(g, td, check)
    total = gamma(g.nodes)
    if q == 0 or total == 0:
        return frozenset()

    threshold = total / (q+1)
    alive = set(td.tree.nodes)
    removed = set()
    z_set = []
    for _ in range(q):
        heavy = _heavy_nodes(td, alive, removed, gamma, threshold)
        if len(heavy) == 0:
            break
        v = max(heavy, key=lambda x: (td.tree.depth[x], -x))
        z_set.append(v)
        subtree = td.tree.subtree(v) & alive
        for x in subtree:
            removed.update(td.bags[x])
        alive -= subtree

    x_set = set().union(*(td.bags[z] for z in z_set))
    rest = gm.induced_subgraph(g, set(g.nodes) - x_set)
    for comp in gm.components(rest):
        u.certify(
            gamma(comp) <= threshold, 'tree_dec_sep component weight',
            f'component of weight {gamma(comp)} > {threshold} (q={q})')
    return frozenset(z_set)


def treewidth_sep(g, gamma, td, q, check=True):
    """
    Vertex separator X = U{B_z : z in tree_dec_sep(...)} with
    |X| <= q(k+1) for k = width(td), every component of g - X weighing
    at most gamma(g)/(q+1).
    """
    z_set = tree_dec_sep(g, gamma, td, q, check=check)
    x_set = frozenset().union(*(td.bags[z] for z in z_set))
    k = dm.width(td)
    u.certify(
        len(x_set) <= q*(k+1), 'treewidth_sep size',
        f'|X| = {len(x_set)} > {q}*({k}+1)')
    return x_set


def set_sep(g, td, s_set, q, check=True):
    """
    Vertex separator X with |X| <= q(k+1) such that every component of
    g - X has at most |S|/(q+1) vertices of s_set.
    """
    s_set = frozenset(s_set)
    unknown = s_set.difference(g.nodes)
    if len(unknown) > 0:
        raise ValueError(f"Unknown vertices in target set: {sorted(unknown)}.")
    return treewidth_sep(g, gm.Weighting.indicator(s_set), td, q, check=check)


def pseudo_components(g, gamma, x_set, w):
    """
    Group the components of g - X into pseudo-components of weight at
    most w, no two of which fit together in w.

    Components are placed first-fit by decreasing weight (ties: smallest
    id), then groups are merged pairwise while any two fit within w.

    Parameters
    ----------
    g: networkx.Graph
    gamma: graph_manager.Weighting
    x_set: Iterable of vertices
    w: Rational
        Weight cap, w > 0; every component of g - X must weigh <= w.

    Returns
    -------
    sep: Separation with parts G_i = g[C_i | X], ordered by smallest
        core vertex.

    Examples
    --------
    >>> import tdrefine.graph_manager as gm
    >>> import tdrefine.separator_manager as sm
    >>> g = gm.make_graph(4)
    >>> sep = sm.pseudo_components(g, gm.Weighting.unit(g), set(), 2)
    >>> sep.m, sep.cores
    (2, [frozenset({0, 1}), frozenset({2, 3})])
    """
    w = u.to_fraction(w, name='w')
    if w <= 0:
        raise ValueError(f"The weight cap w must be positive, got {w}.")
    x_set = frozenset(x_set)
    rest = gm.induced_subgraph(g, set(g.nodes) - x_set)
    comps = gm.components(rest)
    weights = [gamma(comp) for comp in comps]
    for comp, weight in zip(comps, weights):
        if weight > w:
            raise ValueError(
                f"Component containing vertex {min(comp)} weighs {weight}, "
                f"more than w = {w}.")

    ranked = sorted(
        range(len(comps)), key=lambda i: (-weights[i], min(comps[i])))
    groups = []
    for i in ranked:
        for group in groups:
            if group[0] + weights[i] <= w:
                group[0] += weights[i]
                group[1].append(comps[i])
                break
        else:
            groups.append([weights[i], [comps[i]]])

    merged = True
    while merged:
        merged = False
        for i in range(len(groups)):
            for j in range(i+1, len(groups)):
                if groups[i][0] + groups[j][0] <= w:
                    groups[i][0] += groups[j][0]
                    groups[i][1] += groups.pop(j)[1]
                    merged = True
                    break
            if merged:
                break

    cores = sorted(
        (frozenset().union(*group[1]) for group in groups), key=min)
    parts = [gm.induced_subgraph(g, core | x_set) for core in cores]
    sep = Separation(x_set, parts, cores)

    outside = gamma(rest.nodes)
    bound = max(
        math.ceil(2*outside/w) - 1,
        1 if rest.number_of_nodes() > 0 else 0)
    u.certify(
        sep.m <= bound, 'pseudo_components count',
        f'm = {sep.m} > {bound}')
    core_weights = [gamma(core) for core in cores]
    for i in range(len(cores)):
        u.certify(
            core_weights[i] <= w, 'pseudo_components weight',
            f'part {i} weighs {core_weights[i]} > {w}')
        for j in range(i+1, len(cores)):
            u.certify(
                core_weights[i] + core_weights[j] > w,
                'pseudo_components minimal pair',
                f'parts {i} and {j} fit together within {w}')
    return sep


def gen_separation(g, gamma, td, beta, check=True):
    """
    Separation with |X| <= (ceil(1/beta) - 1)(k+1), at most
    ceil(2/beta) - 1 parts, each part weighing at most beta*gamma(g)
    outside X.

    Parameters
    ----------
    g: networkx.Graph
    gamma: graph_manager.Weighting
    td: decomp_manager.TreeDecomposition
    beta: Rational
        Balance parameter, beta > 0.
    check: Bool
        Validate td first.

    Returns
    -------
    sep: Separation
    """
    beta = u.to_fraction(beta, name='beta')
    if beta <= 0:
        raise ValueError(f"The balance parameter beta must be > 0, got {beta}.")
    total = gamma(g.nodes)
    if total == 0:
        _check_input(g, td, check)
        if g.number_of_nodes() == 0:
            return Separation(frozenset(), [], [])
        return Separation(frozenset(), [g], [frozenset(g.nodes)])

    q = math.ceil(1/beta) - 1
    x_set = treewidth_sep(g, gamma, td, q, check=check)
    sep = pseudo_components(g, gamma, x_set, beta*total)

    k = dm.width(td)
    u.certify(
        len(x_set) <= q*(k+1), 'gen_separation size',
        f'|X| = {len(x_set)} > {q}*({k}+1)')
    bound = max(math.ceil(2/beta) - 1, 1)
    u.certify(sep.m <= bound, 'gen_separation count', f'm = {sep.m} > {bound}')
    return sep


def separation_set_sep(g, td, s_set, beta, check=True):
    """
    Separation in which every G_i - X holds at most beta*|S| vertices
    of s_set.  Parts are padded with copies of g[X] up to m = 2.
    """
    s_set = frozenset(s_set)
    unknown = s_set.difference(g.nodes)
    if len(unknown) > 0:
        raise ValueError(f"Unknown vertices in target set: {sorted(unknown)}.")
    beta = u.to_fraction(beta, name='beta')
    sep = gen_separation(
        g, gm.Weighting.indicator(s_set), td, beta, check=check)

    parts, cores = list(sep.parts), list(sep.cores)
    while len(parts) < 2:
        parts.append(gm.induced_subgraph(g, sep.x_set))
        cores.append(frozenset())
    for i, core in enumerate(cores):
        u.certify(
            len(core & s_set) <= beta*len(s_set),
            'separation_set_sep balance',
            f'part {i} holds {len(core & s_set)} > {beta}*{len(s_set)}')
    return Separation(sep.x_set, parts, cores)


def separation_report(g, sep):
    """
    Check the Separation invariants: the parts cover g edge-exactly and
    any two parts intersect exactly in X.

    Returns
    -------
    problems: List of strings, empty if the separation is sound.
    """
    problems = []
    vertices = set(sep.x_set)
    for part in sep.parts:
        vertices.update(part.nodes)
    missing = set(g.nodes) - vertices
    if len(missing) > 0:
        problems.append(f'vertices outside every part: {sorted(missing)}')
    edges = set()
    for part in sep.parts:
        edges.update(frozenset(e) for e in part.edges)
        extra = [e for e in part.edges if not g.has_edge(*e)]
        if len(extra) > 0:
            problems.append(f'part edges not in the graph: {extra}')
    uncovered = [
        e for e in g.edges
        if frozenset(e) not in edges and not set(e) <= set(sep.x_set)]
    if len(uncovered) > 0:
        problems.append(f'graph edges in no part: {sorted(uncovered)}')
    for i in range(len(sep.parts)):
        for j in range(i+1, len(sep.parts)):
            common = set(sep.parts[i].nodes) & set(sep.parts[j].nodes)
            if common != set(sep.x_set):
                problems.append(
                    f'parts {i} and {j} intersect in {sorted(common)}, not X')
    return problems
