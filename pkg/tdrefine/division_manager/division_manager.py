# Copyright (c) 2024-2026 The tdrefine developers.
# tdrefine is open-source software under the MIT license (see LICENSE).

__all__ = [
    'Division',
    'find_subtree',
    'partition_tree',
    'find_weighted_subtree',
    'partition_weighted_tree',
    'division_report',
    'quotient',
    'small_tree_decomp',
    'make_small',
    'slick_and_small',
]

from collections import namedtuple

from .. import decomp_manager as dm
from .. import slick_manager as sl
from .. import utils as u


# Subtrees T_1..T_m of a host tree (node sets) and their roots r_i:
Division = namedtuple('Division', 'subtrees roots')
Division.m = property(lambda self: len(self.subtrees))


def _node_weights(tree, gamma, k):
    """Integer node weights in {1..k-1}, checked."""
    weight = {}
    for x in tree.nodes:
        if x not in gamma:
            raise ValueError(f"Tree node {x} has no weight.")
        value = gamma[x]
        if int(value) != value or not 1 <= value <= k-1:
            raise ValueError(
                f"Node weights must be integers in [1, {k-1}], node {x} "
                f"weighs {value}.")
        weight[x] = int(value)
    return weight


def _down_weights(tree, nodes, weight):
    """gamma(T_x) for every x of an upward-closed node set."""
    down = {x: weight[x] for x in nodes}
    for x in reversed(tree.order):
        if x in nodes and x != tree.root:
            down[tree.parent[x]] += down[x]
    return down


def _kids(tree, nodes, x):
    return [c for c in tree.children[x] if c in nodes]


def _below(tree, nodes, tops):
    """Nodes of the subtrees hanging from tops, within nodes."""
    found = list(tops)
    for x in found:
        found.extend(_kids(tree, nodes, x))
    return frozenset(found)


def _anchor(tree, nodes, weight, k):
    """
    Deepest node v (ties: smallest id) with gamma(T_v) >= k-1+gamma(v),
    its children in id order, and the child subtree weights.
    """
    down = _down_weights(tree, nodes, weight)
    candidates = [x for x in nodes if down[x] >= k - 1 + weight[x]]
    v = max(candidates, key=lambda x: (tree.depth[x], -x))
    kids = _kids(tree, nodes, v)
    return v, kids, [down[c] for c in kids]


def _prefix(sizes, k):
    """Minimal c with sizes[0] + ... + sizes[c-1] >= k-1."""
    total = 0
    for c, size in enumerate(sizes, 1):
        total += size
        if total >= k-1:
            return c
    raise u.CertificateError(
        'subtree prefix', f'children sum to {total} < {k-1}')


def find_subtree(tree, k):
    """
    Find a subtree T' with k <= |T'| <= 2k-2 nodes whose root v is its
    only node adjacent to the rest of the tree.

    v is the deepest node with |T_v| >= k (ties: smallest id), and T'
    holds v plus the first c child subtrees of v, c minimal with
    |T_w1| + ... + |T_wc| >= k-1.

    Parameters
    ----------
    tree: decomp_manager.RootedTree
    k: Integer
        Window parameter, 2 <= k <= |V(tree)|.

    Returns
    -------
    subtree: frozenset of tree nodes.
    v: Root of the subtree.

    Examples
    --------
    >>> import tdrefine.decomp_manager as dm
    >>> import tdrefine.division_manager as dv
    >>> star = dm.RootedTree({0:0, 1:0, 2:0, 3:0, 4:0})
    >>> dv.find_subtree(star, 2)
    (frozenset({0, 1}), 0)
    """
    if not 2 <= k <= len(tree):
        raise ValueError(
            f"The window parameter k must lie in [2, {len(tree)}], got {k}.")
    nodes = set(tree.nodes)
    unit = {x: 1 for x in nodes}
    v, kids, sizes = _anchor(tree, nodes, unit, k)
    c = _prefix(sizes, k)
    subtree = _below(tree, nodes, kids[:c]) | {v}
    u.certify(
        k <= len(subtree) <= 2*k - 2, 'find_subtree window',
        f'|T\'| = {len(subtree)} outside [{k}, {2*k-2}]')
    return frozenset(subtree), v


def _subset_sums(sizes, cap):
    """
    Reachable subset sums up to cap, each with the first subset found
    when scanning the children in order.
    """
    sums = {0: ()}
    for i, size in enumerate(sizes):
        for total, chosen in sorted(sums.items()):
            if total + size <= cap and total + size not in sums:
                sums[total + size] = chosen + (i,)
    return sums


def _choose_children(sizes, k, current):
    """
    Indices of the children to peel: the literal minimal prefix when it
    leaves at least k nodes behind, else a subset sum keeping k (or
    k-1) nodes in the remainder.
    """
    c = _prefix(sizes, k)
    literal = tuple(range(c))
    if current - sum(sizes[:c]) >= k:
        return literal
    sums = _subset_sums(sizes, 2*k - 3)
    for keep in (k, k-1):
        hits = [
            total for total in sums
            if k-1 <= total <= min(2*k - 3, current - keep)]
        if len(hits) > 0:
            return sums[min(hits)]
    return literal


def partition_tree(tree, k):
    """
    Divide a tree into subtrees of k..2k-2 nodes (the part holding the
    root may be smaller), with at most |V(T)|/(k-1) parts.

    Subtrees are peeled off while more than 2k-2 nodes remain.  Each
    peel picks the anchor node v as find_subtree does, and chooses
    v's children so the remainder keeps at least k nodes when possible.

    Parameters
    ----------
    tree: decomp_manager.RootedTree
    k: Integer
        Window parameter, 2 <= k <= |V(tree)|.

    Returns
    -------
    div: Division, with the part holding the host root first.

    Examples
    --------
    >>> import tdrefine.decomp_manager as dm
    >>> import tdrefine.division_manager as dv
    >>> path = dm.RootedTree({i: max(i-1, 0) for i in range(10)})
    >>> div = dv.partition_tree(path, 3)
    >>> [sorted(part) for part in div.subtrees]
    [[0, 1, 2, 3], [3, 4, 5], [5, 6, 7], [7, 8, 9]]
    """
    if k < 2:
        raise ValueError(f"The window parameter k must be >= 2, got {k}.")
    n = len(tree)
    if n < k:
        raise ValueError(
            f"A tree with {n} nodes cannot be divided into parts of at "
            f"least k = {k} nodes.")

    current = set(tree.nodes)
    unit = {x: 1 for x in current}
    peeled = []
    while len(current) > 2*k - 2:
        v, kids, sizes = _anchor(tree, current, unit, k)
        chosen = _choose_children(sizes, k, len(current))
        hanging = _below(tree, current, [kids[i] for i in chosen])
        part = frozenset(hanging | {v})
        u.certify(
            k <= len(part) <= 2*k - 2, 'partition_tree window',
            f'peeled part of {len(part)} nodes outside [{k}, {2*k-2}]')
        peeled.append((part, v))
        current -= hanging

    div = Division(
        [frozenset(current)] + [part for part, _ in reversed(peeled)],
        [tree.root] + [v for _, v in reversed(peeled)])
    u.certify(
        div.m*(k-1) <= n, 'partition_tree count',
        f'm = {div.m} > {n}/{k-1}')
    problems = division_report(tree, div)
    u.certify(len(problems) == 0, 'partition_tree division', '; '.join(problems))
    return div


def find_weighted_subtree(tree, gamma, k):
    """
    Weighted find_subtree: a subtree T' rooted at v, attached to the rest
    of the tree only at v, with k <= gamma(T') <= 4k-6 and
    k-1 <= gamma(T'-v) <= 3k-5.

    Parameters
    ----------
    tree: decomp_manager.RootedTree
    gamma: Dict
        Integer node weights in {1, ..., k-1}, with gamma(T) >= 2k-2.
    k: Integer
        Window parameter, k >= 2.

    Returns
    -------
    subtree: frozenset of tree nodes.
    v: Root of the subtree.

    Examples
    --------
    >>> import tdrefine.decomp_manager as dm
    >>> import tdrefine.division_manager as dv
    >>> star = dm.RootedTree({0:0, 1:0, 2:0, 3:0, 4:0})
    >>> gamma = {0: 2, 1: 1, 2: 1, 3: 1, 4: 1}
    >>> dv.find_weighted_subtree(star, gamma, 3)
    (frozenset({0, 1, 2}), 0)
    """
    if k < 2:
        raise ValueError(f"The window parameter k must be >= 2, got {k}.")
    weight = _node_weights(tree, gamma, k)
    total = sum(weight.values())
    if total < 2*k - 2:
        raise ValueError(
            f"The tree weighs {total}, less than 2k-2 = {2*k-2}.")
    return _weighted_peel(tree, set(tree.nodes), weight, k)


def _weighted_peel(tree, nodes, weight, k):
    v, kids, sizes = _anchor(tree, nodes, weight, k)
    c = _prefix(sizes, k)
    subtree = frozenset(_below(tree, nodes, kids[:c]) | {v})
    below = sum(sizes[:c])
    u.certify(
        k-1 <= below <= 3*k - 5, 'find_weighted_subtree lower window',
        f'gamma(T\'-v) = {below} outside [{k-1}, {3*k-5}]')
    u.certify(
        k <= below + weight[v] <= 4*k - 6, 'find_weighted_subtree window',
        f'gamma(T\') = {below + weight[v]} outside [{k}, {4*k-6}]')
    return subtree, v


def partition_weighted_tree(tree, gamma, k, root_cap=None):
    """
    Divide a node-weighted tree into subtrees T_1..T_m with
    m <= gamma(T)/(k-1), every gamma(T_i) in [k, 5k+2], and
    gamma(T_i - r_i) in [k-1, 3k-5] for i >= 2.

    Parameters
    ----------
    tree: decomp_manager.RootedTree
    gamma: Dict
        Integer node weights in {1, ..., k-1}, with gamma(T) >= 2k-2.
    k: Integer
        Window parameter, k >= 2.
    root_cap: Integer
        Keep peeling while the root part weighs more than root_cap
        (default and maximum 5k+2, minimum 4k-6).

    Returns
    -------
    div: Division, with the part holding the host root first.
    """
    if k < 2:
        raise ValueError(f"The window parameter k must be >= 2, got {k}.")
    cap = 5*k + 2 if root_cap is None else min(root_cap, 5*k + 2)
    if cap < 4*k - 6:
        raise ValueError(
            f"The root cap must be at least 4k-6 = {4*k-6}, got {root_cap}.")
    weight = _node_weights(tree, gamma, k)
    total = sum(weight.values())
    if total < 2*k - 2:
        raise ValueError(
            f"The tree weighs {total}, less than 2k-2 = {2*k-2}.")

    current = set(tree.nodes)
    peeled = []
    while sum(weight[x] for x in current) > cap:
        part, v = _weighted_peel(tree, current, weight, k)
        peeled.append((part, v))
        current -= part - {v}

    div = Division(
        [frozenset(current)] + [part for part, _ in reversed(peeled)],
        [tree.root] + [v for _, v in reversed(peeled)])
    for i, part in enumerate(div.subtrees):
        mass = sum(weight[x] for x in part)
        upper = cap if i == 0 else 5*k + 2
        u.certify(
            k <= mass <= upper, 'partition_weighted_tree window',
            f'part {i} weighs {mass} outside [{k}, {upper}]')
    u.certify(
        div.m*(k-1) <= total, 'partition_weighted_tree count',
        f'm = {div.m} > {total}/{k-1}')
    problems = division_report(tree, div)
    u.certify(
        len(problems) == 0, 'partition_weighted_tree division',
        '; '.join(problems))
    return div


def division_report(tree, div):
    """
    Check the Division invariants against its host tree: parts are
    connected subtrees rooted at r_i, the host root lies in T_1, every
    tree edge lies in exactly one part, and each T_i (i >= 2) meets the
    earlier parts exactly in r_i.

    Returns
    -------
    problems: List of strings, empty if the division is sound.
    """
    problems = []
    if len(div.subtrees) != len(div.roots):
        return [f'{len(div.subtrees)} subtrees but {len(div.roots)} roots']
    if div.m == 0:
        return ['empty division']
    if tree.root not in div.subtrees[0] or div.roots[0] != tree.root:
        problems.append('the host root is not the root of T_1')

    for i, (part, r) in enumerate(zip(div.subtrees, div.roots)):
        unknown = [x for x in part if x not in tree]
        if len(unknown) > 0:
            problems.append(f'part {i} has unknown nodes {sorted(unknown)}')
            continue
        if r not in part:
            problems.append(f'root {r} of part {i} lies outside it')
            continue
        loose = [
            x for x in part
            if x != r and (x == tree.root or tree.parent[x] not in part)]
        if len(loose) > 0:
            problems.append(
                f'part {i} is not a subtree rooted at {r}: {sorted(loose)}')

    covered = set().union(*div.subtrees)
    missing = set(tree.nodes) - covered
    if len(missing) > 0:
        problems.append(f'nodes in no part: {sorted(missing)}')
    for x, y in tree.edges():
        holders = [
            i for i, part in enumerate(div.subtrees)
            if x in part and y in part]
        if len(holders) != 1:
            problems.append(f'edge {x}-{y} lies in parts {holders}')

    seen = set(div.subtrees[0])
    for i in range(1, div.m):
        common = seen & div.subtrees[i]
        if common != {div.roots[i]}:
            problems.append(
                f'part {i} meets the earlier parts in {sorted(common)}, '
                f'not {{{div.roots[i]}}}')
        seen |= div.subtrees[i]
    return problems


def quotient(td, div):
    """
    Quotient of a tree-decomposition with respect to a division of its
    tree.

    Node i of the quotient tree has bag C_i, the union of the bags of
    T_i (without r_i for i >= 1); its parent is the smallest a < i with
    r_i in T_a.  Nodes are 0-based, node 0 holds T_1.

    Parameters
    ----------
    td: decomp_manager.TreeDecomposition
    div: Division of td.tree

    Returns
    -------
    quotient_td: TreeDecomposition of the same graph and kind.

    Examples
    --------
    >>> import tdrefine.decomp_manager as dm
    >>> import tdrefine.division_manager as dv
    >>> td = dm.cycle_decomposition(6)
    >>> div = dv.Division([frozenset({0, 1}), frozenset({1, 2, 3})], [0, 1])
    >>> sorted(sorted(bag) for bag in dv.quotient(td, div).bags.values())
    [[0, 1, 2, 3], [0, 3, 4, 5]]
    """
    problems = division_report(td.tree, div)
    if len(problems) > 0:
        raise ValueError(
            "Invalid division of the decomposition tree:\n  "
            + "\n  ".join(problems))
    parent = {0: 0}
    bags = {0: frozenset().union(*(td.bags[x] for x in div.subtrees[0]))}
    for i in range(1, div.m):
        r = div.roots[i]
        parent[i] = min(a for a in range(i) if r in div.subtrees[a])
        bags[i] = frozenset().union(
            *(td.bags[x] for x in div.subtrees[i] if x != r))
    return dm.TreeDecomposition(
        dm.RootedTree(parent), bags, td.graph, td.kind)


def _check_strong(g, td):
    if set(td.graph.nodes) != set(g.nodes):
        raise ValueError(
            "The tree-decomposition does not decompose the given graph.")
    violations = dm.validate(td, kind='strong')
    if len(violations) > 0:
        raise ValueError(
            f"Invalid input tree-decomposition:\n{dm.report_text(violations)}")


def small_tree_decomp(g, td, k=None):
    """
    Tree-decomposition of width at most 3k-1 and order at most
    max(n/k - 1, 1).

    Smooth the input to width k, divide its tree into parts of k+1..2k
    nodes, and take the quotient.

    Parameters
    ----------
    g: networkx.Graph
    td: decomp_manager.TreeDecomposition
        A valid strong decomposition of g of width at most k.
    k: Integer
        Width budget, k >= max(width(td), 1); defaults to that value.

    Returns
    -------
    small_td: TreeDecomposition

    Examples
    --------
    >>> import tdrefine.decomp_manager as dm
    >>> import tdrefine.division_manager as dv
    >>> td = dm.cycle_decomposition(12)
    >>> small = dv.small_tree_decomp(td.graph, td, k=2)
    >>> dm.width(small) <= 5, dm.order(small) <= 5
    (True, True)
    """
    _check_strong(g, td)
    width = dm.width(td)
    k = max(width, 1) if k is None else k
    if k < max(width, 1):
        raise ValueError(
            f"The width budget k = {k} must be at least "
            f"max(width, 1) = {max(width, 1)}.")
    n = g.number_of_nodes()
    if n <= 2*k:
        return dm.single_bag(g)

    smooth = dm.smooth_decomposition(g, td, k)
    div = partition_tree(smooth.tree, k+1)
    small_td = quotient(smooth, div)

    violations = dm.validate(small_td)
    u.certify(
        len(violations) == 0, 'small_tree_decomp validity',
        dm.report_text(violations))
    u.certify(
        dm.width(small_td) <= 3*k - 1, 'small_tree_decomp width',
        f'{dm.width(small_td)} > {3*k-1}')
    u.certify(
        dm.order(small_td)*k <= max(n - k, k), 'small_tree_decomp order',
        f'{dm.order(small_td)} > max({n}/{k} - 1, 1)')
    return small_td


def make_small(g, td, ell):
    """
    Turn a slick decomposition of width at most ell-2 into a slick one
    of width at most 4*ell-7 and order at most n/(ell-1).

    Nodes are weighted by the vertices they introduce (the root by its
    whole bag), the tree is divided with partition_weighted_tree, and
    the quotient is returned.

    Parameters
    ----------
    g: networkx.Graph
        A graph with at least 2*ell-2 vertices.
    td: decomp_manager.TreeDecomposition
        A valid, 1-slick, strong decomposition of g.
    ell: Integer
        Parameter, ell >= 2.

    Returns
    -------
    small_td: TreeDecomposition
    """
    if ell < 2:
        raise ValueError(f"Parameter ell must be >= 2, got {ell}.")
    _check_strong(g, td)
    slick, witness = dm.is_slick(td)
    if not slick:
        raise ValueError(
            f"The input decomposition is not slick, failing at {witness}.")
    if dm.width(td) > ell - 2:
        raise ValueError(
            f"The input width {dm.width(td)} exceeds ell-2 = {ell-2}.")
    n = g.number_of_nodes()
    if n < 2*ell - 2:
        raise ValueError(
            f"The graph has {n} vertices, fewer than 2*ell-2 = {2*ell-2}; "
            "use a single bag instead.")

    td = dm.contract_subset_bags(td)
    tree = td.tree
    gamma = {tree.root: len(td.bags[tree.root])}
    for x, y in tree.edges():
        gamma[y] = len(td.bags[y] - td.bags[x])
    empty = sorted(y for y, value in gamma.items() if value == 0)
    if len(empty) > 0:
        raise ValueError(
            f"Nodes {empty} introduce no vertex; the input decomposition "
            "is not slick.")

    div = partition_weighted_tree(tree, gamma, ell, root_cap=4*ell - 6)
    small_td = quotient(td, div)

    violations = dm.validate(small_td)
    u.certify(
        len(violations) == 0, 'make_small validity',
        dm.report_text(violations))
    u.certify(
        dm.width(small_td) <= 4*ell - 7, 'make_small width',
        f'{dm.width(small_td)} > {4*ell-7}')
    u.certify(
        dm.order(small_td)*(ell-1) <= n, 'make_small order',
        f'{dm.order(small_td)} > {n}/{ell-1}')
    slick, witness = dm.is_slick(small_td)
    u.certify(slick, 'make_small slickness', f'fails at {witness}')
    return small_td


def slick_and_small(g, td, k=None, counters=None):
    """
    Slick tree-decomposition of width at most 56k+58 and order at most
    max(n/(14k+14), 1); every vertex v then has spread at most
    deg(v)+1.

    Parameters
    ----------
    g: networkx.Graph
    td: decomp_manager.TreeDecomposition
        A valid strong decomposition of g of width at most k.
    k: Integer
        Width budget, defaults to width(td).
    counters: collections.Counter
        Optional case counter, passed to slick_main.

    Returns
    -------
    small_td: TreeDecomposition
    """
    _check_strong(g, td)
    width = max(dm.width(td), 0)
    k = width if k is None else k
    if k < width:
        raise ValueError(
            f"The input decomposition has width {width} > k = {k}.")
    ell = 14*k + 15
    n = g.number_of_nodes()
    if n <= 2*ell - 3:
        small_td = dm.single_bag(g)
    else:
        slick_td = sl.slick_main(g, td, k, counters=counters)
        small_td = make_small(g, slick_td, ell)

    u.certify(
        dm.width(small_td) <= 56*k + 58, 'slick_and_small width',
        f'{dm.width(small_td)} > {56*k+58}')
    u.certify(
        dm.order(small_td)*(14*k + 14) <= max(n, 14*k + 14),
        'slick_and_small order',
        f'{dm.order(small_td)} > max({n}/{14*k+14}, 1)')
    dm.spread_bound_check(small_td, 1)
    return small_td
