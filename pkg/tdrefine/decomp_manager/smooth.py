# Copyright (c) 2024-2026 The tdrefine developers.
# tdrefine is open-source software under the MIT license (see LICENSE).

__all__ = [
    'smooth_decomposition',
    'is_smooth',
]

from collections import deque

from .. import utils as u
from .decomp_manager import (
    Forest, validate, report_text, width)


def _contract(bags, adj, keep, drop):
    """Contract tree edge keep-drop into keep."""
    bags[keep] |= bags.pop(drop)
    for z in adj.pop(drop):
        if z == keep:
            continue
        adj[z].discard(drop)
        adj[z].add(keep)
        adj[keep].add(z)
    adj[keep].discard(drop)


def _contract_contained(bags, adj):
    queue = deque(sorted(adj))
    while queue:
        x = queue.popleft()
        if x not in adj:
            continue
        for y in sorted(adj[x]):
            if bags[y] <= bags[x]:
                _contract(bags, adj, x, y)
                queue.append(x)
                break


def is_smooth(td, k):
    """
    True if every bag has k+1 vertices and adjacent bags exchange
    exactly one vertex.
    """
    if any(len(bag) != k+1 for bag in td.bags.values()):
        return False
    return all(
        len(td.bags[x] - td.bags[y]) == 1
        for x,y in td.tree.edges())


def smooth_decomposition(g, td, k=None):
    """
    Normalize a tree-decomposition into a smooth one: every bag has
    exactly k+1 vertices and every tree edge xy has
    |B_x - B_y| = |B_y - B_x| = 1.  The result has |V(g)| - k nodes.

    Parameters
    ----------
    g: networkx.Graph
    td: TreeDecomposition
        A valid strong decomposition of g.
    k: Integer
        Target width, at least width(td).  Defaults to width(td).

    Returns
    -------
    smooth: TreeDecomposition, rooted at the node holding the original
        root's contents.

    Examples
    --------
    >>> import tdrefine.graph_manager as gm
    >>> import tdrefine.decomp_manager as dm
    >>> g = gm.generate('path', n=4)
    >>> td = dm.path_decomposition(g, [{0,1}, {1,2}, {2,3}])
    >>> smooth = dm.smooth_decomposition(g, td)
    >>> dm.order(smooth), dm.is_smooth(smooth, 1)
    (3, True)
    """
    violations = validate(td, kind='strong')
    if len(violations) > 0:
        raise ValueError(
            f"Invalid input tree-decomposition:\n{report_text(violations)}")
    if k is None:
        k = width(td)
    if k < width(td):
        raise ValueError(
            f"Target width {k} is below the input width {width(td)}.")
    n = g.number_of_nodes()
    if n <= k:
        raise ValueError(
            f"No smooth decomposition of width {k} exists for a graph with "
            f"{n} vertices.")

    bags = {x: set(bag) for x,bag in td.bags.items()}
    adj = {x: set(td.tree.neighbors(x)) for x in td.tree.nodes}
    root = td.tree.root

    _contract_contained(bags, adj)

    # Pad each bag to k+1 vertices, absorbing from a tree neighbor:
    deficient = deque(sorted(x for x in adj if len(bags[x]) < k+1))
    while deficient:
        x = deficient.popleft()
        if x not in adj or len(bags[x]) >= k+1:
            continue
        neighbors = sorted(adj[x])
        u.certify(
            len(neighbors) > 0, 'smooth padding',
            f'isolated bag {x} with {len(bags[x])} < {k+1} vertices')
        contained = [y for y in neighbors if bags[y] <= bags[x]]
        if len(contained) > 0:
            _contract(bags, adj, x, contained[0])
        else:
            y = neighbors[0]
            bags[x].add(min(bags[y] - bags[x]))
        deficient.append(x)

    _contract_contained(bags, adj)

    # Root at the surviving node that absorbed the original root:
    if root not in adj:
        root = min(adj)
    parent = {root: None}
    order = [root]
    for x in order:
        for y in sorted(adj[x]):
            if y not in parent:
                parent[y] = x
                order.append(y)

    # Subdivide edges exchanging j >= 2 vertices into j single swaps:
    forest = Forest()
    ids = {root: forest.add(bags[root])}
    for y in order[1:]:
        x = parent[y]
        outgoing = sorted(bags[x] - bags[y])
        incoming = sorted(bags[y] - bags[x])
        u.certify(
            len(outgoing) == len(incoming) and len(outgoing) > 0,
            'smooth exchange', f'edge {x}-{y} swaps {outgoing} for {incoming}')
        previous = ids[x]
        current = set(bags[x])
        for v_out, v_in in zip(outgoing[:-1], incoming[:-1]):
            current.discard(v_out)
            current.add(v_in)
            previous = forest.add(current, previous)
        ids[y] = forest.add(bags[y], previous)

    smooth = forest.freeze(ids[root], g)
    u.certify(
        is_smooth(smooth, k), 'smooth exchange property',
        'bag sizes or exchanges differ from one')
    u.certify(
        len(smooth.tree) == n - k, 'smooth order',
        f'{len(smooth.tree)} nodes != {n} - {k}')
    return smooth
