# Copyright (c) 2024-2026 The tdrefine developers.
# tdrefine is open-source software under the MIT license (see LICENSE).

__all__ = [
    'OracleBudget',
    'min_fill_heuristic',
    'exact_treewidth',
    'width_witness',
    'verify_separator',
    'verify_decomposition_bruteforce',
    'slick_bruteforce',
    'spread_bruteforce',
    'tree_dec_sep_bruteforce',
    'subtree_windows_bruteforce',
]

import itertools
from fractions import Fraction

import networkx as nx
from networkx.algorithms import approximation

from .. import config_manager as cm
from .. import decomp_manager as dm
from .. import utils as u


heuristics = {
    'min_fill': approximation.treewidth_min_fill_in,
    'min_degree': approximation.treewidth_min_degree,
}


class OracleBudget(object):
    """
    Caps for the exact and exhaustive routines.  Inputs above a cap are
    refused with a ValueError, never approximated.
    """
    def __init__(self, max_vertices=18, max_subsets=1000000):
        for name, value in [
                ('max_vertices', max_vertices), ('max_subsets', max_subsets)]:
            if int(value) != value or value < 1:
                raise ValueError(
                    f"The oracle budget {name} must be a positive integer, "
                    f"got {value}.")
        self.max_vertices = int(max_vertices)
        self.max_subsets = int(max_subsets)

    def __repr__(self):
        return (f'OracleBudget(max_vertices={self.max_vertices}, '
                f'max_subsets={self.max_subsets})')

    @classmethod
    def from_config(cls):
        """Budget from the user's configuration file."""
        return cls(
            int(cm.get('oracle_max_vertices')),
            int(cm.get('oracle_max_subsets')))

    def check_vertices(self, count, what='graph'):
        if count > self.max_vertices:
            raise ValueError(
                f"The {what} has {count} vertices, above the oracle budget "
                f"of {self.max_vertices} (see 'tdrefine config "
                "oracle_max_vertices').")


def _bag_key(bag):
    return (len(bag) > 0, sorted(bag))


def _contract_subset_bags(decomp):
    """
    Contract every edge of a networkx decomposition graph joining a bag
    to a superset of it.
    """
    decomp = nx.Graph(decomp)
    stack = list(decomp.edges)
    while stack:
        a, b = stack.pop()
        if a not in decomp or b not in decomp:
            continue
        if a <= b:
            small, big = a, b
        elif b <= a:
            small, big = b, a
        else:
            continue
        for nbr in list(decomp.adj[small]):
            if nbr != big:
                decomp.add_edge(big, nbr)
                stack.append((big, nbr))
        decomp.remove_node(small)
    return decomp


def min_fill_heuristic(g, heuristic='min_fill'):
    """
    Tree-decomposition from an elimination-ordering heuristic (no
    optimality claim).

    Parameters
    ----------
    g: networkx.Graph
    heuristic: String
        'min_fill' or 'min_degree'.

    Returns
    -------
    td: A valid strong TreeDecomposition, with redundant bags
        contracted.

    Examples
    --------
    >>> import tdrefine.graph_manager as gm
    >>> import tdrefine.decomp_manager as dm
    >>> import tdrefine.oracle_manager as om
    >>> td = om.min_fill_heuristic(gm.generate('cycle', n=10))
    >>> dm.width(td)
    2
    """
    if heuristic not in heuristics:
        raise ValueError(
            f"Unknown heuristic '{heuristic}'.  Available heuristics are:\n"
            f"  {list(heuristics)}")
    if g.number_of_nodes() == 0:
        return dm.single_bag(g)
    _, decomp = heuristics[heuristic](nx.Graph(g))
    return _rooted_decomposition(g, decomp)


def _rooted_decomposition(g, decomp):
    """
    TreeDecomposition of g from a networkx tree over frozenset bags,
    subset bags contracted and nodes numbered breadth-first.
    """
    decomp = _contract_subset_bags(decomp)
    root = min(decomp.nodes, key=_bag_key)
    ids = {root: 0}
    parent = {0: 0}
    order = [root]
    for bag in order:
        for nbr in sorted(decomp.adj[bag], key=_bag_key):
            if nbr not in ids:
                ids[nbr] = len(ids)
                parent[ids[nbr]] = ids[bag]
                order.append(nbr)
    bags = {ids[bag]: bag for bag in order}
    return dm.TreeDecomposition(dm.RootedTree(parent), bags, g)


def _popcount(mask):
    return bin(mask).count('1')


def _q_set(adj, eliminated, v):
    """
    Vertices outside eliminated | {v} reachable from v through
    eliminated vertices, as a bitmask.
    """
    comp = 1 << v
    reach = adj[v]
    fresh = reach & eliminated & ~comp
    while fresh:
        comp |= fresh
        for w in range(len(adj)):
            if fresh >> w & 1:
                reach |= adj[w]
        fresh = reach & eliminated & ~comp
    return reach & ~eliminated & ~(1 << v)


def _elimination_decomposition(g, order):
    """Tree-decomposition induced by eliminating g's vertices in order."""
    graph = {v: set(g.adj[v]) for v in g.nodes}
    position = {v: i for i, v in enumerate(order)}
    bags, parent = {}, {}
    for v in order:
        nbrs = graph.pop(v)
        for a, b in itertools.combinations(nbrs, 2):
            graph[a].add(b)
            graph[b].add(a)
        for w in nbrs:
            graph[w].discard(v)
        bags[position[v]] = frozenset(nbrs | {v})
        if len(nbrs) > 0:
            parent[position[v]] = min(position[w] for w in nbrs)
        else:
            parent[position[v]] = None

    last = len(order) - 1
    # Vertices eliminated without neighbors hang under the last bag:
    parent = {
        x: (last if p is None else p)
        for x, p in parent.items()}
    decomp = nx.Graph()
    decomp.add_nodes_from(bags.values())
    decomp.add_edges_from(
        (bags[x], bags[p]) for x, p in parent.items() if x != p)
    return _rooted_decomposition(g, decomp)


def exact_treewidth(g, budget=None, heuristic='min_fill'):
    """
    Exact treewidth by dynamic programming over sets of eliminated
    vertices, pruned by a heuristic upper bound.

    TW(S + v) = max(TW(S), |Q(S, v)|), with Q(S, v) the vertices outside
    S + v reachable from v through S; tw(G) = TW(V).

    Parameters
    ----------
    g: networkx.Graph
    budget: OracleBudget
        Defaults to OracleBudget().
    heuristic: String
        Heuristic giving the upper bound and the fallback witness.

    Returns
    -------
    tw: Integer treewidth (-1 for the empty graph).
    td: Witness TreeDecomposition of width tw.

    Examples
    --------
    >>> import tdrefine.graph_manager as gm
    >>> import tdrefine.oracle_manager as om
    >>> om.exact_treewidth(gm.generate('grid', n=3))[0]
    3
    >>> om.exact_treewidth(gm.generate('complete', n=5))[0]
    4
    """
    if budget is None:
        budget = OracleBudget()
    n = g.number_of_nodes()
    budget.check_vertices(n)
    if n == 0:
        return -1, dm.single_bag(g)

    witness = min_fill_heuristic(g, heuristic)
    upper = dm.width(witness)
    vertices = sorted(g.nodes)
    index = {v: i for i, v in enumerate(vertices)}
    adj = [0] * n
    for v, w in g.edges:
        adj[index[v]] |= 1 << index[w]
        adj[index[w]] |= 1 << index[v]

    # layers[i] maps an i-subset mask to (TW value, previous mask):
    layers = [{0: (-1, None)}]
    states = 1
    for _ in range(n):
        layer = {}
        for mask, (value, _) in layers[-1].items():
            for v in range(n):
                if mask >> v & 1:
                    continue
                new_value = max(value, _popcount(_q_set(adj, mask, v)))
                if new_value >= upper:
                    continue
                new_mask = mask | 1 << v
                if new_mask not in layer or new_value < layer[new_mask][0]:
                    layer[new_mask] = (new_value, mask)
        states += len(layer)
        if states > budget.max_subsets:
            raise ValueError(
                f"Exact treewidth explored more than {budget.max_subsets} "
                "subsets (see 'tdrefine config oracle_max_subsets').")
        if len(layer) == 0:
            return upper, witness
        layers.append(layer)

    full = (1 << n) - 1
    tw = layers[-1][full][0]
    order = []
    mask = full
    for layer in reversed(layers[1:]):
        previous = layer[mask][1]
        order.append(vertices[(mask ^ previous).bit_length() - 1])
        mask = previous
    order.reverse()
    td = _elimination_decomposition(g, order)
    u.certify(
        dm.width(td) == tw, 'exact_treewidth witness',
        f'elimination witness has width {dm.width(td)}, not {tw}')
    return tw, td


def width_witness(g, budget=None, heuristic='min_fill'):
    """
    A width witness for the constructions: exact under the vertex
    budget, heuristic above it.
    """
    if budget is None:
        budget = OracleBudget()
    if g.number_of_nodes() <= budget.max_vertices:
        try:
            return exact_treewidth(g, budget, heuristic)[1]
        except ValueError:
            pass
    return min_fill_heuristic(g, heuristic)


def _weight(gamma, v):
    weights = getattr(gamma, 'weight', gamma)
    return Fraction(weights.get(v, 0))


def verify_separator(g, gamma, x_set, bound):
    """
    Check by plain search that every component of g - X weighs at most
    bound.

    Parameters
    ----------
    g: networkx.Graph
    gamma: Mapping of vertex weights (a Weighting or a dict)
    x_set: Iterable of vertices
    bound: Rational

    Returns
    -------
    ok: Bool
    witness: Vertex set of the first overweight component, or None.
    """
    x_set = set(x_set)
    bound = Fraction(bound)
    seen = set(x_set)
    for start in sorted(g.nodes):
        if start in seen:
            continue
        component = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for w in g.adj[v]:
                if w not in seen and w not in component:
                    component.add(w)
                    stack.append(w)
        seen |= component
        total = sum((_weight(gamma, v) for v in component), Fraction(0))
        if total > bound:
            return False, frozenset(component)
    return True, None


def _tree_graph(nodes, edges):
    """A plain networkx tree from a node list and an edge list."""
    tree = nx.Graph()
    tree.add_nodes_from(nodes)
    tree.add_edges_from(edges)
    return tree


def _connected(tree, nodes):
    return len(nodes) > 0 and nx.is_connected(tree.subgraph(nodes))


def verify_decomposition_bruteforce(g, td, kind=None):
    """
    Check a (strong, weak or partition) tree-decomposition straight from
    the definitions.

    Returns
    -------
    ok: Bool
    witness: String naming the first failed clause, or None.
    """
    kind = td.kind if kind is None else kind
    bags = td.bags
    tree = _tree_graph(list(bags), list(td.tree.edges()))
    for v in sorted(g.nodes):
        holders = {x for x in bags if v in bags[x]}
        if len(holders) == 0:
            return False, f'vertex {v} is in no bag'
        if not _connected(tree, holders):
            return False, f'bags holding vertex {v} are disconnected'
    for v, w in sorted(g.edges):
        in_bag = any(v in bag and w in bag for bag in bags.values())
        if kind == 'strong':
            if not in_bag:
                return False, f'edge {v}-{w} is in no bag'
            continue
        across = any({v, w} <= bags[x] | bags[y] for x, y in tree.edges)
        if not in_bag and not across:
            return False, f'edge {v}-{w} is in no pair of adjacent bags'
    if kind == 'partition':
        for x, y in itertools.combinations(sorted(bags), 2):
            if len(bags[x] & bags[y]) > 0:
                return False, f'bags {x} and {y} overlap'
    return True, None


def slick_bruteforce(td, s=1):
    """s-slickness straight from the definition; returns (ok, (x, y, v))."""
    graph = td.graph
    tree = _tree_graph(list(td.bags), list(td.tree.edges()))
    parents = dict(nx.bfs_predecessors(tree, td.tree.root))
    for y, x in sorted(parents.items()):
        for v in sorted(td.bags[x] & td.bags[y]):
            fresh = [
                w for w in graph.adj[v]
                if w in td.bags[y] and w not in td.bags[x]]
            if len(fresh) < s:
                return False, (x, y, v)
    return True, None


def spread_bruteforce(td):
    """Map each vertex to the number of bags holding it."""
    return {
        v: sum(1 for bag in td.bags.values() if v in bag)
        for v in td.graph.nodes}


def tree_dec_sep_bruteforce(g, gamma, td, q, budget=None):
    """
    Smallest node set Z (lexicographically first among the smallest)
    with |Z| <= q such that every component of g - U{B_z} weighs at most
    gamma(g)/(q+1); None when no such set exists.
    """
    if budget is None:
        budget = OracleBudget()
    budget.check_vertices(len(td.tree), what='decomposition tree')
    total = sum((_weight(gamma, v) for v in g.nodes), Fraction(0))
    bound = total / (q+1)
    nodes = sorted(td.bags)
    for size in range(q+1):
        for z_set in itertools.combinations(nodes, size):
            x_set = set().union(*(td.bags[z] for z in z_set))
            if verify_separator(g, gamma, x_set, bound)[0]:
                return frozenset(z_set)
    return None


def subtree_windows_bruteforce(tree, lower, upper, gamma=None, budget=None):
    """
    All subtrees T' (with root v) attached to the rest of the tree only
    at v and weighing between lower and upper.

    Parameters
    ----------
    tree: decomp_manager.RootedTree
        Only its root and edge list are read.
    lower, upper: Integers
        Weight window.
    gamma: Dict
        Node weights, default 1 per node.
    budget: OracleBudget

    Returns
    -------
    windows: List of (frozenset, v) pairs.
    """
    if budget is None:
        budget = OracleBudget()
    budget.check_vertices(len(tree), what='tree')
    nodes = list(tree.nodes)
    gamma = {x: 1 for x in nodes} if gamma is None else gamma
    plain = _tree_graph(nodes, list(tree.edges()))
    depth = nx.single_source_shortest_path_length(plain, tree.root)
    windows = []
    for size in range(1, len(nodes)+1):
        for subset in itertools.combinations(nodes, size):
            subset = frozenset(subset)
            if not _connected(plain, subset):
                continue
            v = min(subset, key=depth.get)
            touching = [
                x for x in subset
                if x != v and any(y not in subset for y in plain.adj[x])]
            if len(touching) > 0:
                continue
            weight = sum(gamma[x] for x in subset)
            if lower <= weight <= upper:
                windows.append((subset, v))
    return windows
