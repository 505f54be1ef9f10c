# Copyright (c) 2024-2026 The tdrefine developers.
# tdrefine is open-source software under the MIT license (see LICENSE).

__all__ = [
    'families',
    'Weighting',
    'make_graph',
    'induced_subgraph',
    'components',
    'neighbors',
    'degree',
    'max_degree',
    'generate',
]

from fractions import Fraction

import numpy as np
import networkx as nx

from .. import utils as u


# Generator families and their required parameters:
families = {
    'path': ('n',),
    'cycle': ('n',),
    'grid': ('n',),
    'fan': ('n',),
    'complete': ('n',),
    'random_gnm': ('n', 'm'),
    'random_ktree_partial': ('n', 'k', 'p'),
    'tree_random': ('n',),
}


class Weighting(object):
    """
    Non-negative rational weights on the vertices of a graph.

    Vertices without an explicit weight weigh zero.

    Examples
    --------
    >>> import tdrefine.graph_manager as gm
    >>> g = gm.generate('path', n=4)
    >>> gamma = gm.Weighting.unit(g)
    >>> gamma.total
    Fraction(4, 1)
    >>> gamma([0, 1])
    Fraction(2, 1)
    """
    def __init__(self, weights):
        self.weight = {}
        for vertex, value in dict(weights).items():
            value = u.to_fraction(value, name=f'the weight of vertex {vertex}')
            if value < 0:
                raise ValueError(
                    f"Weights must be non-negative, vertex {vertex} has "
                    f"weight {value}.")
            self.weight[vertex] = value
        self.total = sum(self.weight.values(), Fraction(0))

    def __call__(self, vertices):
        """Total weight of a collection of vertices."""
        return sum((self.weight.get(v, 0) for v in vertices), Fraction(0))

    def __getitem__(self, vertex):
        return self.weight.get(vertex, Fraction(0))

    def __repr__(self):
        return f'Weighting(total={self.total}, support={len(self.weight)})'

    @classmethod
    def unit(cls, g):
        """Weight 1 on every vertex of g."""
        return cls({v: 1 for v in g.nodes})

    @classmethod
    def indicator(cls, vertices):
        """Weight 1 on each of the given vertices, zero elsewhere."""
        return cls({v: 1 for v in vertices})


def make_graph(n=0, edges=(), vertices=None):
    """
    Build an immutable simple graph.

    Parameters
    ----------
    n: Integer
        Vertices are 0..n-1 (ignored when vertices is given).
    edges: Iterable of (int, int) pairs
        Undirected edges; duplicates collapse.
    vertices: Iterable of int
        Explicit vertex ids.

    Returns
    -------
    g: A frozen networkx.Graph

    Examples
    --------
    >>> import tdrefine.graph_manager as gm
    >>> g = gm.make_graph(3, [(0, 1), (1, 2)])
    >>> sorted(g.edges)
    [(0, 1), (1, 2)]
    """
    g = nx.Graph()
    if vertices is None:
        vertices = range(n)
    g.add_nodes_from(int(v) for v in vertices)
    for v, w in edges:
        if v == w:
            raise ValueError(f"Self-loops are not allowed: ({v}, {w}).")
        if v not in g or w not in g:
            raise ValueError(f"Edge ({v}, {w}) references an unknown vertex.")
        g.add_edge(int(v), int(w))
    return nx.freeze(g)


def induced_subgraph(g, s):
    """
    The subgraph of g induced by the vertex set s, keeping vertex ids.

    Parameters
    ----------
    g: networkx.Graph
    s: Iterable of vertex ids

    Returns
    -------
    sub: A frozen networkx.Graph

    Examples
    --------
    >>> import tdrefine.graph_manager as gm
    >>> c4 = gm.generate('cycle', n=4)
    >>> sorted(gm.induced_subgraph(c4, {0, 1, 2}).edges)
    [(0, 1), (1, 2)]
    """
    s = set(s)
    unknown = s.difference(g.nodes)
    if len(unknown) > 0:
        raise ValueError(
            f"Unknown vertex ids for induced subgraph: {sorted(unknown)}.")
    return nx.freeze(g.subgraph(s).copy())


def components(g):
    """
    Connected components of g, ordered by their smallest vertex id.

    Returns
    -------
    comps: List of frozensets
    """
    comps = [frozenset(c) for c in nx.connected_components(g)]
    return sorted(comps, key=min)


def neighbors(g, v):
    """Sorted neighbor list of vertex v."""
    return sorted(g.adj[v])


def degree(g, v):
    """Degree of vertex v in g."""
    if v not in g:
        raise ValueError(f"Unknown vertex: {v}.")
    return len(g.adj[v])


def max_degree(g):
    """Maximum degree of g (zero for edgeless and empty graphs)."""
    return max((len(adj) for _, adj in g.adj.items()), default=0)


def _check_int(name, value, lower):
    if isinstance(value, bool) or int(value) != value or value < lower:
        raise ValueError(
            f"Parameter {name} must be an integer >= {lower}, got {value}.")
    return int(value)


def _random_tree(n, rng):
    if n <= 2:
        return nx.path_graph(n)
    prufer = [int(x) for x in rng.integers(0, n, size=n-2)]
    return nx.from_prufer_sequence(prufer)


def _random_ktree_partial(n, k, p, rng):
    """A random k-tree on n vertices, each edge kept with probability p."""
    g = nx.complete_graph(min(n, k+1))
    cliques = [tuple(range(k+1))] if n > k else []
    for v in range(k+1, n):
        clique = cliques[int(rng.integers(len(cliques)))]
        g.add_edges_from((v, w) for w in clique)
        for i in range(k+1):
            cliques.append(clique[:i] + clique[i+1:] + (v,))
    edges = sorted(g.edges)
    keep = rng.random(len(edges)) < p
    return make_graph(n, [e for e, kept in zip(edges, keep) if kept])


def generate(family, seed=None, **params):
    """
    Deterministic graph generators for the test and benchmark families.

    Parameters
    ----------
    family: String
        One of: path, cycle, grid, fan, complete, random_gnm,
        random_ktree_partial, tree_random.
    seed: Integer
        Seed for the random families.
    params:
        Family parameters: n for every family, plus m (random_gnm),
        and k and p (random_ktree_partial).

    Returns
    -------
    g: A frozen networkx.Graph with vertices 0..N-1.

    Examples
    --------
    >>> import tdrefine.graph_manager as gm
    >>> g = gm.generate('grid', n=3)
    >>> g.number_of_nodes(), g.number_of_edges()
    (9, 12)
    >>> g = gm.generate('fan', n=5)
    >>> g.number_of_edges()
    7
    """
    if family not in families:
        raise ValueError(
            f"Unknown graph family '{family}'.  Available families are:\n"
            f"  {list(families)}")
    missing = [key for key in families[family] if key not in params]
    if len(missing) > 0:
        raise ValueError(
            f"Missing parameters for family '{family}': {missing}.")
    unknown = set(params).difference(families[family])
    if len(unknown) > 0:
        raise ValueError(
            f"Unexpected parameters for family '{family}': {sorted(unknown)}.")

    n = _check_int('n', params['n'], 1)
    rng = np.random.default_rng(0 if seed is None else seed)

    if family == 'path':
        g = nx.path_graph(n)
    elif family == 'cycle':
        n = _check_int('n', n, 3)
        g = nx.cycle_graph(n)
    elif family == 'grid':
        g = nx.convert_node_labels_to_integers(
            nx.grid_2d_graph(n, n), ordering='sorted')
    elif family == 'fan':
        n = _check_int('n', n, 2)
        g = nx.path_graph(range(1, n))
        g.add_node(0)
        g.add_edges_from((0, v) for v in range(1, n))
    elif family == 'complete':
        g = nx.complete_graph(n)
    elif family == 'random_gnm':
        m = _check_int('m', params['m'], 0)
        if m > n*(n-1)//2:
            raise ValueError(
                f"Too many edges for n={n}: m={m} > {n*(n-1)//2}.")
        g = nx.gnm_random_graph(n, m, seed=int(rng.integers(2**31)))
    elif family == 'random_ktree_partial':
        k = _check_int('k', params['k'], 1)
        p = float(params['p'])
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"Parameter p must lie in [0, 1], got {p}.")
        return _random_ktree_partial(n, k, p, rng)
    elif family == 'tree_random':
        g = _random_tree(n, rng)

    return make_graph(g.number_of_nodes(), sorted(g.edges))
