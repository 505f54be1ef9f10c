# Copyright (c) 2024-2026 The tdrefine developers.
# tdrefine is open-source software under the MIT license (see LICENSE).

__all__ = [
    'KINDS',
    'RootedTree',
    'TreeDecomposition',
    'Forest',
    'Violation',
    'single_bag',
    'path_decomposition',
    'width',
    'spread',
    'spread_profile',
    'max_spread',
    'total_spread',
    'average_spread',
    'order',
    'degree',
    'validate',
    'report_text',
    'report_json',
    'is_slick',
    'spread_bound_check',
    'restrict',
    'contract_subset_bags',
    'partition_to_decomposition',
    'cycle_decomposition',
    'grid_decomposition',
]

from collections import namedtuple
from fractions import Fraction

import networkx as nx

from .. import graph_manager as gm
from .. import utils as u


KINDS = ('strong', 'weak', 'partition')

# A violated clause of a validity check:
Violation = namedtuple('Violation', 'clause witness detail')


class RootedTree(object):
    """
    A rooted tree given by parent links (the root is its own parent).

    Examples
    --------
    >>> import tdrefine.decomp_manager as dm
    >>> tree = dm.RootedTree({0:0, 1:0, 2:0, 3:1})
    >>> tree.root, tree.children[0], tree.degree(0), tree.max_degree()
    (0, (1, 2), 2, 2)
    """
    def __init__(self, parent):
        parent = {int(x): int(p) for x,p in parent.items()}
        roots = [x for x,p in parent.items() if x == p]
        if len(roots) != 1:
            raise ValueError(
                f"A rooted tree needs exactly one root, found {len(roots)}.")
        root = roots[0]
        unknown = [p for p in parent.values() if p not in parent]
        if len(unknown) > 0:
            raise ValueError(f"Unknown parent nodes: {sorted(set(unknown))}.")

        children = {x: [] for x in parent}
        for x, p in parent.items():
            if x != p:
                children[p].append(x)
        self.children = {x: tuple(sorted(kids)) for x,kids in children.items()}

        # Breadth-first order, children in id order:
        self.depth = {root: 0}
        self.order = [root]
        for x in self.order:
            for child in self.children[x]:
                self.depth[child] = self.depth[x] + 1
                self.order.append(child)
        if len(self.order) != len(parent):
            raise ValueError("Parent links contain a cycle.")

        self.parent = parent
        self.root = root
        self.nodes = sorted(parent)

    def __len__(self):
        return len(self.parent)

    def __contains__(self, node):
        return node in self.parent

    def __repr__(self):
        return f'RootedTree(nodes={len(self)}, root={self.root})'

    def degree(self, x):
        """Number of tree neighbors of node x."""
        return len(self.children[x]) + (x != self.root)

    def max_degree(self):
        return max(self.degree(x) for x in self.nodes)

    def edges(self):
        """Tree edges as (parent, child) pairs, in breadth-first order."""
        return [(self.parent[y], y) for y in self.order[1:]]

    def neighbors(self, x):
        if x == self.root:
            return self.children[x]
        return (self.parent[x],) + self.children[x]

    def subtree(self, x):
        """Node set of T_x: x and all of its descendants."""
        nodes = [x]
        for y in nodes:
            nodes.extend(self.children[y])
        return frozenset(nodes)

    def induced(self, nodes):
        """
        Sub-tree on a connected node set, rooted at its node closest
        to the root.
        """
        nodes = set(nodes)
        top = min(nodes, key=lambda x: (self.depth[x], x))
        parent = {
            x: (self.parent[x] if x != top else x)
            for x in nodes}
        if any(p not in nodes for p in parent.values()):
            raise ValueError("Node set does not induce a connected subtree.")
        return RootedTree(parent)


class TreeDecomposition(object):
    """
    A rooted tree plus one bag per node, decomposing a graph.

    The kind flag selects the edge property checked by validate():
    'strong' (every edge inside a bag), 'weak' (every edge inside the
    union of two adjacent bags), or 'partition' (weak, and bags
    partition the vertex set).

    A decomposition read from a .td file keeps its file layout (bag
    ids, bag and edge line order) so that writing it back reproduces
    the file; derived decompositions drop it.
    """
    def __init__(self, tree, bags, graph, kind='strong', layout=None):
        if kind not in KINDS:
            raise ValueError(
                f"Invalid decomposition kind '{kind}'.  Available kinds "
                f"are: {list(KINDS)}")
        if set(bags) != set(tree.parent):
            raise ValueError("Bags must be given for exactly the tree nodes.")
        self.tree = tree
        self.bags = {x: frozenset(bags[x]) for x in tree.nodes}
        self.graph = graph
        self.kind = kind
        self.layout = layout
        for x, bag in self.bags.items():
            unknown = [v for v in bag if v not in graph]
            if len(unknown) > 0:
                raise ValueError(
                    f"Bag {x} references vertices not in the graph: "
                    f"{sorted(unknown)}.")

    def __repr__(self):
        return (f'TreeDecomposition(kind={self.kind}, order={len(self.tree)}, '
                f'width={width(self)})')

    def with_kind(self, kind):
        """Same tree and bags, flagged as another kind."""
        return TreeDecomposition(
            self.tree, self.bags, self.graph, kind, self.layout)

    def occupancy(self):
        """Map each graph vertex to the sorted list of nodes holding it."""
        occ = {v: [] for v in self.graph.nodes}
        for x in self.tree.order:
            for v in self.bags[x]:
                occ[v].append(x)
        return occ


class Forest(object):
    """
    Mutable accumulator of bags and parent links, used by the recursive
    builders.  freeze() turns it into a TreeDecomposition.
    """
    def __init__(self):
        self.bags = {}
        self.parent = {}
        self.kids = {}
        self._next = 0

    def add(self, bag, parent=None):
        """Add a node with the given bag, optionally under parent."""
        node = self._next
        self._next += 1
        self.bags[node] = frozenset(bag)
        self.parent[node] = None
        self.kids[node] = set()
        if parent is not None:
            self.attach(node, parent)
        return node

    def attach(self, node, parent):
        """Make parent the parent of node (node must be a forest root)."""
        if self.parent[node] is not None:
            raise ValueError(f"Node {node} already has a parent.")
        self.parent[node] = parent
        self.kids[parent].add(node)

    def merge(self, a, b):
        """
        Identify the forest roots a and b into a new node whose bag is
        the union of theirs; their children move to the new node.
        """
        if self.parent[a] is not None or self.parent[b] is not None:
            raise ValueError("Only forest roots can be merged.")
        node = self.add(self.bags[a] | self.bags[b])
        for old in (a, b):
            for kid in self.kids.pop(old):
                self.parent[kid] = node
                self.kids[node].add(kid)
            del self.bags[old]
            del self.parent[old]
        return node

    def freeze(self, root, graph, kind='strong'):
        """
        TreeDecomposition of the tree hanging from root, with nodes
        renumbered 0..N-1 in breadth-first order (root is node 0).
        """
        order = [root]
        for x in order:
            order.extend(sorted(self.kids[x]))
        ids = {x: i for i,x in enumerate(order)}
        parent = {ids[x]: ids[self.parent[x]] for x in order[1:]}
        parent[0] = 0
        bags = {ids[x]: self.bags[x] for x in order}
        return TreeDecomposition(RootedTree(parent), bags, graph, kind)


def single_bag(graph, kind='strong'):
    """One-node decomposition whose bag is V(graph)."""
    return TreeDecomposition(
        RootedTree({0: 0}), {0: frozenset(graph.nodes)}, graph, kind)


def path_decomposition(graph, bags, kind='strong'):
    """Decomposition over a path of nodes 0..len(bags)-1 rooted at 0."""
    parent = {i: max(i-1, 0) for i in range(len(bags))}
    return TreeDecomposition(
        RootedTree(parent), dict(enumerate(bags)), graph, kind)


def width(td):
    """
    Maximum bag size minus one (tree-partitions: maximum bag size).

    Examples
    --------
    >>> import tdrefine.graph_manager as gm
    >>> import tdrefine.decomp_manager as dm
    >>> td = dm.single_bag(gm.generate('complete', n=3))
    >>> dm.width(td), dm.width(td.with_kind('partition'))
    (2, 3)
    """
    largest = max(len(bag) for bag in td.bags.values())
    if td.kind == 'partition':
        return largest
    return largest - 1


def spread(td, v):
    """Number of bags containing vertex v."""
    if v not in td.graph:
        raise ValueError(f"Unknown vertex: {v}.")
    return sum(v in bag for bag in td.bags.values())


def spread_profile(td):
    """Map every graph vertex to its spread."""
    profile = {v: 0 for v in td.graph.nodes}
    for bag in td.bags.values():
        for v in bag:
            profile[v] += 1
    return profile


def max_spread(td):
    return max(spread_profile(td).values(), default=0)


def total_spread(td):
    """Sum of all spreads (equals the sum of bag sizes)."""
    return sum(len(bag) for bag in td.bags.values())


def average_spread(td):
    """Mean spread over the graph vertices, as an exact Fraction."""
    n = td.graph.number_of_nodes()
    if n == 0:
        return Fraction(0)
    return Fraction(total_spread(td), n)


def order(td):
    """Number of tree nodes."""
    return len(td.tree)


def degree(td):
    """Maximum degree of the decomposition tree."""
    return td.tree.max_degree()


def validate(td, kind=None):
    """
    Check a decomposition against the definition of its kind.

    Parameters
    ----------
    td: TreeDecomposition
    kind: String
        Check as this kind instead of td.kind.

    Returns
    -------
    violations: List of Violation(clause, witness, detail) tuples,
        empty if and only if td is valid.  Clauses are 'vertex-missing',
        'vertex-disconnected', 'edge-strong', 'edge-weak', and
        'partition-overlap'.

    Examples
    --------
    >>> import tdrefine.graph_manager as gm
    >>> import tdrefine.decomp_manager as dm
    >>> g = gm.generate('path', n=3)
    >>> td = dm.path_decomposition(g, [{0,1}, {2}])
    >>> dm.validate(td)
    [Violation(clause='edge-strong', witness=(1, 2), detail='...')]
    >>> dm.validate(td, kind='weak')
    []
    """
    kind = td.kind if kind is None else kind
    if kind not in KINDS:
        raise ValueError(f"Invalid decomposition kind '{kind}'.")
    tree = td.tree
    occ = td.occupancy()
    violations = []

    for v in sorted(occ):
        nodes = occ[v]
        if len(nodes) == 0:
            violations.append(Violation(
                'vertex-missing', v, f'vertex {v} is in no bag'))
            continue
        members = set(nodes)
        tops = [x for x in nodes if x == tree.root or tree.parent[x] not in members]
        if len(tops) > 1:
            violations.append(Violation(
                'vertex-disconnected', v,
                f'bags holding vertex {v} split into {len(tops)} subtrees '
                f'(tops {sorted(tops)})'))
        if kind == 'partition' and len(nodes) > 1:
            violations.append(Violation(
                'partition-overlap', v,
                f'vertex {v} is in {len(nodes)} bags {nodes}'))

    for v, w in sorted(tuple(sorted(e)) for e in td.graph.edges):
        occ_v, occ_w = set(occ[v]), set(occ[w])
        if len(occ_v) == 0 or len(occ_w) == 0:
            continue
        if not occ_v.isdisjoint(occ_w):
            continue
        if kind == 'strong':
            violations.append(Violation(
                'edge-strong', (v, w), f'no bag holds both {v} and {w}'))
            continue
        adjacent = any(
            y in occ_w for x in occ_v for y in tree.neighbors(x))
        if not adjacent:
            violations.append(Violation(
                'edge-weak', (v, w),
                f'no pair of adjacent bags holds {v} and {w}'))
    return violations


def report_text(violations):
    """Line-oriented text form of a validation report."""
    if len(violations) == 0:
        return 'valid\n'
    return ''.join(
        f'{violation.clause} {violation.witness}: {violation.detail}\n'
        for violation in violations)


def report_json(violations):
    """JSON-serializable form of a validation report."""
    return {
        'valid': len(violations) == 0,
        'violations': [
            {'clause': violation.clause,
             'witness': violation.witness,
             'detail': violation.detail}
            for violation in violations],
    }


def is_slick(td, s=1):
    """
    Check s-slickness: for each tree edge xy (x parent of y) and each
    vertex v in both bags, v has at least s neighbors in B_y - B_x.

    Returns
    -------
    slick: Bool
    witness: (x, y, v) tuple of the first failure, or None.

    Examples
    --------
    >>> import tdrefine.decomp_manager as dm
    >>> td = dm.cycle_decomposition(6)
    >>> dm.is_slick(td)
    (False, (0, 1, 0))
    """
    if s < 1:
        raise ValueError(f"The slickness level must be >= 1, got {s}.")
    graph = td.graph
    for x, y in td.tree.edges():
        bag_x, bag_y = td.bags[x], td.bags[y]
        for v in sorted(bag_x & bag_y):
            fresh = sum(
                1 for w in graph.adj[v] if w in bag_y and w not in bag_x)
            if fresh < s:
                return False, (x, y, v)
    return True, None


def spread_bound_check(td, s=1):
    """
    Certify that every vertex of an s-slick decomposition has spread at
    most floor(deg(v)/s) + 1.

    Returns True; a failing vertex raises a CertificateError.
    """
    slick, witness = is_slick(td, s)
    if not slick:
        raise ValueError(
            f"The decomposition is not {s}-slick, failing at {witness}.")
    for v, count in spread_profile(td).items():
        bound = len(td.graph.adj[v]) // s + 1
        u.certify(
            count <= bound, 'slick spread bound',
            f'vertex {v} has spread {count} > {bound}')
    return True


def contract_subset_bags(td, both=False):
    """
    Contract every tree edge whose child bag is contained in its
    parent's bag (with both=True, also edges whose parent bag is
    contained in the child bag).  An empty root bag passes the root to
    its first remaining child.

    Returns
    -------
    td: TreeDecomposition with the same graph and kind.
    """
    tree = td.tree
    bags = dict(td.bags)
    rep = {tree.root: tree.root}
    parent = {tree.root: tree.root}
    for y in tree.order[1:]:
        p = rep[tree.parent[y]]
        if bags[y] <= bags[p]:
            rep[y] = p
        elif both and bags[p] <= bags[y]:
            bags[p] = bags[y]
            rep[y] = p
        else:
            rep[y] = y
            parent[y] = p

    root = tree.root
    kids = sorted(y for y,p in parent.items() if p == root and y != root)
    if len(bags[root]) == 0 and len(kids) > 0:
        new_root = kids[0]
        for kid in kids:
            parent[kid] = new_root
        del parent[root]
    bags = {x: bags[x] for x in parent}
    return TreeDecomposition(RootedTree(parent), bags, td.graph, td.kind)


def restrict(td, sub):
    """
    Restrict a decomposition to an induced subgraph.

    Parameters
    ----------
    td: TreeDecomposition
    sub: networkx.Graph (an induced subgraph of td.graph) or a vertex set

    Returns
    -------
    td: Decomposition of sub with bags B_x & V(sub), and redundant
        (empty or contained-in-parent) bags contracted.
    """
    if not isinstance(sub, nx.Graph):
        sub = gm.induced_subgraph(td.graph, sub)
    keep = frozenset(sub.nodes)
    bags = {x: bag & keep for x,bag in td.bags.items()}
    restricted = TreeDecomposition(td.tree, bags, sub, td.kind)
    return contract_subset_bags(restricted)


def partition_to_decomposition(tp):
    """
    Turn a tree-partition of width p into a (strong) tree-decomposition
    of width at most 2p-1 on the same tree: B'_x = B_x | B_parent(x).
    """
    if tp.kind != 'partition':
        raise ValueError(
            f"Expected a tree-partition, got kind '{tp.kind}'.")
    violations = validate(tp)
    if len(violations) > 0:
        raise ValueError(
            f"Invalid tree-partition:\n{report_text(violations)}")
    tree = tp.tree
    bags = {
        x: tp.bags[x] | tp.bags[tree.parent[x]]
        for x in tree.nodes}
    td = TreeDecomposition(tree, bags, tp.graph, 'strong')
    if tp.graph.number_of_nodes() > 0:
        u.certify(
            width(td) <= 2*width(tp) - 1, 'partition width doubling',
            f'width {width(td)} > {2*width(tp)-1}')
    return td


def cycle_decomposition(n):
    """
    Path-decomposition of C_n built by adding vertex 0 to every bag of
    the edge-bag path-decomposition of C_n - 0; vertex 0 has spread n-2.
    """
    graph = gm.generate('cycle', n=n)
    bags = [{0, i, i+1} for i in range(1, n-1)]
    return path_decomposition(graph, bags)


def grid_decomposition(n):
    """
    Path-decomposition of the n x n grid whose i-th bag holds rows i and
    i+1 (vertex r*n + c sits at row r, column c); width 2n-1.
    """
    graph = gm.generate('grid', n=n)
    rows = [set(range(r*n, (r+1)*n)) for r in range(n)]
    if n == 1:
        return path_decomposition(graph, rows)
    bags = [rows[r] | rows[r+1] for r in range(n-1)]
    return path_decomposition(graph, bags)
