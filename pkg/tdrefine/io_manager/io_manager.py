# Copyright (c) 2024-2026 The tdrefine developers.
# tdrefine is open-source software under the MIT license (see LICENSE).

__all__ = [
    'parse_gr',
    'write_gr',
    'parse_td',
    'write_td',
]

import warnings
from collections import namedtuple

from .. import graph_manager as gm
from .. import decomp_manager as dm
from .. import utils as u


warnings.formatwarning = u.warnings_format

# Line layout of a parsed .td file: node -> file bag id, bag lines as
# (id, vertices) in file order, and tree edges in file order:
TdLayout = namedtuple('TdLayout', 'labels bags edges')


def _read(infile, text, caller, what):
    if infile is None and text is None:
        raise TypeError(
            f"Missing input arguments for {caller}(), at least "
            f"{what} or text must be provided.")
    if infile is not None:
        with open(infile, 'r', encoding='utf-8') as f:
            text = f.read()
    return text


def _payload(text):
    """Non-empty, non-comment lines with their 1-based line numbers."""
    for number, line in enumerate(text.splitlines(), 1):
        fields = line.split()
        if len(fields) == 0 or fields[0] == 'c':
            continue
        yield number, fields


def _integers(fields, number):
    try:
        return [int(field) for field in fields]
    except ValueError:
        raise ValueError(
            f"Non-integer value at line {number}: '{' '.join(fields)}'.")


def parse_gr(grfile=None, text=None):
    """
    Read a graph in the .gr format: comment lines 'c ...', a header
    'p tw <n> <m>', and one '<u> <v>' line per edge (1-indexed).

    Parameters
    ----------
    grfile: String
        Path to an existing .gr file.
    text: String
        Content of a .gr file (ignored if grfile is not None).

    Returns
    -------
    g: A frozen networkx.Graph with vertices 0..n-1.

    Examples
    --------
    >>> import tdrefine.io_manager as io
    >>> g = io.parse_gr(text='p tw 3 2\\n1 2\\n2 3\\n')
    >>> sorted(g.edges)
    [(0, 1), (1, 2)]
    >>> io.write_gr(io.parse_gr(text='p tw 3 2\\n3 2\\n2 1\\n'))
    'p tw 3 2\\n3 2\\n2 1\\n'
    """
    text = _read(grfile, text, 'parse_gr', 'grfile')
    n = m = None
    edges = []
    seen = set()
    for number, fields in _payload(text):
        if fields[0] == 'p':
            if n is not None:
                raise ValueError(f"Duplicate 'p' header at line {number}.")
            if len(fields) != 4 or fields[1] != 'tw':
                raise ValueError(
                    f"Malformed header at line {number}: expected "
                    f"'p tw <n> <m>', got '{' '.join(fields)}'.")
            n, m = _integers(fields[2:], number)
            continue
        if n is None:
            raise ValueError(
                f"Edge line {number} appears before the 'p tw' header.")
        if len(fields) != 2:
            raise ValueError(
                f"Malformed edge at line {number}: '{' '.join(fields)}'.")
        v, w = _integers(fields, number)
        for vertex in (v, w):
            if not 1 <= vertex <= n:
                raise ValueError(
                    f"Vertex {vertex} at line {number} is out of range "
                    f"[1, {n}].")
        if v == w:
            raise ValueError(f"Self-loop at line {number}: {v} {w}.")
        edge = frozenset((v-1, w-1))
        if edge in seen:
            warnings.warn(
                f"Duplicate edge {v} {w} at line {number}, ignored.")
            continue
        seen.add(edge)
        edges.append((v-1, w-1))

    if n is None:
        raise ValueError("Missing 'p tw <n> <m>' header.")
    if len(edges) != m:
        warnings.warn(
            f"Header declares {m} edges, but the file holds {len(edges)} "
            "distinct edges.")
    g = gm.make_graph(n, edges)
    g.graph['edge_order'] = tuple(edges)
    return g


def _check_labels(g):
    n = g.number_of_nodes()
    if set(g.nodes) != set(range(n)):
        raise ValueError(
            "Only graphs with vertices 0..n-1 can be written; relabel "
            "the graph first.")
    return n


def write_gr(g, grfile=None):
    """
    Write a graph in the .gr format (1-indexed).  A graph read by
    parse_gr keeps its file edge order; any other graph is written with
    its edges sorted.

    Parameters
    ----------
    g: networkx.Graph
        Graph with vertices 0..n-1.
    grfile: String
        Output path; if None, only return the text.

    Returns
    -------
    text: String
    """
    n = _check_labels(g)
    edges = g.graph.get('edge_order')
    if edges is None or len(edges) != g.number_of_edges() or \
            any(not g.has_edge(v, w) for v, w in edges):
        edges = sorted(tuple(sorted(edge)) for edge in g.edges)
    lines = [f'p tw {n} {len(edges)}']
    lines += [f'{v+1} {w+1}' for v, w in edges]
    text = '\n'.join(lines) + '\n'
    if grfile is not None:
        with open(grfile, 'w', encoding='utf-8') as f:
            f.write(text)
    return text


def parse_td(tdfile=None, text=None, graph=None, kind='strong'):
    """
    Read a tree-decomposition in the .td format: comments, a header
    's td <bags> <max-bag-size> <n>', bag lines 'b <i> <v...>', and tree
    edges '<i> <j>' (all 1-indexed).  The tree is rooted at bag 1, which
    becomes node 0.

    Parameters
    ----------
    tdfile: String
        Path to an existing .td file.
    text: String
        Content of a .td file (ignored if tdfile is not None).
    graph: networkx.Graph
        The decomposed graph; defaults to an edgeless graph on n
        vertices.
    kind: String
        Decomposition kind: 'strong', 'weak', or 'partition'.

    Returns
    -------
    td: TreeDecomposition

    Examples
    --------
    >>> import tdrefine.io_manager as io
    >>> import tdrefine.decomp_manager as dm
    >>> g = io.parse_gr(text='p tw 3 2\\n1 2\\n2 3\\n')
    >>> td = io.parse_td(text='s td 2 2 3\\nb 1 1 2\\nb 2 2 3\\n1 2\\n', graph=g)
    >>> dm.width(td), td.bags
    (1, {0: frozenset({0, 1}), 1: frozenset({1, 2})})
    """
    text = _read(tdfile, text, 'parse_td', 'tdfile')
    header = None
    bags = {}
    edges = []
    for number, fields in _payload(text):
        if fields[0] == 's':
            if header is not None:
                raise ValueError(f"Duplicate 's' header at line {number}.")
            if len(fields) != 5 or fields[1] != 'td':
                raise ValueError(
                    f"Malformed header at line {number}: expected "
                    f"'s td <bags> <max-bag-size> <n>', got "
                    f"'{' '.join(fields)}'.")
            header = _integers(fields[2:], number)
            continue
        if header is None:
            raise ValueError(
                f"Line {number} appears before the 's td' header.")
        nbags, max_size, n = header
        if fields[0] == 'b':
            if len(fields) < 2:
                raise ValueError(f"Malformed bag line at line {number}.")
            bag_id, *vertices = _integers(fields[1:], number)
            if not 1 <= bag_id <= nbags:
                raise ValueError(
                    f"Bag id {bag_id} at line {number} is out of range "
                    f"[1, {nbags}].")
            if bag_id in bags:
                raise ValueError(f"Duplicate bag {bag_id} at line {number}.")
            for vertex in vertices:
                if not 1 <= vertex <= n:
                    raise ValueError(
                        f"Bag {bag_id} references unknown vertex {vertex} "
                        f"(line {number}).")
            bags[bag_id] = tuple(v-1 for v in vertices)
            continue
        if len(fields) != 2:
            raise ValueError(
                f"Malformed tree edge at line {number}: '{' '.join(fields)}'.")
        x, y = _integers(fields, number)
        for bag_id in (x, y):
            if not 1 <= bag_id <= nbags:
                raise ValueError(
                    f"Tree edge references unknown bag {bag_id} "
                    f"(line {number}).")
        edges.append((x, y))

    if header is None:
        raise ValueError("Missing 's td <bags> <max-bag-size> <n>' header.")
    nbags, max_size, n = header
    missing = sorted(set(range(1, nbags+1)) - set(bags))
    if len(missing) > 0:
        raise ValueError(f"Missing bag lines for bags {missing}.")
    if len(edges) != nbags - 1:
        raise ValueError(
            f"A tree on {nbags} bags needs {nbags-1} edges, got {len(edges)}.")
    largest = max((len(set(bag)) for bag in bags.values()), default=0)
    if largest != max_size:
        warnings.warn(
            f"Header declares maximum bag size {max_size}, but the largest "
            f"bag holds {largest} vertices.")

    adj = {x: [] for x in bags}
    for x, y in edges:
        adj[x].append(y)
        adj[y].append(x)
    ids = {1: 0}
    parent = {0: 0}
    order = [1]
    for x in order:
        for y in sorted(adj[x]):
            if y not in ids:
                ids[y] = len(ids)
                parent[ids[y]] = ids[x]
                order.append(y)
    if len(order) != nbags:
        raise ValueError("The tree edges do not connect all bags.")

    if graph is None:
        graph = gm.make_graph(n)
    elif graph.number_of_nodes() != n:
        raise ValueError(
            f"The .td header declares {n} vertices, but the graph has "
            f"{graph.number_of_nodes()}.")
    layout = TdLayout(
        {node: x for x, node in ids.items()}, list(bags.items()), edges)
    return dm.TreeDecomposition(
        dm.RootedTree(parent), {ids[x]: bags[x] for x in order}, graph, kind,
        layout)


def _file_layout(td):
    """The file layout of td, if its tree and bags still match it."""
    layout = td.layout
    if layout is None or set(layout.labels) != set(td.tree.nodes):
        return None
    vertices = dict(layout.bags)
    for x, label in layout.labels.items():
        if frozenset(vertices[label]) != td.bags[x]:
            return None
    tree_edges = {
        frozenset((layout.labels[x], layout.labels[y]))
        for x, y in td.tree.edges()}
    if tree_edges != {frozenset(edge) for edge in layout.edges}:
        return None
    return layout


def write_td(td, tdfile=None):
    """
    Write a tree-decomposition in the .td format.  A decomposition read
    by parse_td is written back with its file bag ids and line order;
    otherwise nodes are numbered 1..N in breadth-first order from the
    root (bag 1).

    Parameters
    ----------
    td: TreeDecomposition
        Decomposition of a graph with vertices 0..n-1.
    tdfile: String
        Output path; if None, only return the text.

    Returns
    -------
    text: String
    """
    n = _check_labels(td.graph)
    tree = td.tree
    ids = {x: i for i, x in enumerate(tree.order, 1)}
    largest = max(len(bag) for bag in td.bags.values())
    lines = [f's td {len(tree)} {largest} {n}']
    layout = _file_layout(td)
    if layout is None:
        bag_lines = [(ids[x], sorted(td.bags[x])) for x in tree.order]
        edges = [(ids[x], ids[y]) for x, y in tree.edges()]
    else:
        bag_lines, edges = layout.bags, layout.edges
    for bag_id, bag in bag_lines:
        vertices = ' '.join(str(v+1) for v in bag)
        lines.append(f'b {bag_id} {vertices}'.rstrip())
    lines += [f'{x} {y}' for x, y in edges]
    text = '\n'.join(lines) + '\n'
    if tdfile is not None:
        with open(tdfile, 'w', encoding='utf-8') as f:
            f.write(text)
    return text
