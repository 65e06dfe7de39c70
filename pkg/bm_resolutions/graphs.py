# pyright: reportUnknownMemberType=false, reportUnknownVariableType=false, reportUnknownArgumentType=false, reportUnknownParameterType=false
"""
Typed façade over networkx: graphs, edge ideals and graph-side orders.

This is the only module that talks to networkx directly. Everything else
receives plain Python values or the opaque ``Graph`` alias.
"""

from __future__ import annotations

import itertools
import logging
import re
from collections.abc import Hashable, Iterable, Iterator, Sequence
from typing import Any, Literal

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher

from bm_resolutions.errors import InputError
from bm_resolutions.ideal import Monomial, MonomialIdeal, TotalOrder
from bm_resolutions.literals import GraphFamily

logger = logging.getLogger(__name__)

# ---------------------------------------------------------------------------
# Typings
# ---------------------------------------------------------------------------

type Graph = nx.Graph
type Vertex = Hashable
type Edge = tuple[Vertex, Vertex]
type VertexKey = tuple[int, int, str]

CorpusKind = Literal["connected", "tree", "unicyclic"]

_IDENTIFIER_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_']*$")


def vertex_key(v: Vertex) -> VertexKey:
    """Sort key on vertex labels: integers numerically, then everything else by its string."""
    if isinstance(v, int):
        return (0, v, "")
    return (1, 0, str(v))


# ---------------------------------------------------------------------------
# Construction & I/O
# ---------------------------------------------------------------------------


def make_graph(edges: Iterable[Edge], *, vertices: Iterable[Vertex] = ()) -> Graph:
    """Build a simple graph; loops are rejected."""
    g = nx.Graph()
    g.add_nodes_from(vertices)
    for u, v in edges:
        if u == v:
            raise InputError(f"loop at vertex {u!r}")
        g.add_edge(u, v)
    return g


def vertices(g: Graph) -> list[Vertex]:
    """Vertices in insertion order."""
    return list(g.nodes)


def edges(g: Graph) -> list[Edge]:
    """Edges in canonical order: endpoints by vertex insertion order, then lexicographic."""
    index = {v: i for i, v in enumerate(g.nodes)}
    oriented = [(u, v) if index[u] < index[v] else (v, u) for u, v in g.edges]
    return sorted(oriented, key=lambda e: (index[e[0]], index[e[1]]))


def degree(g: Graph, v: Vertex) -> int:
    """Degree of *v*."""
    return int(g.degree[v])


def neighbors(g: Graph, v: Vertex) -> list[Vertex]:
    """Neighbours of *v* in insertion order."""
    return list(g.neighbors(v))


def parse_graph6(text: str) -> Graph:
    """Decode one graph6 string (optional ``>>graph6<<`` header)."""
    body = text.strip()
    if not body:
        raise InputError("empty graph6 string")
    try:
        return nx.from_graph6_bytes(body.encode("ascii"))
    except (ValueError, nx.NetworkXError, UnicodeEncodeError) as exc:
        raise InputError(f"malformed graph6 string {body!r}: {exc}") from exc


def encode_graph6(g: Graph) -> str:
    """graph6 string of *g* (vertices relabelled 0..n-1 in insertion order), without header."""
    relabelled = nx.convert_node_labels_to_integers(g, ordering="default")
    return nx.to_graph6_bytes(relabelled, header=False).decode("ascii").strip()


def parse_edge_list(text: str) -> Graph:
    """Parse ``u v`` lines; integer-looking labels become ints."""
    pairs: list[Edge] = []
    for line in text.splitlines():
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        tokens = body.split()
        if len(tokens) != 2:
            raise InputError(f"expected 'u v', got {line!r}")
        u, v = (int(t) if t.lstrip("-").isdigit() else t for t in tokens)
        pairs.append((u, v))
    if not pairs:
        raise InputError("edge list is empty")
    return make_graph(pairs)


def parse_graph_lines(text: str) -> list[Graph]:
    """
    Parse a graph file.

    Two tokens per line means one graph given as an edge list; one token per
    line means one graph6 string per line.
    """
    lines = [line.strip() for line in text.splitlines() if line.strip() and not line.startswith("#")]
    if not lines:
        raise InputError("graph file is empty")
    if all(len(line.split()) == 2 for line in lines):
        return [parse_edge_list(text)]
    return [parse_graph6(line) for line in lines]


def variable_name(v: Vertex) -> str:
    """Variable name of a vertex: identifier labels are kept, others get an ``x`` prefix."""
    label = str(v)
    return label if _IDENTIFIER_RE.match(label) else f"x{label}"


# ---------------------------------------------------------------------------
# Edge ideals
# ---------------------------------------------------------------------------


def edge_ideal(g: Graph) -> MonomialIdeal:
    """``I(G)``: one squarefree quadratic generator per edge, in canonical edge order."""
    es = edges(g)
    if not es:
        raise InputError("edgeless graph has no edge ideal")
    vs = vertices(g)
    index = {v: i for i, v in enumerate(vs)}
    gens: list[Monomial] = []
    for u, v in es:
        exps = [0] * len(vs)
        exps[index[u]] = exps[index[v]] = 1
        gens.append(Monomial(exponents=tuple(exps)))
    return MonomialIdeal(variables=tuple(variable_name(v) for v in vs), generators=tuple(gens))


def induced_subgraph(g: Graph, keep: Iterable[Vertex]) -> Graph:
    """``G_V``, vertices kept in the order of *g*."""
    wanted = set(keep)
    return make_graph(
        ((u, v) for u, v in edges(g) if u in wanted and v in wanted),
        vertices=[v for v in g.nodes if v in wanted],
    )


def complement(g: Graph) -> Graph:
    """Complement graph on the same vertex order."""
    vs = vertices(g)
    return make_graph(
        ((u, v) for u, v in itertools.combinations(vs, 2) if not g.has_edge(u, v)),
        vertices=vs,
    )


def automorphism_group(g: Graph) -> list[tuple[int, ...]]:
    """Vertex automorphisms as permutations of vertex (= variable) indices of :func:`edge_ideal`."""
    vs = vertices(g)
    index = {v: i for i, v in enumerate(vs)}
    group: list[tuple[int, ...]] = []
    for mapping in GraphMatcher(g, g).isomorphisms_iter():
        group.append(tuple(index[mapping[v]] for v in vs))
    return sorted(group)


# ---------------------------------------------------------------------------
# Named families & corpora
# ---------------------------------------------------------------------------


def _with_pendants(cycle_length: int, anchors: Sequence[int]) -> Graph:
    g = make_graph((i, (i + 1) % cycle_length) for i in range(cycle_length))
    for offset, anchor in enumerate(anchors):
        g.add_edge(anchor, cycle_length + offset)
    return g


def named_graph(name: GraphFamily, n: int | None = None) -> Graph:
    """
    Build a named graph.

    ``cycle``, ``path``, ``complete`` and ``sunlet`` need *n*; ``net`` is the
    3-sunlet and the two cyclohexane graphs are ``C6`` with three pendants at
    consecutive or alternating cycle vertices.
    """
    sized = {"cycle", "path", "complete", "sunlet"}
    if name in sized and (n is None or n < 1):
        raise InputError(f"{name} needs a positive size")
    match name:
        case "cycle":
            assert n is not None
            if n < 3:
                raise InputError("cycles need at least 3 vertices")
            return make_graph((i, (i + 1) % n) for i in range(n))
        case "path":
            assert n is not None
            return make_graph(((i, i + 1) for i in range(n - 1)), vertices=range(n))
        case "complete":
            assert n is not None
            return make_graph(itertools.combinations(range(n), 2), vertices=range(n))
        case "sunlet":
            assert n is not None
            if n < 3:
                raise InputError("sunlets need a cycle of at least 3 vertices")
            return _with_pendants(n, range(n))
        case "net":
            return _with_pendants(3, range(3))
        case "cyclohexane-123":
            return _with_pendants(6, (0, 1, 2))
        case "cyclohexane-135":
            return _with_pendants(6, (0, 2, 4))
    raise InputError(f"unknown graph family {name!r}")


def graph_corpus(kind: CorpusKind, *, max_vertices: int, max_edges: int | None = None) -> Iterator[Graph]:
    """
    Connected graphs (with at least one edge), trees, or connected unicyclic graphs.

    Drawn from the graph atlas, so one representative per isomorphism class and
    at most 7 vertices.
    """
    if max_vertices > 7:
        raise InputError("the graph atlas stops at 7 vertices")
    for g in nx.graph_atlas_g():
        k = g.number_of_nodes()
        if k < 2 or k > max_vertices or not nx.is_connected(g):
            continue
        m = g.number_of_edges()
        if max_edges is not None and m > max_edges:
            continue
        if (kind == "tree" and m != k - 1) or (kind == "unicyclic" and m != k):
            continue
        yield make_graph(edges(g), vertices=vertices(g))


# ---------------------------------------------------------------------------
# Structural predicates
# ---------------------------------------------------------------------------


def is_connected(g: Graph) -> bool:
    """Connectivity; the empty graph is not connected."""
    return g.number_of_nodes() > 0 and bool(nx.is_connected(g))


def is_tree(g: Graph) -> bool:
    """Connected with ``|E| = |V| - 1``."""
    return g.number_of_nodes() > 0 and bool(nx.is_tree(g))


def induces_connected(g: Graph, keep: Iterable[Vertex]) -> bool:
    """Whether the vertices in *keep* induce a connected subgraph."""
    return is_connected(g.subgraph(list(keep)))


def depths(g: Graph, root: Vertex) -> dict[Vertex, int]:
    """Distance from *root* to every reachable vertex."""
    return dict(nx.single_source_shortest_path_length(g, root))


def parents(t: Graph, root: Vertex) -> dict[Vertex, Vertex]:
    """Predecessor of every non-root vertex of a tree rooted at *root*."""
    return dict(nx.bfs_predecessors(t, root))


def relabel(g: Graph, mapping: dict[Vertex, Vertex]) -> Graph:
    """Copy of *g* with vertices renamed, insertion order kept."""
    return make_graph(((mapping[u], mapping[v]) for u, v in edges(g)), vertices=[mapping[v] for v in g.nodes])


def labeled_trees(labels: Sequence[Vertex]) -> Iterator[Graph]:
    """Every labelled tree on *labels*, via Prüfer sequences."""
    k = len(labels)
    if k == 1:
        yield make_graph((), vertices=labels)
        return
    for seq in itertools.product(range(k), repeat=k - 2):
        t = nx.from_prufer_sequence(list(seq))
        yield make_graph(((labels[u], labels[v]) for u, v in t.edges), vertices=labels)


def find_directed_cycle(arcs: Iterable[tuple[int, int]]) -> list[int]:
    """Vertices of one directed cycle, or an empty list when the digraph is acyclic."""
    d = nx.DiGraph()
    d.add_edges_from(arcs)
    try:
        found: list[Any] = nx.find_cycle(d)
    except nx.NetworkXNoCycle:
        return []
    return [int(u) for u, _ in found]


def is_chordal(g: Graph) -> bool:
    """Whether every cycle of length at least 4 has a chord."""
    return bool(nx.is_chordal(g))


# ---------------------------------------------------------------------------
# Unicyclic graphs
# ---------------------------------------------------------------------------


def unique_cycle(g: Graph) -> list[Vertex]:
    """The cycle of a connected unicyclic graph, in traversal order."""
    if not is_connected(g) or g.number_of_edges() != g.number_of_nodes():
        raise InputError("graph is not connected unicyclic")
    core = nx.k_core(g, 2)
    start = vertices(g)[0] if vertices(g)[0] in core else next(iter(core.nodes))
    return [u for u, _ in nx.find_cycle(core, source=start)]


def unicyclic_bf_predicate(g: Graph) -> bool:
    """
    Bridge-friendliness of a connected unicyclic graph's edge ideal, read off its cycle.

    True iff the cycle is a ``C3`` or ``C5`` with a vertex of degree 2, or a
    ``C6`` with two opposite vertices (cycle distance 3) of degree 2.
    """
    cycle = unique_cycle(g)
    k = len(cycle)
    low = [degree(g, v) == 2 for v in cycle]
    if k in (3, 5):
        return any(low)
    if k == 6:
        return any(low[i] and low[i + 3] for i in range(3))
    return False


# ---------------------------------------------------------------------------
# Orders on edges
# ---------------------------------------------------------------------------


def rooted_tree_levels(t: Graph, root: Vertex) -> dict[Vertex, tuple[int, int]]:
    """
    Label each vertex ``(depth, index within depth)``.

    Within a depth, vertices are indexed by their parent's index, then by
    ascending vertex label.
    """
    if not is_tree(t):
        raise InputError("not a tree")
    labels: dict[Vertex, tuple[int, int]] = {root: (0, 1)}
    level = [root]
    depth = 0
    while level:
        children: list[tuple[int, VertexKey, Vertex]] = []
        for parent in level:
            for child in t.neighbors(parent):
                if child not in labels:
                    children.append((labels[parent][1], vertex_key(child), child))
        children.sort(key=lambda c: (c[0], c[1]))
        depth += 1
        for j, (_, _, child) in enumerate(children, start=1):
            labels[child] = (depth, j)
        level = [c for _, _, c in children]
    return labels


def _tree_edge_keys(t: Graph, root: Vertex) -> dict[frozenset[Vertex], tuple[int, int, int]]:
    labels = rooted_tree_levels(t, root)
    keys: dict[frozenset[Vertex], tuple[int, int, int]] = {}
    for u, v in t.edges:
        upper, lower = (u, v) if labels[u][0] < labels[v][0] else (v, u)
        keys[frozenset((u, v))] = (labels[upper][0], labels[upper][1], labels[lower][1])
    return keys


def rooted_tree_edge_order(t: Graph, root: Vertex) -> TotalOrder:
    """Order on ``edge_ideal(t)``: edges by (depth of upper end, its index, index of lower end)."""
    keys = _tree_edge_keys(t, root)
    es = edges(t)
    ranking = sorted(range(len(es)), key=lambda i: keys[frozenset(es[i])])
    return TotalOrder(ranking=tuple(ranking))


def unicyclic_edge_order(g: Graph) -> TotalOrder:
    """
    Cycle edges first, then each hanging tree's rooted order, cycle by cycle vertex.

    The cycle is walked from a degree-2 vertex ``x1`` (for ``C6`` one whose
    opposite vertex also has degree 2) as ``x1xk > x1x2 > x2x3 > ... > x(k-1)xk``.
    """
    cycle = unique_cycle(g)
    k = len(cycle)
    low = [degree(g, v) == 2 for v in cycle]
    candidates = [i for i in range(k) if low[i] and (k != 6 or low[(i + 3) % 6])] or [i for i in range(k) if low[i]]
    start = candidates[0] if candidates else 0
    walk = cycle[start:] + cycle[:start]

    sequence: list[frozenset[Vertex]] = [frozenset((walk[0], walk[-1]))]
    sequence.extend(frozenset((walk[i], walk[i + 1])) for i in range(k - 1))

    cycle_edges = set(sequence)
    forest = make_graph(
        (e for e in edges(g) if frozenset(e) not in cycle_edges),
        vertices=vertices(g),
    )
    for anchor in walk:
        component = nx.node_connected_component(forest, anchor)
        hanging = forest.subgraph(component)
        if hanging.number_of_edges() == 0:
            continue
        keys = _tree_edge_keys(hanging, anchor)
        sequence.extend(sorted(keys, key=lambda e: keys[e]))

    es = edges(g)
    index = {frozenset(e): i for i, e in enumerate(es)}
    return TotalOrder(ranking=tuple(index[e] for e in sequence))


def structured_edge_orders(g: Graph) -> tuple[TotalOrder, ...]:
    """Rooted-tree orders (every root) for a tree, the cycle-first order for a connected unicyclic graph."""
    if is_tree(g):
        return tuple(rooted_tree_edge_order(g, root) for root in vertices(g))
    if is_connected(g) and g.number_of_edges() == g.number_of_nodes():
        return (unicyclic_edge_order(g),)
    return ()


__all__ = [
    "Graph",
    "Vertex",
    "Edge",
    "CorpusKind",
    "make_graph",
    "vertices",
    "edges",
    "degree",
    "neighbors",
    "parse_graph6",
    "encode_graph6",
    "parse_edge_list",
    "parse_graph_lines",
    "variable_name",
    "edge_ideal",
    "induced_subgraph",
    "complement",
    "automorphism_group",
    "named_graph",
    "graph_corpus",
    "is_connected",
    "is_tree",
    "induces_connected",
    "depths",
    "parents",
    "relabel",
    "labeled_trees",
    "find_directed_cycle",
    "is_chordal",
    "unique_cycle",
    "unicyclic_bf_predicate",
    "rooted_tree_levels",
    "rooted_tree_edge_order",
    "unicyclic_edge_order",
    "structured_edge_orders",
]
