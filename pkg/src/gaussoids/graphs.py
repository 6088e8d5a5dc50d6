"""
Separation gaussoids of undirected simple graphs.

(ij|K) belongs to the separation gaussoid of G when i and j lie in
different connected components of G after deleting K.
"""

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import FrozenSet, Iterable, Iterator, Sequence, Tuple

import networkx as nx

from gaussoids.ci import CIStructure, dual
from gaussoids.classify import is_ascending
from gaussoids.common import bits_of, expand_bits
from gaussoids.config import get_limit
from gaussoids.cube import square_index
from gaussoids.errors import (GraphParseError, NotAscendingError,
                              ResourceGuardError)

Edge = Tuple[int, int]


class Graph:
    """Simple undirected graph on the vertices 0..n-1."""

    def __init__(self, n: int, edges: Iterable[Edge] = ()):
        if n < 0:
            raise ValueError(f"negative vertex count {n}")
        self.n = n
        self.graph = nx.Graph()
        self.graph.add_nodes_from(range(n))
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u + 1}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {u + 1}-{v + 1} outside the vertex set")
            self.graph.add_edge(u, v)

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> "Graph":
        """Relabels the nodes of ``graph`` to 0..n-1 in sorted order."""
        nodes = sorted(graph.nodes)
        position = {v: p for p, v in enumerate(nodes)}
        return cls(len(nodes), ((position[u], position[v]) for u, v in graph.edges))

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, combinations(range(n), 2))

    @property
    def edges(self) -> FrozenSet[Edge]:
        return frozenset((min(u, v), max(u, v)) for u, v in self.graph.edges)

    def complement(self) -> "Graph":
        return Graph(self.n, nx.complement(self.graph).edges)

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        shown = " ".join(f"{u + 1}-{v + 1}" for u, v in sorted(self.edges))
        return f"Graph(n={self.n}, edges=[{shown}])"


def all_graphs(n: int) -> Iterator[Graph]:
    """Every labeled simple graph on n vertices."""
    pairs = list(combinations(range(n), 2))
    for t in range(1 << len(pairs)):
        yield Graph(n, (pairs[p] for p in bits_of(t)))


def parse_graph(text: str) -> Graph:
    """``n=<int>`` header, then one 1-based ``i j`` edge per line."""
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if n is None:
            if not line.startswith("n="):
                raise GraphParseError(f"line {lineno}: expected header 'n=<int>'")
            try:
                n = int(line[2:])
            except ValueError as e:
                raise GraphParseError(f"line {lineno}: invalid vertex count") from e
            if n > get_limit("max_input_n"):
                raise ResourceGuardError(
                    f"n={n} exceeds the input limit {get_limit('max_input_n')}")
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphParseError(f"line {lineno}: expected 'i j', got {line!r}")
        try:
            edges.append((int(parts[0]) - 1, int(parts[1]) - 1))
        except ValueError as e:
            raise GraphParseError(f"line {lineno}: non-numeric vertex in {line!r}") from e
    if n is None:
        raise GraphParseError("missing header 'n=<int>'")
    try:
        return Graph(n, edges)
    except ValueError as e:
        raise GraphParseError(str(e)) from e


def format_graph(G: Graph) -> str:
    lines = [f"n={G.n}"] + [f"{u + 1} {v + 1}" for u, v in sorted(G.edges)]
    return "\n".join(lines) + "\n"


def separation_gaussoid(G: Graph) -> CIStructure:
    n = G.n
    index = square_index(n).index
    bits = 0
    for K in range(1 << n):
        removed = set(bits_of(K))
        component = {}
        rest = G.graph.subgraph(v for v in range(n) if v not in removed)
        for c, nodes in enumerate(nx.connected_components(rest)):
            for v in nodes:
                component[v] = c
        for i, j in combinations(sorted(component), 2):
            if component[i] != component[j]:
                bits |= 1 << index[(1 << i | 1 << j, K)]
    return CIStructure(n, bits)


def dual_separation_gaussoid(G: Graph) -> CIStructure:
    return dual(separation_gaussoid(G))


def graph_from_gaussoid(A: CIStructure) -> Graph:
    """Edges are the pairs ij with (ij|[n] \\ ij) missing from A."""
    if not is_ascending(A):
        raise NotAscendingError("only ascending structures come from graphs")
    full = (1 << A.n) - 1
    index = square_index(A.n).index
    edges = []
    for i, j in combinations(range(A.n), 2):
        star = 1 << i | 1 << j
        if not A.bits >> index[(star, full & ~star)] & 1:
            edges.append((i, j))
    return Graph(A.n, edges)


def _is_cluster_graph(graph: nx.Graph) -> bool:
    for nodes in nx.connected_components(graph):
        size = len(nodes)
        if graph.subgraph(nodes).number_of_edges() != size * (size - 1) // 2:
            return False
    return True


@dataclass(frozen=True)
class GraphicalClasses:
    """
    Graph-side descriptions of the letter classes a separation gaussoid
    falls into:

    * complement_triangle_free  -> EUB
    * path_forest               -> UBF
    * complement_clique_union   -> EUF (G is complete multipartite)
    * complement_components_le_2 together with complement_clique_union -> EU
    * complement_equiv_relation -> EBF (G itself is a disjoint union of cliques)
    * involution_shape          -> BF (G is a matching)
    """
    complement_triangle_free: bool
    path_forest: bool
    complement_clique_union: bool
    complement_components_le_2: bool
    complement_equiv_relation: bool
    involution_shape: bool


def graphical_class_predicates(G: Graph) -> GraphicalClasses:
    complement = nx.complement(G.graph)
    degrees = [d for _, d in G.graph.degree]
    max_degree = max(degrees, default=0)
    result = GraphicalClasses(
        complement_triangle_free=not any(nx.triangles(complement).values()),
        path_forest=G.n == 0 or (max_degree <= 2 and nx.is_forest(G.graph)),
        complement_clique_union=_is_cluster_graph(complement),
        complement_components_le_2=all(len(c) <= 2 for c in nx.connected_components(complement)),
        complement_equiv_relation=_is_cluster_graph(G.graph),
        involution_shape=max_degree <= 1,
    )
    logging.debug("Graphical classes of %r: %s", G, result)
    return result


def eb_reconstruct(bits: Sequence[bool]) -> CIStructure:
    """
    The EB-gaussoid with (1i|∅) present exactly for ``bits[i-2]``. Vertex 1
    gets side 0 and vertex i gets side ``bits[i-2]``; (ij|K) is present iff
    i and j lie on different sides, for every K.
    """
    n = len(bits) + 1
    side = [False] + [bool(b) for b in bits]
    index = square_index(n).index
    result = 0
    for i, j in combinations(range(n), 2):
        if side[i] == side[j]:
            continue
        star = 1 << i | 1 << j
        rest = [p for p in range(n) if p not in (i, j)]
        for t in range(1 << len(rest)):
            result |= 1 << index[(star, expand_bits(t, rest))]
    return CIStructure(n, result)
