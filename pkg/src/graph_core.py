"""
Graph and coloring data model with the structural predicates used everywhere else
"""

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from config import SEARCH_CONFIG
from src.errors import CapacityError, InputError

Edge = Tuple[int, int]


def normalize_edge(u: int, v: int) -> Edge:
    """Return the edge uv as an ordered pair (min, max)"""
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on the vertices 0..n-1"""

    n: int
    adjacency: Tuple[Tuple[int, ...], ...]
    _edge_set: FrozenSet[Edge] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise InputError(f"vertex count must be non-negative, got {self.n}")
        if len(self.adjacency) != self.n:
            raise InputError(
                f"adjacency has {len(self.adjacency)} rows for {self.n} vertices"
            )
        neighbor_sets = [set(nbrs) for nbrs in self.adjacency]
        edges = set()
        for v, nbrs in enumerate(self.adjacency):
            if list(nbrs) != sorted(neighbor_sets[v]):
                raise InputError(f"neighbors of {v} are not sorted and unique: {nbrs}")
            for u in nbrs:
                if not 0 <= u < self.n:
                    raise InputError(f"vertex {v} lists out-of-range neighbor {u}")
                if u == v:
                    raise InputError(f"self-loop at vertex {v}")
                if v not in neighbor_sets[u]:
                    raise InputError(f"asymmetric adjacency between {v} and {u}")
                edges.add(normalize_edge(u, v))
        object.__setattr__(self, '_edge_set', frozenset(edges))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> 'Graph':
        """
        Build a graph from an edge list

        Args:
            n: Number of vertices
            edges: Pairs of vertex indices

        Returns:
            Validated Graph

        Raises:
            InputError: on self-loops, duplicate edges or out-of-range indices
        """
        if n < 0:
            raise InputError(f"vertex count must be non-negative, got {n}")
        neighbors: List[set] = [set() for _ in range(n)]
        seen = set()
        for pair in edges:
            if len(pair) != 2:
                raise InputError(f"edge {list(pair)} must have exactly two endpoints")
            u, v = int(pair[0]), int(pair[1])
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge {[u, v]} has an endpoint outside 0..{n - 1}")
            if u == v:
                raise InputError(f"edge {[u, v]} is a self-loop")
            e = normalize_edge(u, v)
            if e in seen:
                raise InputError(f"duplicate edge {[u, v]}")
            seen.add(e)
            neighbors[u].add(v)
            neighbors[v].add(u)
        return cls(n, tuple(tuple(sorted(nbrs)) for nbrs in neighbors))

    @classmethod
    def from_networkx(cls, nx_graph: nx.Graph) -> 'Graph':
        """Convert a networkx graph, relabeling its nodes 0..n-1 in sorted order"""
        relabeled = nx.convert_node_labels_to_integers(nx_graph, ordering='sorted')
        return cls.from_edges(relabeled.number_of_nodes(), relabeled.edges())

    def to_networkx(self) -> nx.Graph:
        nx_graph = nx.Graph()
        nx_graph.add_nodes_from(range(self.n))
        nx_graph.add_edges_from(self.edges)
        return nx_graph

    @property
    def edges(self) -> List[Edge]:
        return sorted(self._edge_set)

    @property
    def num_edges(self) -> int:
        return len(self._edge_set)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return normalize_edge(u, v) in self._edge_set

    def subgraph(self, vertices: Iterable[int]) -> Tuple['Graph', Tuple[int, ...]]:
        """
        Induced subgraph

        Args:
            vertices: Vertex subset to keep

        Returns:
            (subgraph on 0..len-1, mapping from new index to original vertex)
        """
        keep = tuple(sorted(set(vertices)))
        for v in keep:
            self._check_vertex(v)
        index = {v: i for i, v in enumerate(keep)}
        adjacency = tuple(
            tuple(index[u] for u in self.adjacency[v] if u in index) for v in keep
        )
        return Graph(len(keep), adjacency), keep

    def without_edge(self, u: int, v: int) -> 'Graph':
        if not self.has_edge(u, v):
            raise InputError(f"edge {[u, v]} is not in the graph")
        e = normalize_edge(u, v)
        return Graph.from_edges(self.n, [x for x in self.edges if x != e])

    def without_vertex(self, v: int) -> 'Graph':
        self._check_vertex(v)
        sub, _ = self.subgraph(u for u in range(self.n) if u != v)
        return sub

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return len(connected_components(self)) == 1

    def _check_vertex(self, v: int):
        if not 0 <= v < self.n:
            raise InputError(f"vertex {v} outside 0..{self.n - 1}")


@dataclass(frozen=True)
class Coloring:
    """Assignment of colors 1..k to the vertices 0..n-1"""

    colors: Tuple[int, ...]
    k: int

    def __post_init__(self):
        object.__setattr__(self, 'colors', tuple(int(x) for x in self.colors))
        if self.k < 1:
            raise InputError(f"palette size must be at least 1, got {self.k}")
        for v, color in enumerate(self.colors):
            if not 1 <= color <= self.k:
                raise InputError(f"vertex {v} has color {color} outside 1..{self.k}")

    def __len__(self) -> int:
        return len(self.colors)

    def __getitem__(self, v: int) -> int:
        return self.colors[v]

    def to_state(self) -> Tuple[int, ...]:
        """0-based color vector used by the search kernels"""
        return tuple(color - 1 for color in self.colors)

    @classmethod
    def from_state(cls, state: Sequence[int], k: int) -> 'Coloring':
        return cls(tuple(color + 1 for color in state), k)

    def recolored(self, updates: Dict[int, int]) -> 'Coloring':
        colors = list(self.colors)
        for v, color in updates.items():
            colors[v] = color
        return Coloring(tuple(colors), self.k)


@dataclass(frozen=True)
class PartitionedGraph:
    """
    A B+E_l graph: bipartite base graph on sides S, T plus added edges inside
    S or inside T
    """

    graph: Graph
    side_S: FrozenSet[int]
    side_T: FrozenSet[int]
    base_edges: FrozenSet[Edge]
    added_edges: FrozenSet[Edge]

    def __post_init__(self):
        for name in ('side_S', 'side_T', 'base_edges', 'added_edges'):
            object.__setattr__(self, name, frozenset(getattr(self, name)))
        vertices = set(range(self.graph.n))
        if self.side_S & self.side_T:
            overlap = sorted(self.side_S & self.side_T)
            raise InputError(f"vertices {overlap} lie in both S and T")
        if (self.side_S | self.side_T) != vertices:
            missing = sorted(vertices - (self.side_S | self.side_T))
            extra = sorted((self.side_S | self.side_T) - vertices)
            raise InputError(f"S and T do not partition the vertices (missing {missing}, extra {extra})")
        for u, v in sorted(self.base_edges):
            if (u in self.side_S) == (v in self.side_S):
                raise InputError(f"base edge {[u, v]} does not join S to T")
        for u, v in sorted(self.added_edges):
            if (u in self.side_S) != (v in self.side_S):
                raise InputError(f"added edge {[u, v]} crosses between S and T")
        both = self.base_edges & self.added_edges
        if both:
            raise InputError(f"edge {list(min(both))} is both a base and an added edge")
        if (self.base_edges | self.added_edges) != frozenset(self.graph.edges):
            raise InputError("base and added edges do not make up the edge set of the graph")

    @classmethod
    def build(
        cls,
        n: int,
        side_S: Iterable[int],
        side_T: Iterable[int],
        base_edges: Iterable[Sequence[int]],
        added_edges: Iterable[Sequence[int]] = (),
    ) -> 'PartitionedGraph':
        """
        Assemble and validate a partitioned graph

        Args:
            n: Number of vertices
            side_S: Vertices of the partite set S
            side_T: Vertices of the partite set T
            base_edges: Edges of the bipartite base graph B
            added_edges: The l added edges inside S or T

        Returns:
            PartitionedGraph whose invariants have been checked
        """
        base = [tuple(e) for e in base_edges]
        added = [tuple(e) for e in added_edges]
        graph = Graph.from_edges(n, base + added)
        return cls(
            graph,
            frozenset(side_S),
            frozenset(side_T),
            frozenset(normalize_edge(*e) for e in base),
            frozenset(normalize_edge(*e) for e in added),
        )

    @property
    def ell(self) -> int:
        return len(self.added_edges)

    @property
    def is_matching(self) -> bool:
        touched = [v for e in self.added_edges for v in e]
        return len(touched) == len(set(touched))

    @property
    def added_in_S(self) -> List[Edge]:
        return sorted(e for e in self.added_edges if e[0] in self.side_S)

    @property
    def added_in_T(self) -> List[Edge]:
        return sorted(e for e in self.added_edges if e[0] in self.side_T)

    def base_graph(self) -> Graph:
        return Graph.from_edges(self.graph.n, sorted(self.base_edges))


def is_proper(g: Graph, c: Coloring) -> bool:
    """True iff no edge of g is monochromatic under c"""
    _check_sizes(g, c)
    return all(c.colors[u] != c.colors[v] for u, v in g.edges)


def colors_used(c: Coloring, r: Iterable[int]) -> FrozenSet[int]:
    """The color set C(R) of the vertices in r"""
    used = set()
    for v in r:
        if not 0 <= v < len(c):
            raise InputError(f"vertex {v} outside 0..{len(c) - 1}")
        used.add(c.colors[v])
    return frozenset(used)


def connected_components(g: Graph, vertices: Optional[Iterable[int]] = None) -> List[List[int]]:
    """
    Connected components of the subgraph induced by vertices (default all),
    each sorted, listed by smallest vertex
    """
    nx_graph = g.to_networkx()
    if vertices is not None:
        allowed = set(vertices)
        nx_graph = nx_graph.subgraph(v for v in range(g.n) if v in allowed)
    return sorted(sorted(component) for component in nx.connected_components(nx_graph))


def bipartition(g: Graph) -> Optional[Tuple[FrozenSet[int], FrozenSet[int]]]:
    """
    2-coloring induced partition, or None when g has an odd cycle

    Each component is rooted at its lowest vertex, which goes to the first side.
    """
    nx_graph = g.to_networkx()
    try:
        side = nx.bipartite.color(nx_graph)
    except nx.NetworkXError:
        return None
    side_a = set()
    for component in nx.connected_components(nx_graph):
        root_side = side[min(component)]
        side_a.update(v for v in component if side[v] == root_side)
    return frozenset(side_a), frozenset(range(g.n)) - frozenset(side_a)


def degeneracy_ordering(g: Graph) -> Tuple[int, List[int]]:
    """
    Min-degree peeling, ties broken by lowest index

    Returns:
        (degeneracy, vertices in removal order)
    """
    remaining = set(range(g.n))
    degrees = [g.degree(v) for v in range(g.n)]
    order = []
    d = 0
    while remaining:
        v = min(remaining, key=lambda u: (degrees[u], u))
        d = max(d, degrees[v])
        order.append(v)
        remaining.remove(v)
        for w in g.adjacency[v]:
            if w in remaining:
                degrees[w] -= 1
    return d, order


def degeneracy(g: Graph) -> int:
    return degeneracy_ordering(g)[0]


def find_coloring(g: Graph, k: int, size_cap: Optional[int] = None) -> Optional[Coloring]:
    """
    Exact k-colorability by backtracking

    Vertices are colored in smallest-last order; a vertex may open at most one
    new color, so color permutations are never explored twice.

    Args:
        g: Graph to color
        k: Number of colors
        size_cap: Vertex limit (defaults to the configured chromatic size cap)

    Returns:
        A proper k-coloring, or None when g is not k-colorable

    Raises:
        CapacityError: g has more vertices than the cap
    """
    cap = SEARCH_CONFIG['chromatic_size_cap'] if size_cap is None else size_cap
    if g.n > cap:
        raise CapacityError(f"exact coloring limited to {cap} vertices, graph has {g.n}", 0)
    if g.n == 0:
        return Coloring((), max(k, 1))
    if k < 1:
        return None

    _, peel = degeneracy_ordering(g)
    order = list(reversed(peel))
    state = [-1] * g.n

    def extend(position: int, opened: int) -> bool:
        if position == len(order):
            return True
        v = order[position]
        blocked = {state[w] for w in g.adjacency[v]}
        for color in range(min(opened + 1, k)):
            if color in blocked:
                continue
            state[v] = color
            if extend(position + 1, max(opened, color + 1)):
                return True
        state[v] = -1
        return False

    if not extend(0, 0):
        return None
    return Coloring.from_state(state, k)


def chromatic_number(g: Graph, size_cap: Optional[int] = None) -> int:
    """
    Exact chromatic number

    Raises:
        CapacityError: g exceeds the size cap
    """
    cap = SEARCH_CONFIG['chromatic_size_cap'] if size_cap is None else size_cap
    if g.n > cap:
        raise CapacityError(f"chromatic number limited to {cap} vertices, graph has {g.n}", 0)
    if g.n == 0:
        return 0
    if g.num_edges == 0:
        return 1
    upper = degeneracy(g) + 1
    for k in range(2, upper):
        if find_coloring(g, k, cap) is not None:
            return k
    return upper


def is_k_critical(g: Graph, k: int, size_cap: Optional[int] = None) -> bool:
    """True iff chi(g) = k and deleting any edge or vertex makes g (k-1)-colorable"""
    if chromatic_number(g, size_cap) != k:
        return False
    for u, v in g.edges:
        if find_coloring(g.without_edge(u, v), k - 1, size_cap) is None:
            return False
    for v in range(g.n):
        if find_coloring(g.without_vertex(v), k - 1, size_cap) is None:
            return False
    return True


def _check_sizes(g: Graph, c: Coloring):
    if len(c) != g.n:
        raise InputError(f"coloring has {len(c)} entries for {g.n} vertices")


# Named graphs used throughout tests and the harness

def complete_graph(n: int) -> Graph:
    return Graph.from_networkx(nx.complete_graph(n))


def cycle_graph(n: int) -> Graph:
    return Graph.from_networkx(nx.cycle_graph(n))


def path_graph(n: int) -> Graph:
    return Graph.from_networkx(nx.path_graph(n))


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with the center at vertex 0"""
    return Graph.from_networkx(nx.star_graph(leaves))


def complete_bipartite_graph(a: int, b: int) -> Graph:
    return Graph.from_networkx(nx.complete_bipartite_graph(a, b))


def petersen_graph() -> Graph:
    return Graph.from_networkx(nx.petersen_graph())


def odd_wheel(rim: int) -> Graph:
    """Odd cycle on `rim` vertices plus a hub joined to all of them"""
    if rim < 3 or rim % 2 == 0:
        raise InputError(f"odd wheel needs an odd rim of length at least 3, got {rim}")
    return Graph.from_networkx(nx.wheel_graph(rim + 1))
