"""
Bicolored subgraphs, Kempe components and Kempe changes, plus the
normalization procedures used on B+E_l graphs
"""

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Dict, List, Tuple

from src.errors import InputError, InvariantError
from src.graph_core import (
    Coloring,
    Graph,
    PartitionedGraph,
    colors_used,
    connected_components,
    is_proper,
)


def coloring_snapshot(c: Coloring) -> int:
    """Fingerprint of a coloring, used to detect stale components"""
    return hash((c.k, c.colors))


@dataclass(frozen=True)
class KempeComponent:
    """A maximal connected vertex set of G(i,j) under one particular coloring"""

    pair: Tuple[int, int]
    vertices: Tuple[int, ...]
    snapshot: int = field(repr=False)

    @classmethod
    def of(cls, c: Coloring, pair: Tuple[int, int], vertices) -> 'KempeComponent':
        i, j = sorted(pair)
        return cls((i, j), tuple(sorted(vertices)), coloring_snapshot(c))


@dataclass(frozen=True)
class KempeWalk:
    """A coloring, the Kempe changes applied to it in order, and the result"""

    start: Coloring
    changes: Tuple[KempeComponent, ...]
    end: Coloring

    def __len__(self) -> int:
        return len(self.changes)

    def replay(self) -> Coloring:
        """Re-apply every change to start; raises InputError on a stale step"""
        c = self.start
        for comp in self.changes:
            c = apply_kempe_change(c, comp)
        return c


def _check_pair(c: Coloring, i: int, j: int):
    if i == j:
        raise InputError(f"Kempe pair needs two distinct colors, got ({i}, {j})")
    for color in (i, j):
        if not 1 <= color <= c.k:
            raise InputError(f"color {color} outside 1..{c.k}")


def bicolored_subgraph(g: Graph, c: Coloring, i: int, j: int) -> Tuple[Graph, Tuple[int, ...]]:
    """
    The subgraph G(i,j) induced by the vertices colored i or j

    Returns:
        (induced subgraph, mapping from subgraph index to vertex of g)
    """
    _check_pair(c, i, j)
    if len(c) != g.n:
        raise InputError(f"coloring has {len(c)} entries for {g.n} vertices")
    return g.subgraph(v for v in range(g.n) if c.colors[v] in (i, j))


def kempe_components(g: Graph, c: Coloring, i: int, j: int) -> List[KempeComponent]:
    """All (i,j)-components of c, in order of their smallest vertex"""
    _check_pair(c, i, j)
    if len(c) != g.n:
        raise InputError(f"coloring has {len(c)} entries for {g.n} vertices")
    pair_vertices = [v for v in range(g.n) if c.colors[v] in (i, j)]
    return [
        KempeComponent.of(c, (i, j), component)
        for component in connected_components(g, pair_vertices)
    ]


def apply_kempe_change(c: Coloring, comp: KempeComponent) -> Coloring:
    """
    Swap the colors of comp.pair on comp.vertices

    Raises:
        InputError: comp was computed from a different coloring
    """
    if comp.snapshot != coloring_snapshot(c):
        raise InputError(f"stale Kempe component {comp.pair} on {list(comp.vertices)}")
    i, j = comp.pair
    colors = list(c.colors)
    for v in comp.vertices:
        if colors[v] == i:
            colors[v] = j
        elif colors[v] == j:
            colors[v] = i
        else:
            raise InputError(f"vertex {v} of a {comp.pair}-component has color {colors[v]}")
    return Coloring(tuple(colors), c.k)


def kempe_neighbors(g: Graph, c: Coloring) -> List[Coloring]:
    """Every coloring exactly one Kempe change away from c, without duplicates"""
    found: Dict[Tuple[int, ...], Coloring] = {}
    for i, j in combinations(range(1, c.k + 1), 2):
        for comp in kempe_components(g, c, i, j):
            result = apply_kempe_change(c, comp)
            found.setdefault(result.colors, result)
    return list(found.values())


def recolor_free_vertex(g: Graph, c: Coloring, v: int, i: int) -> Coloring:
    """
    Recolor v to i by a (c(v), i)-change on the singleton component {v}

    Raises:
        InputError: some neighbor of v already has color i
    """
    return _singleton_change(g, c, v, i).end


def _singleton_change(g: Graph, c: Coloring, v: int, i: int) -> KempeWalk:
    if not 0 <= v < g.n:
        raise InputError(f"vertex {v} outside 0..{g.n - 1}")
    if not 1 <= i <= c.k:
        raise InputError(f"color {i} outside 1..{c.k}")
    if c.colors[v] == i:
        return KempeWalk(c, (), c)
    clash = [w for w in g.adjacency[v] if c.colors[w] == i]
    if clash:
        raise InputError(f"vertex {v} has neighbor {clash[0]} colored {i}")
    comp = KempeComponent.of(c, (c.colors[v], i), (v,))
    return KempeWalk(c, (comp,), apply_kempe_change(c, comp))


def _require_proper(pg: PartitionedGraph, c: Coloring):
    if not is_proper(pg.graph, c):
        raise InputError("coloring is not proper")


def clear_color_from_sides_walk(pg: PartitionedGraph, c: Coloring, i: int, j: int) -> KempeWalk:
    """
    Reach a Kempe-equivalent coloring with i not used on S and j not used on T

    Every (i,j)-component has its S-vertices in one color and its T-vertices in
    the other, so flipping each component whose S-part is colored i (or that is
    a lone T-vertex colored j) settles all of them at once.

    Raises:
        InputError: an added edge is an (i,j)-edge under c
        InvariantError: an (i,j)-component mixes colors on one side
    """
    _check_pair(c, i, j)
    _require_proper(pg, c)
    for u, v in sorted(pg.added_edges):
        if {c.colors[u], c.colors[v]} == {i, j}:
            raise InputError(f"added edge {[u, v]} is an ({i},{j})-edge")

    current = c
    changes = []
    for comp in kempe_components(pg.graph, c, i, j):
        s_colors = {c.colors[v] for v in comp.vertices if v in pg.side_S}
        t_colors = {c.colors[v] for v in comp.vertices if v in pg.side_T}
        if len(s_colors) > 1 or len(t_colors) > 1 or (s_colors and s_colors == t_colors):
            raise InvariantError(
                f"({i},{j})-component {list(comp.vertices)} is not split by the bipartition"
            )
        if s_colors == {i} or t_colors == {j}:
            step = KempeComponent.of(current, comp.pair, comp.vertices)
            current = apply_kempe_change(current, step)
            changes.append(step)
    return KempeWalk(c, tuple(changes), current)


def clear_color_from_T_walk(pg: PartitionedGraph, c: Coloring, i: int, j: int) -> KempeWalk:
    """
    With i unused on S and no (i,j)-edge inside T, recolor every j-vertex of T to i

    Each such vertex is alone in G(i,j), so one singleton change per vertex.

    Raises:
        InputError: i is used on S or an added edge inside T is an (i,j)-edge
    """
    _check_pair(c, i, j)
    _require_proper(pg, c)
    if i in colors_used(c, pg.side_S):
        raise InputError(f"color {i} is used on S")
    for u, v in pg.added_in_T:
        if {c.colors[u], c.colors[v]} == {i, j}:
            raise InputError(f"added edge {[u, v]} in T is an ({i},{j})-edge")
    current = c
    changes = []
    for v in sorted(pg.side_T):
        if current.colors[v] == j:
            walk = _singleton_change(pg.graph, current, v, i)
            changes.extend(walk.changes)
            current = walk.end
    return KempeWalk(c, tuple(changes), current)


def seed_color_in_components_walk(pg: PartitionedGraph, c: Coloring, i: int, j: int) -> KempeWalk:
    """
    Make every component of G[S] contain color j and every component of G[T]
    contain color i

    A component H of G[S] missing j gets its lowest vertex (color r) recolored
    by an (r,j)-change: no neighbor in S carries j because H lacks it, and no
    neighbor in T does because j is unused on T.  Symmetrically for T and i.

    Raises:
        InputError: i is used on S, j is used on T, or l >= C(k,2)
    """
    _check_pair(c, i, j)
    _require_proper(pg, c)
    if i in colors_used(c, pg.side_S):
        raise InputError(f"color {i} is used on S")
    if j in colors_used(c, pg.side_T):
        raise InputError(f"color {j} is used on T")
    if pg.ell >= comb(c.k, 2):
        raise InputError(f"{pg.ell} added edges is not fewer than C({c.k},2)")

    current = c
    changes = []
    for side, wanted in ((pg.side_S, j), (pg.side_T, i)):
        for component in connected_components(pg.graph, side):
            if wanted in colors_used(current, component):
                continue
            walk = _singleton_change(pg.graph, current, component[0], wanted)
            changes.extend(walk.changes)
            current = walk.end
    return KempeWalk(c, tuple(changes), current)


def clear_color_from_sides(pg: PartitionedGraph, c: Coloring, i: int, j: int) -> Coloring:
    """Kempe-equivalent coloring with i unused on S and j unused on T"""
    return clear_color_from_sides_walk(pg, c, i, j).end


def clear_color_from_T(pg: PartitionedGraph, c: Coloring, i: int, j: int) -> Coloring:
    return clear_color_from_T_walk(pg, c, i, j).end


def seed_color_in_components(pg: PartitionedGraph, c: Coloring, i: int, j: int) -> Coloring:
    """Kempe-equivalent coloring where every component of G[S] has j and of G[T] has i"""
    return seed_color_in_components_walk(pg, c, i, j).end
