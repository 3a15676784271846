"""
Generators for the B+E_l counterexample families, the G** gadget and random
B+E_l instances
"""

import random
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Dict, List, Sequence, Tuple

from config import SEARCH_CONFIG
from src.errors import CapacityError, ConstructionError, InputError
from src.graph_core import (
    Coloring,
    Edge,
    Graph,
    PartitionedGraph,
    bipartition,
    chromatic_number,
    connected_components,
    find_coloring,
    is_proper,
)
from src.reconfig import (
    enumerate_colorings,
    has_connected_bicolored_subgraphs,
    rigidity_obstruction,
    same_up_to_color_permutation,
)

SHAPES = ('matching', 'paths', 'cycles4plus', 'complete_bipartite', 'any')


@dataclass(frozen=True)
class CertifiedPair:
    """A B+E_l graph with two k-colorings certified to be non-Kempe-equivalent"""

    name: str
    pg: PartitionedGraph
    c1: Coloring
    c2: Coloring
    k: int


@dataclass(frozen=True)
class GadgetMap:
    """The G** gadget of a base graph together with its parts"""

    base: Graph
    gadget: Graph
    i_sets: Tuple[Tuple[int, ...], ...]
    apex: Tuple[Tuple[int, int], ...]
    matching: Tuple[Edge, ...]
    partition: PartitionedGraph


@dataclass(frozen=True)
class BpeParams:
    """Parameters of a random B+E_l instance"""

    n_s: int
    n_t: int
    ell: int
    shape: str = 'any'
    base_density: float = 0.5
    seed: int = 0


@dataclass(frozen=True)
class AddedComponent:
    """A connected component of the graph formed by the added edges"""

    vertices: Tuple[int, ...]
    kind: str  # 'path' | 'cycle' | 'complete_bipartite' | 'other'
    shape: Tuple[int, ...] = ()


def _certify(name: str, pg: PartitionedGraph, c1: Coloring, c2: Coloring, k: int) -> CertifiedPair:
    if not is_proper(pg.graph, c1):
        raise ConstructionError(f"{name}: canonical coloring is not proper")
    if not is_proper(pg.graph, c2):
        raise ConstructionError(f"{name}: alternative coloring is not proper")
    if not rigidity_obstruction(pg.graph, c1, c2):
        raise ConstructionError(f"{name}: colorings are not certified non-equivalent")
    return CertifiedPair(name, pg, c1, c2, k)


def _complete_minus_monochromatic(side_S, side_T, colors) -> List[Edge]:
    return [(s, t) for s in side_S for t in side_T if colors[s] != colors[t]]


def _search_alternative(g: Graph, c1: Coloring) -> Coloring:
    """First proper coloring in lexicographic order that is not a permutation of c1"""
    try:
        for candidate in enumerate_colorings(g, c1.k, SEARCH_CONFIG['witness_search_cap']):
            if same_up_to_color_permutation(c1, candidate) is None:
                return candidate
    except CapacityError as exc:
        raise ConstructionError(
            f"no alternative coloring among the first {exc.partial_count} colorings"
        ) from exc
    raise ConstructionError("every proper coloring is a permutation of the canonical one")


def prop3_graph(k: int) -> CertifiedPair:
    """
    B+M_l graph with l = C(k,2) and Kc(G,k) >= 2

    S holds one added edge per color pair {p,q}, the p-colored endpoint first;
    T holds k vertices colored 1..k; every S-T pair with different canonical
    colors is a base edge.
    """
    if k < 3:
        raise InputError(f"prop3 needs k >= 3, got {k}")
    colors: List[int] = []
    added = []
    for p, q in combinations(range(1, k + 1), 2):
        first = len(colors)
        colors += [p, q]
        added.append((first, first + 1))
    side_S = range(len(colors))
    colors += list(range(1, k + 1))
    side_T = range(len(side_S), len(colors))

    pg = PartitionedGraph.build(
        len(colors), side_S, side_T,
        _complete_minus_monochromatic(side_S, side_T, colors), added,
    )
    c1 = Coloring(tuple(colors), k)
    c2 = Coloring(tuple([2, 3] * len(added) + [1] * k), k)
    if not pg.is_matching:
        raise ConstructionError("prop3: added edges do not form a matching")
    return _certify('prop3', pg, c1, c2, k)


def prop4i_graph(k: int) -> CertifiedPair:
    """
    (k-1)-colorable B+E_l graph with l = C(k,2) and Kc(G,k) >= 2

    S is a K_{k-2} colored 1..k-2 plus 2k-3 independent edges colored
    (1,k-1),...,(k-2,k-1),(1,k),...,(k-1,k); T is k vertices colored 1..k.
    """
    if k < 4:
        raise InputError(f"prop4i needs k >= 4, got {k}")
    colors = list(range(1, k - 1))
    added = list(combinations(range(k - 2), 2))
    pairs = [(i, k - 1) for i in range(1, k - 1)] + [(i, k) for i in range(1, k)]
    for p, q in pairs:
        first = len(colors)
        colors += [p, q]
        added.append((first, first + 1))
    side_S = range(len(colors))
    colors += list(range(1, k + 1))
    side_T = range(len(side_S), len(colors))

    pg = PartitionedGraph.build(
        len(colors), side_S, side_T,
        _complete_minus_monochromatic(side_S, side_T, colors), added,
    )
    if pg.ell != comb(k, 2):
        raise ConstructionError(f"prop4i: expected {comb(k, 2)} added edges, built {pg.ell}")
    if find_coloring(pg.graph, k - 1) is None:
        raise ConstructionError(f"prop4i: graph is not {k - 1}-colorable")
    c1 = Coloring(tuple(colors), k)
    return _certify('prop4i', pg, c1, _search_alternative(pg.graph, c1), k)


def prop4ii_graph(k: int) -> CertifiedPair:
    """
    k-chromatic B+E_l graph with l = C(k,2) - 1 and Kc(G,k) >= 2

    S is a K_{k-1} colored 1..k-1 plus a vertex v colored k-2 joined to the
    clique vertices colored 1..k-3.  T = {x, y, z} with the added edge xy,
    colored k-1, k, k.  The base graph is K_{k,3} without x's edge to the
    (k-1)-colored clique vertex and without y's edge to the (k-2)-colored one.
    """
    if k < 4:
        raise InputError(f"prop4ii needs k >= 4, got {k}")
    clique = list(range(k - 1))
    v = k - 1
    x, y, z = k, k + 1, k + 2
    colors = list(range(1, k)) + [k - 2, k - 1, k, k]
    added = list(combinations(clique, 2)) + [(u, v) for u in range(k - 3)] + [(x, y)]
    side_S = clique + [v]
    side_T = [x, y, z]
    removed = {(k - 2, x), (k - 3, y)}
    base = [(s, t) for s in side_S for t in side_T if (s, t) not in removed]

    pg = PartitionedGraph.build(k + 3, side_S, side_T, base, added)
    if pg.ell != comb(k, 2) - 1:
        raise ConstructionError(f"prop4ii: expected {comb(k, 2) - 1} added edges, built {pg.ell}")
    if chromatic_number(pg.graph) != k:
        raise ConstructionError(f"prop4ii: graph is not {k}-chromatic")
    c1 = Coloring(tuple(colors), k)
    return _certify('prop4ii', pg, c1, _search_alternative(pg.graph, c1), k)


def pad_with_isolated(cert: CertifiedPair, extra_S: int = 0, extra_T: int = 0) -> CertifiedPair:
    """
    Grow a certified instance by vertices with no added edges

    Each new vertex gets a canonical color r and is joined to every vertex of
    the other side colored differently from r; the alternative coloring gives
    it any free color.  Colors r are tried in increasing order until every
    G(i,j) of the canonical coloring is still connected.

    Raises:
        InputError: negative counts, or S-padding of prop4ii, whose T side
            carries only two colors so no new S vertex keeps every G(i,j) connected
        ConstructionError: no color keeps the certificate for some new vertex
    """
    if extra_S < 0 or extra_T < 0:
        raise InputError("padding counts must be non-negative")
    if cert.name == 'prop4ii' and extra_S:
        raise InputError("prop4ii can only be padded on the T side")
    current = cert
    for side_name in ['S'] * extra_S + ['T'] * extra_T:
        current = _pad_one(current, side_name)
    return current


def _pad_one(cert: CertifiedPair, side_name: str) -> CertifiedPair:
    pg = cert.pg
    new = pg.graph.n
    own, other = (pg.side_S, pg.side_T) if side_name == 'S' else (pg.side_T, pg.side_S)
    for r in range(1, cert.k + 1):
        neighbors = sorted(u for u in other if cert.c1.colors[u] != r)
        blocked = {cert.c2.colors[u] for u in neighbors}
        free = [color for color in range(1, cert.k + 1) if color not in blocked]
        if not free:
            continue
        base = sorted(pg.base_edges) + [(u, new) for u in neighbors]
        side_S = set(pg.side_S) | ({new} if side_name == 'S' else set())
        side_T = set(pg.side_T) | ({new} if side_name == 'T' else set())
        grown = PartitionedGraph.build(new + 1, side_S, side_T, base, sorted(pg.added_edges))
        c1 = Coloring(cert.c1.colors + (r,), cert.k)
        c2 = Coloring(cert.c2.colors + (free[0],), cert.k)
        if has_connected_bicolored_subgraphs(grown.graph, c1):
            return _certify(cert.name, grown, c1, c2, cert.k)
    raise ConstructionError(f"{cert.name}: cannot pad side {side_name} and keep the certificate")


def gstarstar(base: Graph) -> GadgetMap:
    """
    Build G** from a connected base graph without isolated vertices

    Each base vertex v becomes an independent set I_v of size deg(v); the slot
    of I_v for neighbor u is matched to the slot of I_u for v.  Then an adjacent
    apex pair x_v, y_v is joined to all of I_v.  The returned partition puts
    the apex vertices in S and the I-sets in T, so the added edges are the
    matching plus the apex edges, a matching of size |E| + |V|.

    Raises:
        InputError: base is disconnected or has a vertex of degree 0
    """
    if base.n == 0 or not base.is_connected():
        raise InputError("G** needs a connected base graph")
    isolated = [v for v in range(base.n) if base.degree(v) == 0]
    if isolated:
        raise InputError(f"G** needs no isolated vertices, vertex {isolated[0]} has degree 0")

    slots: Dict[Tuple[int, int], int] = {}
    i_sets = []
    next_vertex = 0
    for v in range(base.n):
        members = []
        for u in base.adjacency[v]:
            slots[(v, u)] = next_vertex
            members.append(next_vertex)
            next_vertex += 1
        i_sets.append(tuple(members))
    matching = tuple(sorted((slots[(u, v)], slots[(v, u)]) for u, v in base.edges))
    apex = tuple((next_vertex + 2 * v, next_vertex + 2 * v + 1) for v in range(base.n))

    spokes = [(a, w) for v in range(base.n) for a in apex[v] for w in i_sets[v]]
    apex_edges = list(apex)
    n = next_vertex + 2 * base.n
    partition = PartitionedGraph.build(
        n,
        [a for pair in apex for a in pair],
        range(next_vertex),
        spokes,
        list(matching) + apex_edges,
    )

    gadget = partition.graph
    m = base.num_edges
    if gadget.n != 2 * m + 2 * base.n or gadget.num_edges != 5 * m + base.n:
        raise ConstructionError("G** vertex or edge count does not match 2m+2n / 5m+n")
    if not partition.is_matching:
        raise ConstructionError("G** added edges are not a matching")
    return GadgetMap(base, gadget, tuple(i_sets), apex, matching, partition)


def _split_components(shape: str, ell: int, rng: random.Random) -> List[Tuple[str, int, Tuple[int, ...]]]:
    """Decompose ell edges into components (kind, vertices needed, size params)"""
    parts = []
    remaining = ell
    while remaining > 0:
        if shape == 'matching':
            parts.append(('path', 2, (1,)))
            remaining -= 1
        elif shape == 'paths':
            length = rng.randint(1, remaining)
            parts.append(('path', length + 1, (length,)))
            remaining -= length
        elif shape == 'cycles4plus':
            if remaining < 4:
                raise InputError(f"{ell} edges cannot be split into cycles of length >= 4")
            length = remaining if remaining < 8 else rng.randint(4, remaining - 4)
            parts.append(('cycle', length, (length,)))
            remaining -= length
        elif shape == 'complete_bipartite':
            options = [(a, b) for a in range(1, remaining + 1)
                       for b in range(a, remaining + 1) if a * b <= remaining]
            a, b = rng.choice(options)
            parts.append(('complete_bipartite', a + b, (a, b)))
            remaining -= a * b
        else:
            raise InputError(f"unknown component shape '{shape}'")
    return parts


def _component_edges(kind: str, params: Tuple[int, ...], vertices: List[int]) -> List[Edge]:
    if kind == 'path':
        return [(vertices[i], vertices[i + 1]) for i in range(params[0])]
    if kind == 'cycle':
        length = params[0]
        return [(vertices[i], vertices[(i + 1) % length]) for i in range(length)]
    a, _ = params
    return [(u, w) for u in vertices[:a] for w in vertices[a:]]


def random_bpe(params: BpeParams) -> PartitionedGraph:
    """
    Seeded random B+E_l graph

    Vertices 0..n_s-1 form S and the rest form T.  For every shape except
    'any', the added edges are laid out component by component on unused
    vertices of a randomly chosen side that still has room; 'any' samples l
    distinct edges inside the sides.  Base edges are drawn from S x T with
    probability base_density.

    Raises:
        InputError: the requested shape does not fit the vertex budget
    """
    if params.shape not in SHAPES:
        raise InputError(f"unknown shape '{params.shape}', expected one of {SHAPES}")
    if params.n_s < 0 or params.n_t < 0 or params.ell < 0:
        raise InputError("vertex counts and l must be non-negative")
    if not 0.0 <= params.base_density <= 1.0:
        raise InputError(f"base density {params.base_density} outside [0, 1]")
    rng = random.Random(params.seed)
    side_S = list(range(params.n_s))
    side_T = list(range(params.n_s, params.n_s + params.n_t))

    added: List[Edge] = []
    if params.shape == 'any':
        candidates = list(combinations(side_S, 2)) + list(combinations(side_T, 2))
        if params.ell > len(candidates):
            raise InputError(f"only {len(candidates)} edges fit inside the sides, asked for {params.ell}")
        added = sorted(rng.sample(candidates, params.ell))
    else:
        free = {'S': side_S[:], 'T': side_T[:]}
        rng.shuffle(free['S'])
        rng.shuffle(free['T'])
        for kind, need, size in _split_components(params.shape, params.ell, rng):
            roomy = [name for name in ('S', 'T') if len(free[name]) >= need]
            if not roomy:
                raise InputError(
                    f"no side has {need} free vertices for a {kind} component "
                    f"(n_s={params.n_s}, n_t={params.n_t}, l={params.ell})"
                )
            side = rng.choice(roomy)
            vertices, free[side] = free[side][:need], free[side][need:]
            added += _component_edges(kind, size, vertices)

    base = [(s, t) for s in side_S for t in side_T if rng.random() < params.base_density]
    return PartitionedGraph.build(params.n_s + params.n_t, side_S, side_T, base, added)


def classify_added_components(pg: PartitionedGraph) -> List[AddedComponent]:
    """
    Classify each connected component of the added edges

    A component that is a path is reported as a path even when it is also
    complete bipartite (K_{1,1}, K_{1,2}); a 4-cycle is reported as cycle(4).
    """
    added_graph = Graph.from_edges(pg.graph.n, sorted(pg.added_edges))
    touched = sorted({v for e in pg.added_edges for v in e})
    result = []
    for component in connected_components(added_graph, touched):
        sub, _ = added_graph.subgraph(component)
        nv, m = sub.n, sub.num_edges
        degrees = [sub.degree(v) for v in range(nv)]
        if m == nv - 1 and max(degrees) <= 2:
            result.append(AddedComponent(tuple(component), 'path', (m,)))
            continue
        if m == nv and all(d == 2 for d in degrees):
            result.append(AddedComponent(tuple(component), 'cycle', (nv,)))
            continue
        sides = bipartition(sub)
        if sides is not None and len(sides[0]) * len(sides[1]) == m:
            a, b = sorted((len(sides[0]), len(sides[1])))
            result.append(AddedComponent(tuple(component), 'complete_bipartite', (a, b)))
            continue
        result.append(AddedComponent(tuple(component), 'other'))
    return result


def satisfies_main_hypothesis(components: Sequence[AddedComponent]) -> bool:
    """Every added component is a path, a cycle of length >= 4 or complete bipartite"""
    return all(
        comp.kind in ('path', 'complete_bipartite')
        or (comp.kind == 'cycle' and comp.shape[0] >= 4)
        for comp in components
    )
