"""
Exhaustive exploration of the Kempe reconfiguration graph
"""

import sys
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterator, List, Optional, Set, Tuple

from networkx.utils import UnionFind

from config import SEARCH_CONFIG
from src.errors import CapacityError, InputError
from src.graph_core import Coloring, Graph, is_proper
from src.kempe_engine import KempeComponent, KempeWalk, kempe_components

State = Tuple[int, ...]


@dataclass(frozen=True)
class KempeClassReport:
    """
    Result of enumerating C_k(G) and grouping it into Kempe classes

    A truncated report only records how many colorings were enumerated
    before the cap; its num_classes is None.
    """

    k: int
    num_colorings: int
    num_classes: Optional[int]
    representatives: Tuple[Coloring, ...]
    class_sizes: Tuple[int, ...] = ()
    truncated: bool = False

    def to_dict(self) -> Dict:
        return {
            'k': self.k,
            'num_colorings': self.num_colorings,
            'num_classes': self.num_classes,
            'representatives': [list(c.colors) for c in self.representatives],
            'class_sizes': list(self.class_sizes),
            'truncated': self.truncated,
        }


@dataclass(frozen=True)
class EquivalenceVerdict:
    """Outcome of a bidirectional search between two colorings"""

    status: str  # 'equivalent' | 'not_equivalent' | 'undecided'
    witness: Optional[KempeWalk] = None
    explored: int = 0

    @property
    def equivalent(self) -> bool:
        return self.status == 'equivalent'


def _resolve_cap(cap: Optional[int]) -> int:
    return SEARCH_CONFIG['default_cap'] if cap is None else cap


def _neighbor_states(adjacency: Tuple[Tuple[int, ...], ...], state: State, k: int) -> Set[State]:
    """All states one Kempe change away from state (0-based colors)"""
    n = len(state)
    out = set()
    for a, b in combinations(range(k), 2):
        seen = set()
        for root in range(n):
            if root in seen or (state[root] != a and state[root] != b):
                continue
            seen.add(root)
            component = [root]
            stack = [root]
            while stack:
                u = stack.pop()
                for w in adjacency[u]:
                    if w not in seen and (state[w] == a or state[w] == b):
                        seen.add(w)
                        component.append(w)
                        stack.append(w)
            flipped = list(state)
            for u in component:
                flipped[u] = a + b - flipped[u]
            out.add(tuple(flipped))
    return out


def _enumerate_states(g: Graph, k: int) -> Iterator[State]:
    """Proper colorings as 0-based vectors, lexicographic, by backtracking"""
    n = g.n
    if n == 0:
        yield ()
        return
    earlier = [tuple(w for w in g.adjacency[v] if w < v) for v in range(n)]
    state = [0] * n

    def extend(v: int) -> Iterator[State]:
        if v == n:
            yield tuple(state)
            return
        blocked = {state[w] for w in earlier[v]}
        for color in range(k):
            if color in blocked:
                continue
            state[v] = color
            yield from extend(v + 1)

    yield from extend(0)


def enumerate_colorings(g: Graph, k: int, cap: Optional[int] = None) -> Iterator[Coloring]:
    """
    Every proper k-coloring exactly once, in lexicographic order

    Raises:
        CapacityError: more than cap colorings exist (partial_count = cap)
    """
    if k < 1:
        raise InputError(f"palette size must be at least 1, got {k}")
    limit = _resolve_cap(cap)
    produced = 0
    for state in _enumerate_states(g, k):
        if produced >= limit:
            raise CapacityError(f"more than {limit} proper {k}-colorings", produced)
        produced += 1
        yield Coloring.from_state(state, k)


def count_kempe_classes(
    g: Graph, k: int, cap: Optional[int] = None, verbose: bool = False
) -> KempeClassReport:
    """
    Exact Kc(G,k) by union-find over all proper k-colorings

    Args:
        g: Graph
        k: Palette size
        cap: Maximum number of colorings to hold (default from config)
        verbose: Print progress to stderr

    Returns:
        KempeClassReport whose representatives are the lexicographically least
        coloring of each class

    Raises:
        CapacityError: the coloring count exceeds cap; the error carries a
            truncated report of what was enumerated
    """
    if k < 1:
        raise InputError(f"palette size must be at least 1, got {k}")
    limit = _resolve_cap(cap)
    states: List[State] = []
    for state in _enumerate_states(g, k):
        if len(states) >= limit:
            partial = KempeClassReport(k, len(states), None, (), (), truncated=True)
            raise CapacityError(
                f"more than {limit} proper {k}-colorings", len(states), partial
            )
        states.append(state)
    if verbose:
        print(f"  Enumerated {len(states)} proper {k}-colorings", file=sys.stderr)

    index = {state: position for position, state in enumerate(states)}
    classes = UnionFind(range(len(states)))
    for position, state in enumerate(states):
        for neighbor in _neighbor_states(g.adjacency, state, k):
            classes.union(position, index[neighbor])

    members: Dict[int, List[int]] = {}
    for position in range(len(states)):
        members.setdefault(classes[position], []).append(position)
    groups = sorted(members.values(), key=lambda group: group[0])
    if verbose:
        print(f"  Found {len(groups)} Kempe classes", file=sys.stderr)
    return KempeClassReport(
        k=k,
        num_colorings=len(states),
        num_classes=len(groups),
        representatives=tuple(Coloring.from_state(states[group[0]], k) for group in groups),
        class_sizes=tuple(len(group) for group in groups),
    )


def kempe_class(g: Graph, c: Coloring, cap: Optional[int] = None) -> List[Coloring]:
    """
    The Kempe class of c, sorted lexicographically

    Raises:
        CapacityError: the class has more than cap colorings
    """
    _require_proper(g, c)
    limit = _resolve_cap(cap)
    start = c.to_state()
    seen = {start}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        for neighbor in _neighbor_states(g.adjacency, state, c.k):
            if neighbor not in seen:
                if len(seen) >= limit:
                    raise CapacityError(f"Kempe class exceeds {limit} colorings", len(seen))
                seen.add(neighbor)
                queue.append(neighbor)
    return [Coloring.from_state(state, c.k) for state in sorted(seen)]


def _change_between(before: State, after: State, k: int) -> KempeComponent:
    changed = [v for v in range(len(before)) if before[v] != after[v]]
    v = changed[0]
    pair = (before[v] + 1, after[v] + 1)
    return KempeComponent.of(Coloring.from_state(before, k), pair, changed)


def are_kempe_equivalent(
    g: Graph, c1: Coloring, c2: Coloring, cap: Optional[int] = None
) -> EquivalenceVerdict:
    """
    Decide c1 ~_k c2 by bidirectional breadth-first search

    The smaller frontier is expanded one full layer at a time.  When the two
    searches meet, the witness is the replayable list of changes from c1 to c2.
    A side whose frontier empties has exhausted its whole class, which proves
    non-equivalence.

    Raises:
        InputError: palette sizes differ or a coloring is improper
    """
    if c1.k != c2.k:
        raise InputError(f"palette sizes differ: {c1.k} vs {c2.k}")
    _require_proper(g, c1)
    _require_proper(g, c2)
    k = c1.k
    limit = _resolve_cap(cap)
    source, target = c1.to_state(), c2.to_state()
    if source == target:
        return EquivalenceVerdict('equivalent', KempeWalk(c1, (), c1), 1)

    parents = ({source: None}, {target: None})
    frontiers = ([source], [target])
    while frontiers[0] and frontiers[1]:
        side = 0 if len(frontiers[0]) <= len(frontiers[1]) else 1
        mine, other = parents[side], parents[1 - side]
        next_layer = []
        for state in frontiers[side]:
            for neighbor in sorted(_neighbor_states(g.adjacency, state, k)):
                if neighbor in mine:
                    continue
                mine[neighbor] = state
                if neighbor in other:
                    path = _join_paths(parents, neighbor)
                    changes = tuple(
                        _change_between(a, b, k) for a, b in zip(path, path[1:])
                    )
                    explored = len(parents[0]) + len(parents[1])
                    return EquivalenceVerdict('equivalent', KempeWalk(c1, changes, c2), explored)
                next_layer.append(neighbor)
                if len(parents[0]) + len(parents[1]) > limit:
                    return EquivalenceVerdict('undecided', None, limit)
        frontiers = (next_layer, frontiers[1]) if side == 0 else (frontiers[0], next_layer)
    return EquivalenceVerdict('not_equivalent', None, len(parents[0]) + len(parents[1]))


def _join_paths(parents, meeting: State) -> List[State]:
    forward = []
    state = meeting
    while state is not None:
        forward.append(state)
        state = parents[0][state]
    forward.reverse()
    state = parents[1][meeting]
    while state is not None:
        forward.append(state)
        state = parents[1][state]
    return forward


def same_up_to_color_permutation(c1: Coloring, c2: Coloring) -> Optional[Dict[int, int]]:
    """
    The color permutation pi with pi(c1(v)) = c2(v) for all v, if any

    Colors unused by c1 are matched to the colors left over, in increasing order.
    """
    if len(c1) != len(c2) or c1.k != c2.k:
        return None
    forward: Dict[int, int] = {}
    backward: Dict[int, int] = {}
    for a, b in zip(c1.colors, c2.colors):
        if forward.setdefault(a, b) != b or backward.setdefault(b, a) != a:
            return None
    free_sources = [color for color in range(1, c1.k + 1) if color not in forward]
    free_targets = [color for color in range(1, c1.k + 1) if color not in backward]
    forward.update(zip(free_sources, free_targets))
    return dict(sorted(forward.items()))


def permute_colors(c: Coloring, permutation: Dict[int, int]) -> Coloring:
    """The coloring pi o c"""
    if sorted(permutation) != list(range(1, c.k + 1)) or sorted(permutation.values()) != list(range(1, c.k + 1)):
        raise InputError(f"{permutation} is not a permutation of 1..{c.k}")
    return Coloring(tuple(permutation[color] for color in c.colors), c.k)


def has_connected_bicolored_subgraphs(g: Graph, c: Coloring) -> bool:
    """True iff every G(i,j) of c has at most one connected component"""
    return all(
        len(kempe_components(g, c, i, j)) <= 1
        for i, j in combinations(range(1, c.k + 1), 2)
    )


def rigidity_obstruction(g: Graph, c1: Coloring, c2: Coloring) -> bool:
    """
    Certificate that c1 and c2 are not Kempe equivalent

    When every G(i,j) of c1 is a single component, each Kempe change is a global
    swap of two colors, so the class of c1 is exactly its permutation orbit.
    """
    if c1.k != c2.k:
        raise InputError(f"palette sizes differ: {c1.k} vs {c2.k}")
    _require_proper(g, c1)
    _require_proper(g, c2)
    if not has_connected_bicolored_subgraphs(g, c1):
        return False
    return same_up_to_color_permutation(c1, c2) is None


def _require_proper(g: Graph, c: Coloring):
    if not is_proper(g, c):
        raise InputError(f"coloring {list(c.colors)} is not proper")
