"""
Tests for the graph and coloring data model
"""

import pytest
from hypothesis import assume, given, settings, strategies as st

from src.errors import CapacityError, InputError
from src.graph_core import (
    Coloring,
    Graph,
    PartitionedGraph,
    bipartition,
    chromatic_number,
    colors_used,
    complete_bipartite_graph,
    complete_graph,
    connected_components,
    cycle_graph,
    degeneracy,
    degeneracy_ordering,
    find_coloring,
    is_k_critical,
    is_proper,
    odd_wheel,
    path_graph,
    petersen_graph,
    star_graph,
)


@st.composite
def small_graphs(draw, max_n=7):
    n = draw(st.integers(min_value=0, max_value=max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return Graph.from_edges(n, chosen)


class TestGraph:
    def test_from_edges_builds_sorted_adjacency(self):
        g = Graph.from_edges(4, [(2, 0), (0, 1), (3, 2)])
        assert g.adjacency == ((1, 2), (0,), (0, 3), (2,))
        assert g.edges == [(0, 1), (0, 2), (2, 3)]
        assert g.num_edges == 3

    @pytest.mark.parametrize("edges, message", [
        ([(0, 0)], "self-loop"),
        ([(0, 1), (1, 0)], "duplicate"),
        ([(0, 5)], "outside"),
    ])
    def test_from_edges_rejects_bad_edges(self, edges, message):
        with pytest.raises(InputError, match=message):
            Graph.from_edges(3, edges)

    def test_asymmetric_adjacency_rejected(self):
        with pytest.raises(InputError):
            Graph(2, ((1,), ()))

    def test_subgraph_keeps_mapping(self):
        g = cycle_graph(5)
        sub, mapping = g.subgraph([4, 0, 1])
        assert mapping == (0, 1, 4)
        assert sub.edges == [(0, 1), (0, 2)]

    def test_without_edge_and_vertex(self):
        g = complete_graph(4)
        assert g.without_edge(0, 3).num_edges == 5
        assert g.without_vertex(2) == complete_graph(3)
        with pytest.raises(InputError):
            path_graph(3).without_edge(0, 2)

    def test_networkx_round_trip(self):
        g = petersen_graph()
        assert Graph.from_networkx(g.to_networkx()) == g

    def test_named_families(self):
        assert star_graph(3).degree(0) == 3
        assert complete_bipartite_graph(2, 3).num_edges == 6
        assert odd_wheel(5).n == 6
        with pytest.raises(InputError):
            odd_wheel(4)


class TestColoring:
    def test_colors_must_be_in_palette(self):
        with pytest.raises(InputError, match="outside 1..3"):
            Coloring((1, 4), 3)

    def test_state_conversion(self):
        c = Coloring((1, 3, 2), 3)
        assert c.to_state() == (0, 2, 1)
        assert Coloring.from_state(c.to_state(), 3) == c

    def test_is_proper_on_triangle(self):
        k3 = complete_graph(3)
        assert is_proper(k3, Coloring((1, 2, 3), 3))
        assert not is_proper(k3, Coloring((1, 1, 2), 3))

    def test_is_proper_rejects_wrong_length(self):
        with pytest.raises(InputError):
            is_proper(complete_graph(3), Coloring((1, 2), 3))

    def test_colors_used(self):
        c = Coloring((1, 2, 1, 3), 4)
        assert colors_used(c, [0, 2]) == frozenset({1})
        assert colors_used(c, []) == frozenset()


class TestPartitionedGraph:
    def test_minimal_instance(self):
        pg = PartitionedGraph.build(2, [0], [1], [(0, 1)])
        assert pg.ell == 0
        assert pg.is_matching

    def test_added_edge_crossing_sides(self):
        with pytest.raises(InputError, match=r"added edge \[0, 1\] crosses"):
            PartitionedGraph.build(2, [0], [1], [], [(0, 1)])

    def test_base_edge_inside_a_side(self):
        with pytest.raises(InputError, match="does not join S to T"):
            PartitionedGraph.build(3, [0, 1], [2], [(0, 1)])

    def test_sides_must_partition(self):
        with pytest.raises(InputError, match="partition"):
            PartitionedGraph.build(3, [0], [1], [(0, 1)])

    def test_added_edges_by_side(self):
        pg = PartitionedGraph.build(
            6, [0, 1, 2], [3, 4, 5], [(0, 3), (1, 4)], [(0, 1), (1, 2), (4, 5)],
        )
        assert pg.added_in_S == [(0, 1), (1, 2)]
        assert pg.added_in_T == [(4, 5)]
        assert not pg.is_matching
        assert bipartition(pg.base_graph()) is not None


class TestStructure:
    def test_components_ordered_by_smallest_vertex(self):
        g = Graph.from_edges(6, [(4, 5), (0, 3)])
        assert connected_components(g) == [[0, 3], [1], [2], [4, 5]]
        assert connected_components(g, [3, 4, 5]) == [[3], [4, 5]]

    def test_bipartition_of_even_cycle(self):
        side_a, side_b = bipartition(cycle_graph(6))
        assert 0 in side_a
        assert side_a == frozenset({0, 2, 4})
        assert side_b == frozenset({1, 3, 5})

    def test_odd_cycle_has_no_bipartition(self):
        assert bipartition(cycle_graph(5)) is None

    def test_bipartition_roots_every_component_at_its_lowest_vertex(self):
        g = Graph.from_edges(7, [(1, 4), (4, 2), (3, 6), (5, 6)])
        side_a, side_b = bipartition(g)
        assert side_a == frozenset({0, 1, 2, 3, 5})
        assert side_b == frozenset({4, 6})

    @pytest.mark.parametrize("g, d", [
        (path_graph(5), 1),
        (cycle_graph(5), 2),
        (complete_graph(4), 3),
        (petersen_graph(), 3),
        (Graph.from_edges(3, []), 0),
    ])
    def test_degeneracy(self, g, d):
        assert degeneracy(g) == d

    def test_degeneracy_ordering_tie_break(self):
        _, order = degeneracy_ordering(path_graph(3))
        assert order[0] == 0


class TestColorability:
    @pytest.mark.parametrize("g, chi", [
        (Graph.from_edges(0, []), 0),
        (Graph.from_edges(3, []), 1),
        (cycle_graph(6), 2),
        (cycle_graph(5), 3),
        (petersen_graph(), 3),
        (complete_graph(4), 4),
        (odd_wheel(5), 4),
    ])
    def test_chromatic_number(self, g, chi):
        assert chromatic_number(g) == chi

    def test_find_coloring(self):
        c = find_coloring(petersen_graph(), 3)
        assert c is not None and is_proper(petersen_graph(), c)
        assert find_coloring(petersen_graph(), 2) is None

    def test_size_cap(self):
        with pytest.raises(CapacityError):
            find_coloring(petersen_graph(), 3, size_cap=5)
        with pytest.raises(CapacityError):
            chromatic_number(petersen_graph(), size_cap=5)

    @pytest.mark.parametrize("g, k, expected", [
        (cycle_graph(5), 3, True),
        (complete_graph(4), 4, True),
        (odd_wheel(5), 4, True),
        (cycle_graph(6), 2, False),
        (petersen_graph(), 3, False),
    ])
    def test_is_k_critical(self, g, k, expected):
        assert is_k_critical(g, k) is expected


@given(small_graphs())
@settings(max_examples=100, deadline=None)
def test_chromatic_number_is_attained_and_minimal(g):
    chi = chromatic_number(g)
    assume(chi > 0)
    c = find_coloring(g, chi)
    assert c is not None and is_proper(g, c)
    assert chi == 1 or find_coloring(g, chi - 1) is None


@given(small_graphs())
@settings(max_examples=100, deadline=None)
def test_bipartition_is_a_proper_two_coloring(g):
    sides = bipartition(g)
    if sides is None:
        assert chromatic_number(g) >= 3
        return
    side_a, side_b = sides
    assert side_a | side_b == frozenset(range(g.n))
    assert all((u in side_a) != (v in side_a) for u, v in g.edges)
    assert all(component[0] in side_a for component in connected_components(g))
