"""
Tests for Kempe components, Kempe changes and the B+E_l normalization steps
"""

from itertools import permutations

import pytest
from hypothesis import assume, given, settings, strategies as st

from src.constructions import BpeParams, random_bpe
from src.errors import InputError
from src.graph_core import (
    Coloring,
    PartitionedGraph,
    colors_used,
    complete_graph,
    connected_components,
    cycle_graph,
    find_coloring,
    is_proper,
    path_graph,
)
from src.kempe_engine import (
    KempeComponent,
    apply_kempe_change,
    bicolored_subgraph,
    clear_color_from_sides,
    clear_color_from_sides_walk,
    clear_color_from_T,
    clear_color_from_T_walk,
    kempe_components,
    kempe_neighbors,
    recolor_free_vertex,
    seed_color_in_components,
    seed_color_in_components_walk,
)


@st.composite
def colored_bpe(draw):
    """A random B+E_l graph with l <= 5 and a proper 4-coloring of it"""
    params = BpeParams(
        n_s=draw(st.integers(1, 4)),
        n_t=draw(st.integers(1, 4)),
        ell=draw(st.integers(0, 5)),
        shape='any',
        base_density=draw(st.sampled_from([0.3, 0.6, 1.0])),
        seed=draw(st.integers(0, 10 ** 6)),
    )
    try:
        pg = random_bpe(params)
    except InputError:
        assume(False)
    c = find_coloring(pg.graph, 4)
    assume(c is not None)
    relabel = draw(st.permutations([1, 2, 3, 4]))
    c = Coloring(tuple(relabel[color - 1] for color in c.colors), 4)
    return pg, c


def _single_edge_pg() -> PartitionedGraph:
    return PartitionedGraph.build(4, [0, 1], [2, 3], [(0, 2), (1, 3), (0, 3)], [(0, 1)])


class TestComponents:
    def test_triangle_pair_component(self):
        c = Coloring((1, 2, 3), 3)
        comps = kempe_components(complete_graph(3), c, 1, 2)
        assert [comp.vertices for comp in comps] == [(0, 1)]
        assert comps[0].pair == (1, 2)

    def test_nonadjacent_vertices_form_separate_components(self):
        c = Coloring((1, 2, 3), 3)
        comps = kempe_components(path_graph(3), c, 3, 1)
        assert [comp.vertices for comp in comps] == [(0,), (2,)]
        assert comps[0].pair == (1, 3)

    def test_pair_must_be_distinct_and_in_range(self):
        c = Coloring((1, 2, 3), 3)
        with pytest.raises(InputError):
            kempe_components(complete_graph(3), c, 2, 2)
        with pytest.raises(InputError):
            kempe_components(complete_graph(3), c, 1, 4)

    def test_bicolored_subgraph(self):
        c = Coloring((1, 2, 1, 3), 3)
        sub, mapping = bicolored_subgraph(cycle_graph(4), c, 1, 2)
        assert mapping == (0, 1, 2)
        assert sub.num_edges == 2


class TestKempeChange:
    def test_bipartite_c4_has_one_neighbor(self):
        c = Coloring((1, 2, 1, 2), 2)
        assert [n.colors for n in kempe_neighbors(cycle_graph(4), c)] == [(2, 1, 2, 1)]

    def test_stale_component_rejected(self):
        g = path_graph(3)
        c = Coloring((1, 2, 1), 3)
        comp = kempe_components(g, c, 1, 3)[0]
        other = Coloring((2, 1, 2), 3)
        with pytest.raises(InputError, match="stale"):
            apply_kempe_change(other, comp)

    def test_forged_component_rejected(self):
        c = Coloring((1, 2, 3), 3)
        forged = KempeComponent.of(c, (1, 2), (2,))
        with pytest.raises(InputError):
            apply_kempe_change(c, forged)

    def test_neighbors_of_k3_are_transpositions(self):
        c = Coloring((1, 2, 3), 3)
        found = {n.colors for n in kempe_neighbors(complete_graph(3), c)}
        assert found == {(2, 1, 3), (3, 2, 1), (1, 3, 2)}

    def test_recolor_free_vertex(self):
        g = path_graph(3)
        c = Coloring((1, 2, 1), 3)
        assert recolor_free_vertex(g, c, 0, 3).colors == (3, 2, 1)
        assert recolor_free_vertex(g, c, 0, 1) == c
        with pytest.raises(InputError, match="neighbor 1"):
            recolor_free_vertex(g, c, 0, 2)


@given(colored_bpe(), st.data())
@settings(max_examples=120, deadline=None)
def test_kempe_change_keeps_properness_and_is_an_involution(instance, data):
    pg, c = instance
    g = pg.graph
    i, j = data.draw(st.sampled_from(list(permutations(range(1, 5), 2))))
    for comp in kempe_components(g, c, i, j):
        flipped = apply_kempe_change(c, comp)
        assert is_proper(g, flipped)
        again = KempeComponent.of(flipped, comp.pair, comp.vertices)
        assert apply_kempe_change(flipped, again) == c
        # the component stays a component of the flipped coloring
        assert comp.vertices in [x.vertices for x in kempe_components(g, flipped, i, j)]


@given(colored_bpe())
@settings(max_examples=150, deadline=None)
def test_kempe_neighbors_are_symmetric(instance):
    pg, c = instance
    g = pg.graph
    for neighbor in kempe_neighbors(g, c):
        assert neighbor != c
        assert c in kempe_neighbors(g, neighbor)


class TestClearColorFromSides:
    def test_worked_example(self):
        pg = _single_edge_pg()
        c = Coloring((1, 2, 2, 3), 3)
        walk = clear_color_from_sides_walk(pg, c, 1, 3)
        assert walk.end.colors == (3, 2, 2, 1)
        assert len(walk) == 1
        assert walk.replay() == walk.end

    def test_rejects_added_pair_edge(self):
        pg = _single_edge_pg()
        with pytest.raises(InputError, match=r"\[0, 1\]"):
            clear_color_from_sides(pg, Coloring((1, 2, 2, 3), 3), 1, 2)

    def test_rejects_improper_coloring(self):
        with pytest.raises(InputError):
            clear_color_from_sides(_single_edge_pg(), Coloring((1, 1, 2, 3), 3), 1, 3)


@given(colored_bpe(), st.data())
@settings(max_examples=100, deadline=None)
def test_clear_color_from_sides_property(instance, data):
    pg, c = instance
    pairs = [
        (i, j) for i, j in permutations(range(1, 5), 2)
        if all({c.colors[u], c.colors[v]} != {i, j} for u, v in pg.added_edges)
    ]
    assume(pairs)
    i, j = data.draw(st.sampled_from(pairs))
    walk = clear_color_from_sides_walk(pg, c, i, j)
    assert is_proper(pg.graph, walk.end)
    assert i not in colors_used(walk.end, pg.side_S)
    assert j not in colors_used(walk.end, pg.side_T)
    assert walk.replay() == walk.end


@given(colored_bpe(), st.data())
@settings(max_examples=100, deadline=None)
def test_normalization_chain(instance, data):
    pg, c = instance
    pairs = [
        (i, j) for i, j in permutations(range(1, 5), 2)
        if all({c.colors[u], c.colors[v]} != {i, j} for u, v in pg.added_edges)
    ]
    assume(pairs)
    i, j = data.draw(st.sampled_from(pairs))
    cleared = clear_color_from_sides(pg, c, i, j)

    seeded = seed_color_in_components_walk(pg, cleared, i, j)
    end = seeded.end
    assert is_proper(pg.graph, end)
    assert seeded.replay() == end
    for component in connected_components(pg.graph, pg.side_S):
        assert j in colors_used(end, component)
    for component in connected_components(pg.graph, pg.side_T):
        assert i in colors_used(end, component)


class TestClearColorFromT:
    def test_singleton_changes(self):
        pg = PartitionedGraph.build(4, [0, 1], [2, 3], [(0, 2), (1, 3)])
        c = Coloring((1, 1, 2, 3), 3)
        walk = clear_color_from_T_walk(pg, c, 3, 2)
        assert walk.end.colors == (1, 1, 3, 3)
        assert 2 not in colors_used(walk.end, pg.side_T)
        assert [comp.vertices for comp in walk.changes] == [(2,)]

    def test_requires_color_unused_on_S(self):
        pg = PartitionedGraph.build(4, [0, 1], [2, 3], [(0, 2), (1, 3)], [(2, 3)])
        with pytest.raises(InputError, match="used on S"):
            clear_color_from_T(pg, Coloring((1, 1, 2, 3), 3), 1, 2)

    def test_rejects_pair_edge_in_T(self):
        pg = PartitionedGraph.build(4, [0, 1], [2, 3], [(0, 2), (1, 3)], [(2, 3)])
        with pytest.raises(InputError, match="in T"):
            clear_color_from_T(pg, Coloring((1, 1, 2, 3), 3), 3, 2)


class TestSeedColor:
    def test_rejects_used_colors(self):
        pg = _single_edge_pg()
        c = Coloring((1, 2, 2, 3), 3)
        with pytest.raises(InputError):
            seed_color_in_components(pg, c, 1, 3)

    def test_rejects_too_many_added_edges(self):
        pg = PartitionedGraph.build(
            6, [0, 1, 2, 3, 4, 5], [], [], [(0, 1), (2, 3), (4, 5)],
        )
        c = Coloring((1, 2, 1, 2, 1, 2), 3)
        with pytest.raises(InputError, match="C\\(3,2\\)"):
            seed_color_in_components(pg, c, 3, 1)
