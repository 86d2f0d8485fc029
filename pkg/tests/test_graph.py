import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphsep.errors import InvalidGraph, PreconditionViolated
from graphsep.graph import (
    LayeredGraph,
    adjacency_matrix,
    block_view,
    degree_vector,
    gtpt,
    incidence_interchange,
    internally_related,
    is_degree_symmetric,
    is_partially_symmetric,
    partial_degree,
    permutation_matrix,
    random_layered_graph,
    random_partially_symmetric,
    relabel,
)
from graphsep.linalg import partial_transpose

from conftest import DEG_SYM_ONLY, SCAFFOLD_H, PATH_SEP, PATH_ENT, INTERCHANGE_G, INTERCHANGE_H, RELABEL_FIRST, RELABEL_PERM, RELABEL_SECOND, STAR4


@st.composite
def layered_graphs(draw, max_order=16):
    m = draw(st.integers(1, 4))
    n = draw(st.integers(1, max(1, max_order // m)))
    size = m * n
    pairs = [(u, v) for u in range(size) for v in range(u + 1, size)]
    edges = draw(st.sets(st.sampled_from(pairs))) if pairs else set()
    return LayeredGraph(m, n, frozenset(edges))


def test_layered_graph_rejects_loops_and_range():
    with pytest.raises(InvalidGraph):
        LayeredGraph(2, 2, {(1, 1)})
    with pytest.raises(InvalidGraph):
        LayeredGraph(2, 2, {(0, 4)})
    assert LayeredGraph(2, 2, {(2, 0), (0, 2)}).edges == {(0, 2)}


def test_vertex_indexing_is_zero_based():
    g = LayeredGraph(3, 4)
    assert (g.layer(7), g.position(7)) == (1, 3)
    assert g.vertex(2, 1) == 9


def test_adjacency_single_edge():
    a = adjacency_matrix(LayeredGraph(2, 2, {(1, 2)}))
    expected = np.zeros((4, 4), dtype=int)
    expected[1, 2] = expected[2, 1] = 1
    np.testing.assert_array_equal(a, expected)


def test_adjacency_star_row_sums():
    np.testing.assert_array_equal(adjacency_matrix(STAR4).sum(axis=1), [1, 1, 3, 1])


def test_adjacency_empty():
    assert not adjacency_matrix(LayeredGraph(2, 3)).any()


def test_degree_vectors():
    np.testing.assert_array_equal(degree_vector(STAR4), [1, 1, 3, 1])
    np.testing.assert_array_equal(degree_vector(LayeredGraph(3, 2)), np.zeros(6))
    k4 = LayeredGraph(2, 2, {(u, v) for u in range(4) for v in range(u + 1, 4)})
    np.testing.assert_array_equal(degree_vector(k4), [3, 3, 3, 3])


def test_block_view_interchange_pair():
    np.testing.assert_array_equal(block_view(INTERCHANGE_G).block(0, 1), [[0, 1, 0], [1, 0, 1], [0, 1, 0]])


def test_block_view_scaffold_h():
    bv = block_view(SCAFFOLD_H)
    swap_pairs = [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]
    np.testing.assert_array_equal(bv.block(0, 1), swap_pairs)
    np.testing.assert_array_equal(bv.block(1, 2), swap_pairs)
    assert not bv.block(0, 2).any()


def test_block_view_union_has_zero_off_diagonal():
    g = LayeredGraph(3, 3, {(0, 1), (3, 4), (6, 7), (1, 2), (4, 5), (7, 8)})
    bv = block_view(g)
    assert all(not bv.block(i, j).any() for i in range(3) for j in range(3) if i != j)


@given(layered_graphs())
def test_block_view_invariants(g):
    bv = block_view(g)
    for i in range(g.m):
        np.testing.assert_array_equal(bv.diagonal(i), bv.diagonal(i).T)
        for j in range(g.m):
            np.testing.assert_array_equal(bv.block(i, j).T, bv.block(j, i))
    np.testing.assert_array_equal(bv.assemble(), adjacency_matrix(g))


def test_gtpt_star4():
    assert gtpt(STAR4).edges == {(0, 2), (0, 3), (2, 3)}


def test_gtpt_fixes_partially_symmetric_graph():
    assert gtpt(SCAFFOLD_H) == SCAFFOLD_H


def test_gtpt_involution_random():
    rng = np.random.default_rng(7)
    for _ in range(200):
        m, n = int(rng.integers(1, 5)), int(rng.integers(1, 5))
        g = random_layered_graph(rng, m, n, rng.uniform())
        assert gtpt(gtpt(g)) == g


@given(layered_graphs())
def test_gtpt_edge_count_and_block_transpose(g):
    h = gtpt(g)
    assert h.num_edges == g.num_edges
    np.testing.assert_array_equal(adjacency_matrix(h), partial_transpose(adjacency_matrix(g), g.m, g.n))


def test_degree_symmetry_examples():
    assert is_degree_symmetric(DEG_SYM_ONLY)
    assert not is_degree_symmetric(STAR4)
    assert is_degree_symmetric(LayeredGraph(2, 2))


def test_partial_symmetry_examples():
    assert is_partially_symmetric(SCAFFOLD_H)
    assert not is_partially_symmetric(DEG_SYM_ONLY)
    assert not is_partially_symmetric(INTERCHANGE_H)
    assert is_partially_symmetric(INTERCHANGE_G)


def test_partially_symmetric_implies_degree_symmetric():
    rng = np.random.default_rng(11)
    for _ in range(1000):
        m, n = int(rng.integers(1, 5)), int(rng.integers(1, 5))
        g = random_partially_symmetric(rng, m, n, rng.uniform())
        assert is_partially_symmetric(g)
        assert is_degree_symmetric(g)
        assert gtpt(g) == g


def test_partial_degree_interchange_pair():
    assert partial_degree(INTERCHANGE_G, 0, 1) == 1
    assert partial_degree(INTERCHANGE_G, 1, 1) == 2


def test_partial_degree_empty_and_bad_layer():
    assert partial_degree(LayeredGraph(2, 2), 3, 0) == 0
    with pytest.raises(PreconditionViolated):
        partial_degree(INTERCHANGE_G, 0, 2)


def test_partial_degree_scaffold_brute_force():
    for k in range(4):
        v = SCAFFOLD_H.vertex(1, k)
        brute = sum(1 for w in range(4) if tuple(sorted((v, w))) in SCAFFOLD_H.edges)
        assert brute == 1
        assert partial_degree(SCAFFOLD_H, v, 0) == brute


def test_internally_related():
    assert internally_related(INTERCHANGE_G, 0, 1, 1)
    assert not internally_related(LayeredGraph(2, 3), 0, 1, 1)
    assert {(0, 5), (1, 4)} <= SCAFFOLD_H.edges
    assert internally_related(SCAFFOLD_H, 0, 1, 1)


def test_internally_related_preconditions():
    with pytest.raises(PreconditionViolated):
        internally_related(INTERCHANGE_G, 0, 3, 1)
    with pytest.raises(PreconditionViolated):
        internally_related(INTERCHANGE_G, 0, 1, 0)


def test_incidence_interchange_interchange_pair():
    assert incidence_interchange(INTERCHANGE_G, 0, 1) == INTERCHANGE_H


def test_incidence_interchange_twins_and_edge_between():
    g = LayeredGraph(2, 2, {(0, 2), (1, 2)})
    assert incidence_interchange(g, 0, 1) == g
    h = LayeredGraph(2, 2, {(0, 1), (1, 3)})
    assert incidence_interchange(h, 0, 1).edges == {(0, 1), (0, 3)}
    with pytest.raises(PreconditionViolated):
        incidence_interchange(g, 2, 2)


def test_incidence_interchange_involution():
    rng = np.random.default_rng(3)
    for _ in range(200):
        g = random_layered_graph(rng, 2, 4, rng.uniform())
        u, v = rng.choice(8, size=2, replace=False)
        assert incidence_interchange(incidence_interchange(g, u, v), u, v) == g


def test_relabel_examples():
    assert relabel(PATH_SEP, range(4)) == PATH_SEP
    assert relabel(PATH_SEP, (1, 0, 2, 3)) == PATH_ENT
    assert relabel(RELABEL_FIRST, RELABEL_PERM) == RELABEL_SECOND
    with pytest.raises(PreconditionViolated):
        relabel(PATH_SEP, (0, 0, 1, 2))


@given(layered_graphs(max_order=9), st.randoms(use_true_random=False))
@settings(max_examples=60)
def test_relabel_properties(g, rnd):
    p = list(range(g.num_vertices))
    rnd.shuffle(p)
    h = relabel(g, p)
    assert sorted(degree_vector(h)) == sorted(degree_vector(g))
    inverse = np.argsort(p)
    assert relabel(h, inverse) == g
    pm = permutation_matrix(p)
    np.testing.assert_array_equal(adjacency_matrix(g), pm @ adjacency_matrix(h) @ pm.T)
