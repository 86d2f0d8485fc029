import numpy as np
import pytest

from graphsep.constructions import bowtie, decompose_bowtie, family, find_decomposition, m_union, split_bowtie
from graphsep.errors import PreconditionViolated, ScaffoldNotTheoremMain, VertexCountMismatch
from graphsep.graph import LayeredGraph, adjacency_matrix, degree_matrix
from graphsep.linalg import kron
from graphsep.quantum import density, laplacian, signless_laplacian
from graphsep.separability import Separability, ppt_test

from conftest import SCAFFOLD_H, PATH_SEP, PATH_ENT, golden


@pytest.mark.parametrize(
    "kind, size, edges",
    [
        ("path", 4, {(0, 1), (1, 2), (2, 3)}),
        ("cycle", 4, {(0, 1), (1, 2), (2, 3), (0, 3)}),
        ("star", 4, {(0, 1), (0, 2), (0, 3)}),
        ("complete", 3, {(0, 1), (0, 2), (1, 2)}),
    ],
)
def test_families(kind, size, edges):
    g = family(kind, size)
    assert (g.m, g.n) == (1, size)
    assert set(g.edges) == edges


def test_family_validation():
    with pytest.raises(ValueError):
        family("wheel", 4)
    with pytest.raises(PreconditionViolated):
        family("cycle", 2)
    with pytest.raises(PreconditionViolated):
        family("star", 3, hub=3)


def test_m_union_layout():
    g = m_union(family("path", 3), 2)
    assert (g.m, g.n) == (2, 3)
    assert set(g.edges) == {(0, 1), (1, 2), (3, 4), (4, 5)}


def test_bowtie_star_golden():
    star = golden("star4_hub1.lgr")
    assert star == family("star", 4, hub=1)
    result = bowtie(star, SCAFFOLD_H)
    assert result.graph == golden("bowtie_star_h.lgr")
    assert result.graph.num_edges == 17


def test_bowtie_star_additivity_is_exact():
    star, h = family("star", 4, hub=1), SCAFFOLD_H
    prod = bowtie(star, h).graph
    eye = np.eye(h.m, dtype=np.int64)
    mg = m_union(star, h.m)
    assert np.array_equal(degree_matrix(prod), kron(eye, degree_matrix(star)) + degree_matrix(h))
    assert np.array_equal(adjacency_matrix(prod), kron(eye, adjacency_matrix(star)) + adjacency_matrix(h))
    assert np.array_equal(laplacian(prod), laplacian(h) + laplacian(mg))
    assert np.array_equal(signless_laplacian(prod), signless_laplacian(h) + signless_laplacian(mg))
    assert laplacian(prod).dtype.kind == "i"


def test_bowtie_star_decomposition():
    result = bowtie(family("star", 4, hub=1), SCAFFOLD_H)
    for kind in ("laplacian", "signless"):
        dec = decompose_bowtie(result, kind)
        dec.check(density(result.graph, kind))
        assert dec.max_error(density(result.graph, kind)) <= 1e-9
        assert dec.weight_sum() == 1


def test_bowtie_vertex_mismatch():
    with pytest.raises(VertexCountMismatch):
        bowtie(family("path", 3), SCAFFOLD_H)


def test_bowtie_rejects_bad_scaffold():
    with pytest.raises(ScaffoldNotTheoremMain) as info:
        bowtie(family("path", 2), PATH_ENT)
    assert info.value.failed == "partially_symmetric"


def test_bowtie_permissive():
    scaffold = LayeredGraph(2, 2, {(0, 3)})
    result = bowtie(family("path", 2), scaffold, strict=False)
    assert set(result.graph.edges) == {(0, 1), (2, 3), (0, 3)}
    with pytest.raises(PreconditionViolated):
        decompose_bowtie(result)
    with pytest.raises(ScaffoldNotTheoremMain):
        bowtie(family("path", 2), PATH_SEP, strict=False)


def test_split_bowtie_round_trip():
    result = bowtie(family("cycle", 4), SCAFFOLD_H)
    parts = split_bowtie(result.graph)
    assert parts is not None
    assert parts.inner == family("cycle", 4)
    assert parts.scaffold == SCAFFOLD_H


def test_find_decomposition_routes():
    assert find_decomposition(SCAFFOLD_H).source == "theorem_main"
    assert find_decomposition(m_union(family("path", 3), 2)).source == "union"
    assert find_decomposition(golden("bowtie_star_h.lgr")).source == "bowtie"
    assert find_decomposition(PATH_ENT) is None


def test_products_are_separable():
    rng = np.random.default_rng(3)
    from graphsep.properties import random_theorem_graph

    for _ in range(50):
        h = random_theorem_graph(rng, 2, 3)
        g = LayeredGraph(1, 3, {e for e in [(0, 1), (0, 2), (1, 2)] if rng.uniform() < 0.5})
        result = bowtie(g, h)
        if result.graph.edges:
            assert ppt_test(density(result.graph)).classification is Separability.SEPARABLE
            decompose_bowtie(result).check(density(result.graph))
