import itertools
from fractions import Fraction

import numpy as np
import pytest

from graphsep.errors import EmptyGraphError, NotAUnionGraph, PreconditionViolated
from graphsep.graph import LayeredGraph, incidence_interchange, is_partially_symmetric, random_layered_graph
from graphsep.linalg import is_psd, partial_transpose
from graphsep.quantum import WernerSpec, density, rho_l, rho_q, werner_density, werner_graph
from graphsep.separability import (
    Separability,
    decompose_mg,
    decompose_theorem_main,
    degree_criterion,
    gtpt_separability_transfer,
    is_conclusive_dims,
    ppt_test,
    theorem_main_check,
    theorem_main_factors,
)
from graphsep.constructions import family, m_union

from conftest import DEG_SYM_ONLY, SCAFFOLD_H, PATH_SEP, PATH_ENT, INTERCHANGE_G, STAR4


def all_graphs(m, n):
    pairs = list(itertools.combinations(range(m * n), 2))
    for mask in range(1, 1 << len(pairs)):
        yield LayeredGraph(m, n, {p for b, p in enumerate(pairs) if mask >> b & 1})


def test_conclusive_dims():
    assert is_conclusive_dims(2, 2) and is_conclusive_dims(2, 3) and is_conclusive_dims(3, 2)
    assert not is_conclusive_dims(3, 3) and not is_conclusive_dims(2, 4) and not is_conclusive_dims(1, 4)


def test_degree_criterion_matches_ppt_exhaustively_2x2():
    count = 0
    for g in all_graphs(2, 2):
        ppt = ppt_test(rho_l(g)).ppt_holds
        # independent oracle: smallest eigenvalue of the partially transposed Laplacian
        lap = np.diag(np.bincount(np.array(sorted(g.edges)).ravel(), minlength=4)).astype(float)
        for u, v in g.edges:
            lap[u, v] = lap[v, u] = -1
        oracle = np.linalg.eigvalsh(partial_transpose(lap, 2, 2))[0] >= -1e-9
        assert ppt == oracle == degree_criterion(g)
        count += 1
    assert count == 63


def test_degree_criterion_matches_ppt_random():
    rng = np.random.default_rng(11)
    for m, n in [(2, 3), (3, 2), (2, 4), (3, 3), (3, 4), (2, 6)]:
        for _ in range(150):
            g = random_layered_graph(rng, m, n, rng.uniform(0.1, 0.9))
            if g.edges:
                assert degree_criterion(g) == ppt_test(rho_l(g)).ppt_holds


def test_degree_criterion_empty_graph():
    with pytest.raises(EmptyGraphError):
        degree_criterion(LayeredGraph(2, 2, set()))


def test_path_pair_verdicts():
    sep = ppt_test(rho_l(PATH_SEP))
    assert sep.ppt_holds and sep.conclusive and sep.classification is Separability.SEPARABLE
    ent = ppt_test(rho_l(PATH_ENT))
    assert not ent.ppt_holds and ent.classification is Separability.ENTANGLED
    assert ent.min_eigenvalue < 0
    rho = partial_transpose(rho_l(PATH_ENT).matrix, 2, 2)
    w = ent.witness_vector
    assert w @ rho @ w < 0


def test_star_four_vertex_entangled():
    assert ppt_test(rho_l(STAR4)).classification is Separability.ENTANGLED


def test_inconclusive_outside_small_dims():
    v = ppt_test(rho_l(DEG_SYM_ONLY))
    assert v.ppt_holds and not v.conclusive
    assert v.classification is Separability.PPT_INCONCLUSIVE


def test_werner_states_are_npt():
    for d in (2, 3, 4):
        assert ppt_test(rho_l(werner_graph(d))).classification is Separability.ENTANGLED
        assert ppt_test(werner_density(WernerSpec(d, 0))).classification is Separability.ENTANGLED


def test_werner_float_state_float_path():
    v = ppt_test(werner_density(WernerSpec(2, 0.9)), mode="float")
    assert v.ppt_holds and v.classification is Separability.SEPARABLE
    with pytest.raises(PreconditionViolated):
        ppt_test(werner_density(WernerSpec(2, 0.9)), mode="exact")


def test_exact_and_float_modes_agree():
    rng = np.random.default_rng(12)
    for _ in range(300):
        g = random_layered_graph(rng, 2, 3, rng.uniform())
        if not g.edges:
            continue
        for kind in ("laplacian", "signless"):
            rho = density(g, kind)
            assert ppt_test(rho, "exact").ppt_holds == ppt_test(rho, "float").ppt_holds


def test_theorem_check_scaffold_h():
    check = theorem_main_check(SCAFFOLD_H)
    assert check and check.failed is None
    np.testing.assert_array_equal(check.common_block, [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])


@pytest.mark.parametrize(
    "graph, failed",
    [
        (PATH_ENT, "partially_symmetric"),
        (LayeredGraph(2, 2, {(0, 1), (0, 2), (1, 3)}), "no_intra_layer_edges"),
        (LayeredGraph(3, 2, {(0, 2), (1, 3), (2, 5), (3, 4)}), "common_block"),
        (LayeredGraph(2, 2, {(0, 2)}), "constant_layer_degree"),
    ],
)
def test_theorem_check_names_failed_condition(graph, failed):
    check = theorem_main_check(graph)
    assert not check
    assert check.failed == failed


def test_theorem_decomposition_scaffold_h():
    for kind in ("laplacian", "signless"):
        dec = decompose_theorem_main(SCAFFOLD_H, kind)
        dec.check(density(SCAFFOLD_H, kind))
        assert len(dec.terms) == 4
        assert dec.weight_sum() == 1
        assert all(t.weight == Fraction(1, 4) for t in dec.terms)
        assert dec.max_error(density(SCAFFOLD_H, kind)) <= 1e-9
        bs, _ = theorem_main_factors(SCAFFOLD_H, kind)
        assert all(is_psd(b).psd for b in bs)
        assert ppt_test(density(SCAFFOLD_H, kind)).ppt_holds


def test_theorem_decomposition_precondition():
    with pytest.raises(PreconditionViolated) as info:
        decompose_theorem_main(PATH_ENT)
    assert info.value.failed == "partially_symmetric"


def test_theorem_decomposition_random():
    from graphsep.properties import random_theorem_graph

    rng = np.random.default_rng(13)
    done = 0
    while done < 100:
        g = random_theorem_graph(rng, int(rng.integers(2, 4)), int(rng.integers(2, 5)))
        if not g.edges:
            continue
        for kind in ("laplacian", "signless"):
            decompose_theorem_main(g, kind).check(density(g, kind))
        done += 1


def test_union_decomposition():
    g = m_union(family("cycle", 4), 3)
    for kind in ("laplacian", "signless"):
        dec = decompose_mg(g, kind)
        dec.check(density(g, kind))
        assert [t.weight for t in dec.terms] == [Fraction(1, 3)] * 3
    assert ppt_test(rho_l(g)).ppt_holds


def test_union_rejects_other_graphs():
    with pytest.raises(NotAUnionGraph):
        decompose_mg(PATH_SEP)
    with pytest.raises(NotAUnionGraph):
        decompose_mg(LayeredGraph(2, 2, {(0, 1)}))


def test_gtpt_transfer_interchange_pair():
    report = gtpt_separability_transfer(INTERCHANGE_G)
    assert report.degree_symmetric
    assert report.rho_l.ppt_holds and report.rho_l_gtpt.ppt_holds
    assert report.forward_transfer_holds()


def test_gtpt_transfer_random():
    rng = np.random.default_rng(14)
    for _ in range(200):
        g = random_layered_graph(rng, 2, 3, rng.uniform())
        if g.edges:
            assert gtpt_separability_transfer(g).forward_transfer_holds()


def test_interchange_pair_interchange_breaks_separability():
    assert is_partially_symmetric(INTERCHANGE_G)
    h = incidence_interchange(INTERCHANGE_G, 0, 1)
    assert not is_partially_symmetric(h)
    assert ppt_test(rho_l(INTERCHANGE_G)).classification is Separability.SEPARABLE
    assert ppt_test(rho_l(h)).classification is Separability.ENTANGLED


def test_rho_q_path_pair():
    # signless states of the same pair
    assert ppt_test(rho_q(PATH_SEP)).ppt_holds
