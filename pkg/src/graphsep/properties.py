"""Randomised and exhaustive checks of the separability theorems.

Each property draws its cases from its own seeded generator, so the ledger
is reproducible for a given :class:`PropertyConfig`.  Graph-valued failures
are shrunk (drop edges, then layers, then positions) and reported as an
``.lgr`` snippet.
"""

from __future__ import annotations

import itertools
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional

import numpy as np

from . import graph as gc
from . import lgr
from .classify import Prediction, interchange_asymmetry_predict
from .constructions import bowtie, decompose_bowtie, m_union
from .errors import GraphSepError
from .graph import LayeredGraph
from .linalg import partial_transpose
from .quantum import KINDS, density, graph_matrix, laplacian, signless_laplacian
from .separability import decompose_mg, decompose_theorem_main, degree_criterion, ppt_test, theorem_main_check


@dataclass
class PropertyConfig:
    seed: int = 42
    trials: int = 1000
    max_order: int = 12  # largest m*n for randomised graph properties
    ppt_samples: int = 10_000  # random graphs for the degree/PPT equivalence


@dataclass
class PropertyResult:
    name: str
    passed: bool
    trials: int
    seconds: float
    detail: str = ""
    counterexample: Optional[str] = None


@dataclass
class Failure:
    detail: str
    graph: Optional[LayeredGraph] = None
    holds: Optional[Callable[[LayeredGraph], bool]] = field(default=None, repr=False)


# -- generators --------------------------------------------------------------

def _dims(rng, max_order: int, min_side: int = 1):
    pairs = [(m, n) for m in range(min_side, max_order + 1) for n in range(min_side, max_order + 1)
             if m * n <= max_order and m * n >= 2]
    return pairs[rng.integers(len(pairs))]


def random_graph(rng, m: int, n: int) -> LayeredGraph:
    return gc.random_layered_graph(rng, m, n, rng.uniform(0.1, 0.9))


def random_regular_block(rng, n: int) -> np.ndarray:
    """Nonzero symmetric 0/1 matrix (diagonal allowed) with constant row sums."""
    while True:
        upper = np.triu((rng.random((n, n)) < rng.uniform(0.2, 0.8)).astype(np.int64))
        a = upper + np.triu(upper, 1).T
        rows = a.sum(axis=1)
        if rows[0] > 0 and (rows == rows[0]).all():
            return a


def random_theorem_graph(rng, m: int, n: int) -> LayeredGraph:
    """Random graph meeting every condition of the sufficiency theorem."""
    a = random_regular_block(rng, n)
    while True:
        upper = np.triu(rng.random((m, m)) < rng.uniform(0.3, 1.0), 1)
        pattern = upper | upper.T
        if pattern.any():
            break
    blocks = np.zeros((m, m, n, n), dtype=np.int64)
    for i, j in zip(*np.nonzero(pattern)):
        blocks[i, j] = a
    return gc.from_adjacency(gc.BlockView(blocks).assemble(), m, n)


# -- shrinking ---------------------------------------------------------------

def _drop_layer(g: LayeredGraph, layer: int) -> LayeredGraph:
    n = g.n
    keep = [v for v in range(g.num_vertices) if v // n != layer]
    index = {v: x for x, v in enumerate(keep)}
    edges = {(index[u], index[v]) for u, v in g.edges if u in index and v in index}
    return LayeredGraph(g.m - 1, n, frozenset(edges))


def _drop_position(g: LayeredGraph, pos: int) -> LayeredGraph:
    n = g.n
    keep = [v for v in range(g.num_vertices) if v % n != pos]
    index = {v: (v // n) * (n - 1) + (v % n - (v % n > pos)) for v in keep}
    edges = {(index[u], index[v]) for u, v in g.edges if u in index and v in index}
    return LayeredGraph(g.m, n - 1, frozenset(edges))


def _candidates(g: LayeredGraph):
    for e in g.sorted_edges():
        yield LayeredGraph(g.m, g.n, g.edges - {e})
    if g.m > 1:
        for i in range(g.m):
            yield _drop_layer(g, i)
    if g.n > 1:
        for k in range(g.n):
            yield _drop_position(g, k)


def shrink(g: LayeredGraph, holds: Callable[[LayeredGraph], bool]) -> LayeredGraph:
    """Greedy minimisation of a graph on which ``holds`` is False."""
    def fails(h):
        try:
            return not holds(h)
        except GraphSepError:
            return False

    improved = True
    while improved:
        improved = False
        for h in _candidates(g):
            if fails(h):
                g, improved = h, True
                break
    return g


# -- properties --------------------------------------------------------------

def prop_gtpt_involution(rng, cfg: PropertyConfig):
    """GTPT is an involution, keeps the edge count and transposes every block."""
    def holds(g):
        h = gc.gtpt(g)
        return (gc.gtpt(h) == g and h.num_edges == g.num_edges
                and np.array_equal(gc.adjacency_matrix(h), partial_transpose(gc.adjacency_matrix(g), g.m, g.n)))

    for _ in range(cfg.trials):
        g = random_graph(rng, *_dims(rng, 16))
        if not holds(g):
            return cfg.trials, Failure("GTPT involution or block transpose violated", g, holds)
    return cfg.trials, None


def prop_partial_implies_degree(rng, cfg: PropertyConfig):
    """Partially symmetric graphs are degree symmetric and fixed by GTPT."""
    def holds(g):
        return not gc.is_partially_symmetric(g) or (gc.is_degree_symmetric(g) and gc.gtpt(g) == g)

    for _ in range(cfg.trials):
        g = gc.random_partially_symmetric(rng, *_dims(rng, cfg.max_order), rng.uniform(0.1, 0.9))
        if not gc.is_partially_symmetric(g):
            return cfg.trials, Failure("generator produced a non partially symmetric graph", g)
        if not holds(g):
            return cfg.trials, Failure("partially symmetric graph is not degree symmetric", g, holds)
    return cfg.trials, None


def _degree_matches_ppt(g):
    return not g.edges or degree_criterion(g) == ppt_test(density(g, "laplacian")).ppt_holds


def prop_degree_iff_ppt(rng, cfg: PropertyConfig):
    """Degree symmetry agrees with PPT of the Laplacian state."""
    count = 0
    pairs = list(itertools.combinations(range(4), 2))
    for mask in range(1 << len(pairs)):
        g = LayeredGraph(2, 2, frozenset(p for b, p in enumerate(pairs) if mask >> b & 1))
        count += 1
        if not _degree_matches_ppt(g):
            return count, Failure("degree criterion and PPT disagree (exhaustive 2x2)", g, _degree_matches_ppt)
    dims = [(2, 3), (3, 2), (2, 4), (4, 2), (3, 3), (2, 6), (6, 2), (3, 4), (4, 3)]
    for _ in range(cfg.ppt_samples):
        g = random_graph(rng, *dims[rng.integers(len(dims))])
        count += 1
        if not _degree_matches_ppt(g):
            return count, Failure("degree criterion and PPT disagree", g, _degree_matches_ppt)
    return count, None


def _transfer_holds(g):
    if not g.edges or not gc.is_degree_symmetric(g):
        return True
    h = gc.gtpt(g)
    for kind in KINDS:
        if ppt_test(density(g, kind)).ppt_holds and not ppt_test(density(h, kind)).ppt_holds:
            return False
    return True


def prop_gtpt_transfer(rng, cfg: PropertyConfig):
    """Degree symmetric: PPT-separable before GTPT stays separable after (both states)."""
    dims = [(2, 2), (2, 3), (3, 2)]
    tested = 0
    attempts = 0
    while tested < cfg.trials and attempts < 50 * cfg.trials:
        attempts += 1
        g = random_graph(rng, *dims[rng.integers(3)])
        if not g.edges or not gc.is_degree_symmetric(g):
            continue
        tested += 1
        if not _transfer_holds(g):
            return tested, Failure("separability not transferred through GTPT", g, _transfer_holds)
    return tested, None


def prop_theorem_main(rng, cfg: PropertyConfig):
    """Generated graphs meeting the sufficiency conditions decompose for both states."""
    for _ in range(cfg.trials):
        m, n = int(rng.integers(2, 5)), int(rng.integers(2, 6))
        g = random_theorem_graph(rng, m, n)
        if not theorem_main_check(g):
            return cfg.trials, Failure("generator broke the sufficiency conditions", g)
        for kind in KINDS:
            rho = density(g, kind)
            try:
                decompose_theorem_main(g, kind).check(rho)
            except GraphSepError as exc:
                return cfg.trials, Failure(f"{kind}: {exc}", g)
            if not ppt_test(rho).ppt_holds:
                return cfg.trials, Failure(f"{kind}: certified separable state fails PPT", g)
    return cfg.trials, None


def prop_union(rng, cfg: PropertyConfig):
    """m copies of any graph, one per layer, give separable states."""
    for _ in range(cfg.trials):
        n = int(rng.integers(2, 7))
        m = int(rng.integers(1, max(2, cfg.max_order // n) + 1))
        g = random_graph(rng, 1, n)
        if not g.edges:
            continue
        mg = m_union(g, m)
        if not np.array_equal(gc.adjacency_matrix(mg), np.kron(np.eye(m, dtype=np.int64), gc.adjacency_matrix(g))):
            return cfg.trials, Failure("A(mG) differs from I_m (x) A(G)", mg)
        for kind in KINDS:
            rho = density(mg, kind)
            try:
                decompose_mg(mg, kind).check(rho)
            except GraphSepError as exc:
                return cfg.trials, Failure(f"{kind}: {exc}", mg)
            if not ppt_test(rho).ppt_holds:
                return cfg.trials, Failure(f"{kind}: union state fails PPT", mg)
    return cfg.trials, None


def prop_bowtie(rng, cfg: PropertyConfig):
    """Bowtie products add A, D, L and Q exactly and decompose for both states."""
    for _ in range(cfg.trials):
        m, n = int(rng.integers(2, 4)), int(rng.integers(2, 5))
        h = random_theorem_graph(rng, m, n)
        g = random_graph(rng, 1, n)
        r = bowtie(g, h)
        mg = m_union(g, m)
        pairs = [
            (gc.adjacency_matrix, "A"), (gc.degree_matrix, "D"), (laplacian, "L"), (signless_laplacian, "Q"),
        ]
        for op, name in pairs:
            if not np.array_equal(op(r.graph), op(mg) + op(h)):
                return cfg.trials, Failure(f"{name} additivity fails", r.graph)
        for kind in KINDS:
            rho = density(r.graph, kind)
            try:
                decompose_bowtie(r, kind).check(rho)
            except GraphSepError as exc:
                return cfg.trials, Failure(f"{kind}: {exc}", r.graph)
            if not ppt_test(rho).ppt_holds:
                return cfg.trials, Failure(f"{kind}: bowtie state fails PPT", r.graph)
    return cfg.trials, None


def _prediction_sound(g):
    if not gc.is_partially_symmetric(g):
        return True
    for i in range(g.m):
        for a, b in itertools.combinations(range(g.n), 2):
            u, v = g.vertex(i, a), g.vertex(i, b)
            pred = interchange_asymmetry_predict(g, u, v)
            if pred is Prediction.NO_PREDICTION:
                continue
            sym = gc.is_partially_symmetric(gc.incidence_interchange(g, u, v))
            if sym != (pred is Prediction.PREDICT_SYMMETRIC):
                return False
    return True


def prop_interchange_prediction(rng, cfg: PropertyConfig):
    """Interchange predictions agree with the actual interchange."""
    for _ in range(cfg.trials):
        m, n = _dims(rng, cfg.max_order, min_side=2)
        g = gc.random_partially_symmetric(rng, m, n, rng.uniform(0.05, 0.9))
        if not _prediction_sound(g):
            return cfg.trials, Failure("interchange prediction contradicted", g, _prediction_sound)
    return cfg.trials, None


def _spectra_agree(g, p):
    if not g.edges:
        return True
    a = np.linalg.eigvalsh(density(g, "laplacian").matrix)
    b = np.linalg.eigvalsh(density(gc.relabel(g, p), "laplacian").matrix)
    return bool(np.abs(a - b).max() <= 1e-10)


def prop_isomorphic_spectra(rng, cfg: PropertyConfig):
    """Relabelling preserves the spectrum of the Laplacian state, not its separability."""
    g1 = LayeredGraph(2, 2, frozenset({(0, 1), (1, 3), (2, 3)}))
    g2 = gc.relabel(g1, (1, 0, 2, 3))
    if not _spectra_agree(g1, (1, 0, 2, 3)):
        return 0, Failure("path graph relabelling changed the spectrum", g1)
    if ppt_test(density(g1)).ppt_holds == ppt_test(density(g2)).ppt_holds:
        return 0, Failure("path graph relabelling did not change the PPT verdict", g1)
    for _ in range(cfg.trials):
        g = random_graph(rng, *_dims(rng, cfg.max_order))
        p = rng.permutation(g.num_vertices)
        if not _spectra_agree(g, p):
            return cfg.trials, Failure("isomorphic graphs with different spectra", g)
    return cfg.trials, None


PROPERTIES = {
    "gtpt_involution": prop_gtpt_involution,
    "partial_implies_degree_symmetric": prop_partial_implies_degree,
    "degree_criterion_iff_ppt": prop_degree_iff_ppt,
    "gtpt_separability_transfer": prop_gtpt_transfer,
    "theorem_main_decomposition": prop_theorem_main,
    "union_separable": prop_union,
    "bowtie_additivity_and_decomposition": prop_bowtie,
    "interchange_prediction_sound": prop_interchange_prediction,
    "isomorphic_spectra": prop_isomorphic_spectra,
}


def run_property(name: str, cfg: PropertyConfig) -> PropertyResult:
    offset = list(PROPERTIES).index(name)
    rng = np.random.default_rng([cfg.seed, offset])
    start = time.perf_counter()
    trials, failure = PROPERTIES[name](rng, cfg)
    seconds = time.perf_counter() - start
    if failure is None:
        return PropertyResult(name, True, trials, seconds)
    example = None
    if failure.graph is not None:
        g = shrink(failure.graph, failure.holds) if failure.holds else failure.graph
        example = lgr.dumps(g)
    return PropertyResult(name, False, trials, seconds, failure.detail, example)


def run_all(cfg: Optional[PropertyConfig] = None, only=None, workers: int = 1) -> list:
    """Run the property list and return one :class:`PropertyResult` each."""
    cfg = cfg or PropertyConfig()
    names = list(only) if only else list(PROPERTIES)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda name: run_property(name, cfg), names))
    return [run_property(name, cfg) for name in names]


def ledger(results) -> dict:
    return {
        "passed": all(r.passed for r in results),
        "properties": [asdict(r) for r in results],
    }
