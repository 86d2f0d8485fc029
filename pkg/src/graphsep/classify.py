"""Labelling sweeps: E/S/ES classes, entanglement generators, interchange lemmas."""

from __future__ import annotations

import enum
import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from .errors import PreconditionViolated, TooLarge
from .graph import (
    LayeredGraph,
    adjacency_matrix,
    block_view,
    is_partially_symmetric,
    partial_degree,
    relabel,
)
from .linalg import is_psd, partial_transpose
from .quantum import density
from .separability import PptVerdict, Separability, is_conclusive_dims, ppt_test

EXHAUSTIVE_LIMIT = 8


class GraphClass(str, enum.Enum):
    E = "E"
    S = "S"
    ES = "ES"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class ClassVerdict:
    graph_class: GraphClass
    num_separable: int
    num_entangled: int
    num_inconclusive: int
    total_labellings: int
    conclusive: bool
    sampled: bool = False

    @property
    def counts(self) -> tuple:
        return (self.num_separable, self.num_entangled, self.num_inconclusive)

    def summary(self) -> str:
        return f"{self.graph_class.value} {self.num_separable}/{self.num_entangled}/{self.num_inconclusive}"


def _class_from_counts(sep: int, ent: int, inc: int, sampled: bool) -> GraphClass:
    total = sep + ent + inc
    if sep and ent:
        return GraphClass.ES
    if sampled or inc:
        return GraphClass.UNKNOWN
    if ent == total:
        return GraphClass.E
    if sep == total:
        return GraphClass.S
    return GraphClass.UNKNOWN


def _labelled_verdict(adj: np.ndarray, inverse: np.ndarray, m: int, n: int, sign: int, mode: str) -> int:
    """0 separable, 1 entangled, 2 inconclusive for the relabelled graph state."""
    a = adj[np.ix_(inverse, inverse)]
    mat = np.diag(a.sum(axis=1)) + sign * a
    if not is_psd(partial_transpose(mat, m, n), mode=mode).psd:
        return 1
    return 0 if is_conclusive_dims(m, n) else 2


def _sweep(args) -> list:
    edges, m, n, sign, mode, prefix, reduce = args
    adj = adjacency_matrix(LayeredGraph(m, n, edges))
    size = m * n
    rest = [x for x in range(size) if x != prefix]
    counts = [0, 0, 0]
    cache = {}
    for tail in itertools.permutations(rest):
        p = np.array((prefix,) + tail)
        inverse = np.argsort(p)
        if reduce:
            key = adj[np.ix_(inverse, inverse)].tobytes()
            verdict = cache.get(key)
            if verdict is None:
                verdict = cache[key] = _labelled_verdict(adj, inverse, m, n, sign, mode)
        else:
            verdict = _labelled_verdict(adj, inverse, m, n, sign, mode)
        counts[verdict] += 1
    return counts


def _kind_sign(kind: str) -> int:
    return {"laplacian": -1, "signless": 1}[kind]


def classify(
    g: LayeredGraph,
    kind: str = "laplacian",
    *,
    mode: str = "auto",
    workers: int = 1,
    reduce: bool = True,
    max_exhaustive: int = EXHAUSTIVE_LIMIT,
    samples: Optional[int] = None,
    seed: int = 0,
) -> ClassVerdict:
    """Run the PPT test of ``rho(g)`` under every vertex labelling.

    Exhaustive sweeps are limited to ``max_exhaustive`` vertices.  Beyond that,
    pass ``samples`` to test random labellings instead; sampled verdicts never
    claim E or S.  With ``reduce`` each distinct relabelled graph is tested
    once (labellings in one automorphism coset share a verdict), which does
    not change the counts.  ``workers > 1`` splits the sweep by first image.
    """
    if not g.edges:
        raise PreconditionViolated("graph has no edges")
    sign = _kind_sign(kind)
    size = g.num_vertices
    if size > max_exhaustive:
        if samples is None:
            raise TooLarge(f"exhaustive sweep over {size}! labellings exceeds the {max_exhaustive}-vertex guard")
        return _classify_sampled(g, sign, mode, samples, seed)
    jobs = [(g.edges, g.m, g.n, sign, mode, first, reduce) for first in range(size)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_sweep, jobs))
    else:
        parts = [_sweep(job) for job in jobs]
    sep, ent, inc = (sum(col) for col in zip(*parts))
    cls = _class_from_counts(sep, ent, inc, False)
    return ClassVerdict(cls, sep, ent, inc, math.factorial(size), cls is not GraphClass.UNKNOWN)


def _classify_sampled(g: LayeredGraph, sign: int, mode: str, samples: int, seed: int) -> ClassVerdict:
    rng = np.random.default_rng(seed)
    adj = adjacency_matrix(g)
    counts = [0, 0, 0]
    for _ in range(samples):
        inverse = rng.permutation(g.num_vertices)
        counts[_labelled_verdict(adj, inverse, g.m, g.n, sign, mode)] += 1
    cls = _class_from_counts(*counts, True)
    return ClassVerdict(cls, *counts, samples, False, True)


@dataclass(frozen=True, eq=False)
class GeneratorCertificate:
    """Relabelling ``permutation`` turns a PPT-separable labelling into an NPT one."""

    source: LayeredGraph
    target: LayeredGraph
    permutation: tuple
    kind: str
    source_verdict: PptVerdict
    target_verdict: PptVerdict

    @property
    def source_labelling(self) -> tuple:
        return tuple(range(self.source.num_vertices))

    @property
    def target_labelling(self) -> tuple:
        return self.permutation

    def verify(self, mode: str = "auto") -> bool:
        if relabel(self.source, self.permutation) != self.target:
            return False
        before = ppt_test(density(self.source, self.kind), mode)
        after = ppt_test(density(self.target, self.kind), mode)
        return (
            before.classification is Separability.SEPARABLE
            and after.classification is Separability.ENTANGLED
            and before.classification is self.source_verdict.classification
            and after.classification is self.target_verdict.classification
        )


def candidate_permutations(size: int) -> Iterator[tuple]:
    """Non-identity permutations in a fixed order.

    Fewest moved vertices first; within that, by the sorted set of moved
    vertices; then lexicographic.  Transpositions thus come as (0 1), (0 2), ...
    """
    for moved in range(2, size + 1):
        for support in itertools.combinations(range(size), moved):
            for images in itertools.permutations(support):
                if any(a == b for a, b in zip(support, images)):
                    continue
                p = list(range(size))
                for a, b in zip(support, images):
                    p[a] = b
                yield tuple(p)


def find_generator(
    g: LayeredGraph, kind: str = "laplacian", mode: str = "auto", max_vertices: int = EXHAUSTIVE_LIMIT
) -> Optional[GeneratorCertificate]:
    """First relabelling that sends a PPT-separable ``g`` to an NPT graph.

    Returns None when ``g`` itself is not PPT-separable at conclusive
    dimensions or when no labelling of it is entangled.
    """
    if g.num_vertices > max_vertices:
        raise TooLarge(f"generator search over {g.num_vertices} vertices exceeds the guard")
    source = ppt_test(density(g, kind), mode)
    if source.classification is not Separability.SEPARABLE:
        return None
    seen = set()
    for p in candidate_permutations(g.num_vertices):
        target = relabel(g, p)
        if target.edges in seen:
            continue
        seen.add(target.edges)
        verdict = ppt_test(density(target, kind), mode)
        if verdict.classification is Separability.ENTANGLED:
            return GeneratorCertificate(g, target, tuple(p), kind, source, verdict)
    return None


class Prediction(str, enum.Enum):
    PREDICT_ASYMMETRIC = "PREDICT_ASYMMETRIC"
    PREDICT_SYMMETRIC = "PREDICT_SYMMETRIC"
    NO_PREDICTION = "NO_PREDICTION"


def interchange_asymmetry_predict(g: LayeredGraph, u: int, v: int) -> Prediction:
    """Predict whether swapping same-layer vertices ``u, v`` breaks partial symmetry.

    Asymmetric when, for some other layer ``j``, the two vertices have
    different partial degrees towards ``j``, or when some ``w`` of their layer
    (not ``u`` or ``v``) is joined to ``v(j, pos(u))`` while ``v`` misses
    ``v(j, pos(w))`` (or the same with ``u, v`` exchanged).  Symmetric when,
    towards every other layer, no two vertices of the layer are internally
    related and all partial degrees agree.
    """
    if not is_partially_symmetric(g):
        raise PreconditionViolated("interchange prediction needs a partially symmetric graph")
    if u == v:
        raise PreconditionViolated("need two distinct vertices")
    n = g.n
    i, a = divmod(u, n)
    i2, b = divmod(v, n)
    if i != i2:
        raise PreconditionViolated(f"vertices {u} and {v} lie in different layers")
    others = [j for j in range(g.m) if j != i]
    if any(partial_degree(g, u, j) != partial_degree(g, v, j) for j in others):
        return Prediction.PREDICT_ASYMMETRIC
    blocks = block_view(g).blocks
    for j in others:
        blk = blocks[i, j]
        for w in range(n):
            if w in (a, b):
                continue
            if (blk[w, a] and not blk[b, w]) or (blk[w, b] and not blk[a, w]):
                return Prediction.PREDICT_ASYMMETRIC
    for j in others:
        blk = blocks[i, j]
        related = np.triu(blk, 1).any()  # symmetric block: any off-diagonal 1 is a related pair
        degrees = blk.sum(axis=1)
        if related or not (degrees == degrees[0]).all():
            return Prediction.NO_PREDICTION
    return Prediction.PREDICT_SYMMETRIC
