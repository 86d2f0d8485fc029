"""Graph families, the layered union ``mG`` and the bowtie product ``G ⋈ H``."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .errors import (
    EmptyGraphError,
    PreconditionViolated,
    ScaffoldNotTheoremMain,
    VertexCountMismatch,
)
from .graph import LayeredGraph, block_view, from_adjacency
from .quantum import graph_matrix
from .separability import (
    SeparableDecomposition,
    decompose_mg,
    decompose_theorem_main,
    theorem_main_check,
    union_copy,
)

FAMILIES = ("path", "star", "complete", "cycle")


def family(kind: str, size: int, hub: int = 0) -> LayeredGraph:
    """Standard graph on ``size`` vertices as a single-layer ``LayeredGraph``."""
    if kind not in FAMILIES:
        raise ValueError(f"unknown family {kind!r}; expected one of {FAMILIES}")
    minimum = 3 if kind == "cycle" else 2
    if size < minimum:
        raise PreconditionViolated(f"{kind} needs at least {minimum} vertices, got {size}")
    if kind == "path":
        edges = {(i, i + 1) for i in range(size - 1)}
    elif kind == "cycle":
        edges = {(i, (i + 1) % size) for i in range(size)}
    elif kind == "complete":
        edges = {(i, j) for i in range(size) for j in range(i + 1, size)}
    else:
        if not 0 <= hub < size:
            raise PreconditionViolated(f"hub {hub} outside 0..{size - 1}")
        edges = {(hub, v) for v in range(size) if v != hub}
    return LayeredGraph(1, size, frozenset(edges))


def m_union(g: LayeredGraph, m: int) -> LayeredGraph:
    """``m`` disjoint copies of ``g``, copy ``i`` occupying layer ``i``."""
    if m < 1:
        raise PreconditionViolated(f"need at least one copy, got m={m}")
    n = g.num_vertices
    edges = {(i * n + u, i * n + v) for i in range(m) for u, v in g.edges}
    return LayeredGraph(m, n, frozenset(edges))


@dataclass(frozen=True)
class BowtieResult:
    graph: LayeredGraph
    inner: LayeredGraph  # the graph placed on every layer
    scaffold: LayeredGraph
    strict: bool = True  # scaffold met the sufficiency conditions


def bowtie(g: LayeredGraph, h: LayeredGraph, strict: bool = True) -> BowtieResult:
    """Place a copy of ``g`` inside every layer of the scaffold ``h``.

    With ``strict`` the scaffold must pass :func:`theorem_main_check`;
    otherwise only empty diagonal blocks are required and no separability
    claim is attached to the result.
    """
    if g.num_vertices != h.n:
        raise VertexCountMismatch(f"inner graph has {g.num_vertices} vertices, layers have {h.n}")
    if strict:
        check = theorem_main_check(h)
        if not check:
            raise ScaffoldNotTheoremMain(f"scaffold fails condition {check.failed}", failed=check.failed)
    else:
        blocks = block_view(h).blocks
        if any(blocks[i, i].any() for i in range(h.m)):
            raise ScaffoldNotTheoremMain("scaffold has edges inside a layer", failed="no_intra_layer_edges")
    graph = LayeredGraph(h.m, h.n, h.edges | m_union(g, h.m).edges)
    return BowtieResult(graph, g, h, strict)


def decompose_bowtie(r: BowtieResult, kind: str = "laplacian") -> SeparableDecomposition:
    """Mix the scaffold and union decompositions by their trace shares."""
    if not r.strict:
        raise PreconditionViolated("bowtie built in permissive mode carries no separability certificate")
    h, m = r.scaffold, r.scaffold.m
    union = m_union(r.inner, m)
    if not r.graph.edges:
        raise EmptyGraphError("product graph has no edges")
    if not union.edges:
        return decompose_theorem_main(h, kind)
    if not h.edges:
        return decompose_mg(union, kind)
    total = int(np.trace(graph_matrix(r.graph, kind)))
    share_h = Fraction(int(np.trace(graph_matrix(h, kind))), total)
    share_u = Fraction(int(np.trace(graph_matrix(union, kind))), total)
    terms = decompose_theorem_main(h, kind).scaled(share_h) + decompose_mg(union, kind).scaled(share_u)
    return SeparableDecomposition(h.m, h.n, tuple(terms), "bowtie")


def split_bowtie(g: LayeredGraph) -> Optional[BowtieResult]:
    """Recover ``(inner, scaffold)`` when ``g`` is a strict bowtie product."""
    copy = union_copy(LayeredGraph(g.m, g.n, frozenset(e for e in g.edges if e[0] // g.n == e[1] // g.n)))
    if copy is None:
        return None
    inner = from_adjacency(copy, 1, g.n)
    scaffold = LayeredGraph(g.m, g.n, frozenset(e for e in g.edges if e[0] // g.n != e[1] // g.n))
    if not theorem_main_check(scaffold):
        return None
    return BowtieResult(g, inner, scaffold, True)


def find_decomposition(g: LayeredGraph, kind: str = "laplacian") -> Optional[SeparableDecomposition]:
    """A constructive separability witness for ``g``, or None if no known route applies.

    Tries the sufficiency theorem, then the layered union, then a bowtie split.
    """
    if not g.edges:
        return None
    if theorem_main_check(g):
        return decompose_theorem_main(g, kind)
    if union_copy(g) is not None:
        return decompose_mg(g, kind)
    parts = split_bowtie(g)
    if parts is not None:
        return decompose_bowtie(parts, kind)
    return None
