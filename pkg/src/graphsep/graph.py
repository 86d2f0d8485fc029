"""Layered simple graphs and the combinatorial operations on them.

A :class:`LayeredGraph` on ``m * n`` vertices is split into ``m`` layers of
``n`` vertices each.  Vertex ``v`` sits in layer ``v // n`` at position
``v % n`` (everything is 0-based).  Layers index party A, positions index
party B, so the adjacency matrix is an ``m x m`` array of ``n x n`` blocks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidGraph, PreconditionViolated

Edge = tuple[int, int]


def _normalize_edge(u, v) -> Edge:
    u, v = int(u), int(v)
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class LayeredGraph:
    """Simple graph with a fixed ``(m, n)`` layering of its ``m * n`` vertices.

    ``edges`` is normalised to a frozenset of ``(u, v)`` tuples with ``u < v``.
    Loops and out-of-range endpoints raise :class:`InvalidGraph`.
    """

    m: int
    n: int
    edges: frozenset = frozenset()

    def __post_init__(self):
        if int(self.m) < 1 or int(self.n) < 1:
            raise InvalidGraph(f"layer dimensions must be positive, got {self.m}x{self.n}")
        object.__setattr__(self, "m", int(self.m))
        object.__setattr__(self, "n", int(self.n))
        size = self.m * self.n
        normalized = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise InvalidGraph(f"loop at vertex {u}")
            edge = _normalize_edge(u, v)
            if edge[0] < 0 or edge[1] >= size:
                raise InvalidGraph(f"edge {edge} outside vertex range 0..{size - 1}")
            normalized.add(edge)
        object.__setattr__(self, "edges", frozenset(normalized))

    @property
    def num_vertices(self) -> int:
        return self.m * self.n

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def layer(self, v: int) -> int:
        return v // self.n

    def position(self, v: int) -> int:
        return v % self.n

    def vertex(self, i: int, k: int) -> int:
        """Index of the vertex at position ``k`` of layer ``i``."""
        return i * self.n + k

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def neighbours(self, v: int) -> set[int]:
        return {b if a == v else a for a, b in self.edges if v in (a, b)}

    def with_layering(self, m: int, n: int) -> "LayeredGraph":
        """Same edge set under a different bipartition of the same vertex count."""
        if m * n != self.num_vertices:
            raise InvalidGraph(f"{m}x{n} layering does not cover {self.num_vertices} vertices")
        return LayeredGraph(m, n, self.edges)

    def __repr__(self):
        return f"LayeredGraph(m={self.m}, n={self.n}, edges={self.sorted_edges()})"


@dataclass(frozen=True)
class BlockView:
    """The adjacency matrix cut into an ``m x m`` grid of ``n x n`` blocks."""

    blocks: np.ndarray  # shape (m, m, n, n)

    @property
    def m(self) -> int:
        return self.blocks.shape[0]

    @property
    def n(self) -> int:
        return self.blocks.shape[2]

    def block(self, i: int, j: int) -> np.ndarray:
        return self.blocks[i, j]

    def diagonal(self, i: int) -> np.ndarray:
        return self.blocks[i, i]

    def assemble(self) -> np.ndarray:
        m, n = self.m, self.n
        return self.blocks.transpose(0, 2, 1, 3).reshape(m * n, m * n)


def adjacency_matrix(g: LayeredGraph) -> np.ndarray:
    """Binary symmetric integer adjacency matrix of order ``m * n``."""
    a = np.zeros((g.num_vertices, g.num_vertices), dtype=np.int64)
    for u, v in g.edges:
        a[u, v] = a[v, u] = 1
    return a


def from_adjacency(a: np.ndarray, m: int, n: int) -> LayeredGraph:
    a = np.asarray(a)
    if a.shape != (m * n, m * n):
        raise InvalidGraph(f"adjacency of shape {a.shape} does not match layering {m}x{n}")
    if not np.array_equal(a, a.T) or np.any(np.diag(a) != 0) or not np.isin(a, (0, 1)).all():
        raise InvalidGraph("adjacency must be symmetric 0/1 with zero diagonal")
    us, vs = np.nonzero(np.triu(a, 1))
    return LayeredGraph(m, n, frozenset(zip(us.tolist(), vs.tolist())))


def degree_vector(g: LayeredGraph) -> np.ndarray:
    d = np.zeros(g.num_vertices, dtype=np.int64)
    for u, v in g.edges:
        d[u] += 1
        d[v] += 1
    return d


def degree_matrix(g: LayeredGraph) -> np.ndarray:
    return np.diag(degree_vector(g))


def block_view(g: LayeredGraph) -> BlockView:
    m, n = g.m, g.n
    blocks = adjacency_matrix(g).reshape(m, n, m, n).transpose(0, 2, 1, 3)
    blocks = np.ascontiguousarray(blocks)
    blocks.setflags(write=False)
    return BlockView(blocks)


def gtpt(g: LayeredGraph) -> LayeredGraph:
    """Graph partial transpose: swap the positions of every cross-layer edge.

    ``{v(i,k), v(j,l)}`` with ``i != j`` becomes ``{v(i,l), v(j,k)}``; edges
    inside a layer are kept.  The adjacency matrix of the result is the
    blockwise transpose of the original.
    """
    n = g.n
    out = set()
    for u, v in g.edges:
        i, k = divmod(u, n)
        j, l = divmod(v, n)
        if i != j and k != l:
            out.add(_normalize_edge(i * n + l, j * n + k))
        else:
            out.add((u, v))
    return LayeredGraph(g.m, g.n, frozenset(out))


def is_degree_symmetric(g: LayeredGraph) -> bool:
    return bool(np.array_equal(degree_vector(g), degree_vector(gtpt(g))))


def is_partially_symmetric(g: LayeredGraph) -> bool:
    """True iff every off-diagonal block of the adjacency matrix is symmetric."""
    blocks = block_view(g).blocks
    return bool(np.array_equal(blocks, blocks.transpose(0, 1, 3, 2)))


def _check_layer(g: LayeredGraph, j: int):
    if not 0 <= j < g.m:
        raise PreconditionViolated(f"layer index {j} out of range 0..{g.m - 1}")


def _check_vertex(g: LayeredGraph, v: int):
    if not 0 <= v < g.num_vertices:
        raise PreconditionViolated(f"vertex {v} out of range 0..{g.num_vertices - 1}")


def partial_degree(g: LayeredGraph, v: int, j: int) -> int:
    """Number of edges joining ``v`` to vertices of layer ``j``."""
    _check_vertex(g, v)
    _check_layer(g, j)
    return sum(1 for w in g.neighbours(v) if w // g.n == j)


def internally_related(g: LayeredGraph, u: int, w: int, j: int) -> bool:
    """Whether same-layer vertices ``u = v(i,k)`` and ``w = v(i,l)`` are joined
    crosswise to layer ``j``, i.e. both ``{v(i,k), v(j,l)}`` and
    ``{v(i,l), v(j,k)}`` are edges."""
    _check_vertex(g, u)
    _check_vertex(g, w)
    _check_layer(g, j)
    i, k = divmod(u, g.n)
    i2, l = divmod(w, g.n)
    if i != i2:
        raise PreconditionViolated(f"vertices {u} and {w} lie in different layers")
    if i == j:
        raise PreconditionViolated("internal relatedness is defined across distinct layers only")
    a = _normalize_edge(u, g.vertex(j, l))
    b = _normalize_edge(w, g.vertex(j, k))
    return a in g.edges and b in g.edges


def relabel(g: LayeredGraph, p: Sequence[int]) -> LayeredGraph:
    """Move every edge ``{u, v}`` to ``{p[u], p[v]}``, keeping the layering."""
    p = [int(x) for x in p]
    if sorted(p) != list(range(g.num_vertices)):
        raise PreconditionViolated("relabelling must be a permutation of all vertex indices")
    return LayeredGraph(g.m, g.n, frozenset(_normalize_edge(p[u], p[v]) for u, v in g.edges))


def transposition(size: int, u: int, v: int) -> list[int]:
    p = list(range(size))
    p[u], p[v] = v, u
    return p


def incidence_interchange(g: LayeredGraph, u: int, v: int) -> LayeredGraph:
    """Swap the incidence sets of ``u`` and ``v``; an edge ``{u, v}`` stays put."""
    _check_vertex(g, u)
    _check_vertex(g, v)
    if u == v:
        raise PreconditionViolated("incidence interchange needs two distinct vertices")
    return relabel(g, transposition(g.num_vertices, u, v))


def permutation_matrix(p: Sequence[int]) -> np.ndarray:
    """``P`` with ``P[u, p[u]] = 1`` so that ``A(g) = P @ A(relabel(g, p)) @ P.T``."""
    size = len(p)
    out = np.zeros((size, size), dtype=np.int64)
    out[np.arange(size), list(p)] = 1
    return out


def random_layered_graph(rng: np.random.Generator, m: int, n: int, density: float = 0.5) -> LayeredGraph:
    size = m * n
    iu, ju = np.triu_indices(size, 1)
    keep = rng.random(iu.size) < density
    return LayeredGraph(m, n, frozenset(zip(iu[keep].tolist(), ju[keep].tolist())))


def random_partially_symmetric(rng: np.random.Generator, m: int, n: int, density: float = 0.5) -> LayeredGraph:
    """Random graph whose off-diagonal blocks are symmetric 0/1 matrices.

    Each off-diagonal block samples its upper triangle (diagonal included) and
    mirrors it; diagonal blocks are arbitrary symmetric 0/1 with zero diagonal.
    """
    blocks = np.zeros((m, m, n, n), dtype=np.int64)
    for i in range(m):
        inner = np.triu((rng.random((n, n)) < density).astype(np.int64), 1)
        blocks[i, i] = inner + inner.T
        for j in range(i + 1, m):
            upper = np.triu((rng.random((n, n)) < density).astype(np.int64))
            sym = upper + np.triu(upper, 1).T
            blocks[i, j] = sym
            blocks[j, i] = sym.T
    return from_adjacency(BlockView(blocks).assemble(), m, n)


def edges_from_pairs(pairs: Iterable[Iterable[int]]) -> frozenset:
    return frozenset(_normalize_edge(u, v) for u, v in pairs)
