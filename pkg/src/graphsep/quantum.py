"""Density matrices built from graphs and from the Werner family."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Optional

import numpy as np

from .errors import EmptyGraphError, PreconditionViolated
from .graph import LayeredGraph, adjacency_matrix, degree_matrix
from .linalg import is_psd

TRACE_TOL = 1e-12
KINDS = ("laplacian", "signless")


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Unit-trace PSD matrix on an ``m x n`` bipartite system.

    When the state is rational, ``numerator / denominator`` reproduces
    ``matrix`` exactly and the PPT test can run on the integer numerator.
    """

    matrix: np.ndarray
    m: int
    n: int
    numerator: Optional[np.ndarray] = field(default=None)
    denominator: Optional[int] = field(default=None)

    @classmethod
    def from_integer(cls, numerator: np.ndarray, m: int, n: int) -> "DensityMatrix":
        numerator = np.asarray(numerator, dtype=np.int64)
        denominator = int(np.trace(numerator))
        if denominator <= 0:
            raise EmptyGraphError("matrix has non-positive trace, cannot normalise to a state")
        return cls(numerator / denominator, m, n, numerator, denominator)

    @property
    def order(self) -> int:
        return self.m * self.n

    @property
    def exact(self) -> bool:
        return self.numerator is not None

    def check(self, tol: float = TRACE_TOL):
        """Raise ``PreconditionViolated`` unless symmetric, unit trace and PSD."""
        a = self.matrix
        if a.shape != (self.order, self.order):
            raise PreconditionViolated(f"matrix shape {a.shape} does not match {self.m}x{self.n}")
        if not np.allclose(a, a.T, rtol=0, atol=tol):
            raise PreconditionViolated("density matrix is not symmetric")
        if abs(np.trace(a) - 1.0) > tol:
            raise PreconditionViolated(f"trace {np.trace(a)!r} differs from 1")
        target = self.numerator if self.exact else a
        if not is_psd(target).psd:
            raise PreconditionViolated("density matrix is not positive semidefinite")
        return self


def laplacian(g: LayeredGraph) -> np.ndarray:
    return degree_matrix(g) - adjacency_matrix(g)


def signless_laplacian(g: LayeredGraph) -> np.ndarray:
    return degree_matrix(g) + adjacency_matrix(g)


def graph_matrix(g: LayeredGraph, kind: str = "laplacian") -> np.ndarray:
    if kind == "laplacian":
        return laplacian(g)
    if kind == "signless":
        return signless_laplacian(g)
    raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")


def _require_edges(g: LayeredGraph):
    if not g.edges:
        raise EmptyGraphError("graph has no edges; its Laplacian has zero trace")


def density(g: LayeredGraph, kind: str = "laplacian") -> DensityMatrix:
    _require_edges(g)
    return DensityMatrix.from_integer(graph_matrix(g, kind), g.m, g.n)


def rho_l(g: LayeredGraph) -> DensityMatrix:
    """``L(G) / tr L(G)`` with ``L = D - A``."""
    return density(g, "laplacian")


def rho_q(g: LayeredGraph) -> DensityMatrix:
    """``Q(G) / tr Q(G)`` with ``Q = D + A``."""
    return density(g, "signless")


def is_pure(g: LayeredGraph) -> bool:
    _require_edges(g)
    return g.num_edges == 1


def matrix_rank(rho: DensityMatrix, tol: float = 1e-9) -> int:
    return int(np.linalg.matrix_rank(rho.matrix, tol=tol))


@dataclass(frozen=True)
class WernerSpec:
    d: int
    p_sym: float = 0

    def __post_init__(self):
        if int(self.d) < 2:
            raise PreconditionViolated(f"Werner dimension must be at least 2, got {self.d}")
        if not 0 <= self.p_sym <= 1:
            raise PreconditionViolated(f"p_sym must lie in [0, 1], got {self.p_sym}")


def swap_operator(d: int) -> np.ndarray:
    """``sum_ij |i><j| (x) |j><i|``, the flip of two ``d``-level systems."""
    p = np.zeros((d * d, d * d), dtype=np.int64)
    for i in range(d):
        for j in range(d):
            p[i * d + j, j * d + i] = 1
    return p


def werner_density(spec: WernerSpec) -> DensityMatrix:
    d = spec.d
    eye = np.eye(d * d, dtype=np.int64)
    swap = swap_operator(d)
    sym_part, anti_part = eye + swap, eye - swap  # twice the projectors
    p = spec.p_sym
    if isinstance(p, (int, Fraction)):
        # weights on (I + P) and (I - P): p/(d^2+d) and (1-p)/(d^2-d)
        ws = Fraction(p) / (d * d + d)
        wa = (1 - Fraction(p)) / (d * d - d)
        den = lcm(ws.denominator, wa.denominator)
        num = sym_part * int(ws * den) + anti_part * int(wa * den)
        return DensityMatrix(num / den, d, d, num, den)
    mat = p * sym_part / (d * d + d) + (1 - p) * anti_part / (d * d - d)
    return DensityMatrix(mat, d, d)


def werner_graph(d: int) -> LayeredGraph:
    """Graph whose Laplacian state is the antisymmetric Werner state ``rho(d, 0)``."""
    if d < 2:
        raise PreconditionViolated(f"Werner dimension must be at least 2, got {d}")
    edges = frozenset((a * d + b, b * d + a) for a in range(d) for b in range(a + 1, d))
    return LayeredGraph(d, d, edges)
