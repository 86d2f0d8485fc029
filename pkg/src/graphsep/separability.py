"""Separability tests and constructive separable decompositions.

The PPT test is the only generic criterion here; everything that upgrades a
PPT state to certified separable comes with an explicit decomposition
``rho = sum_i w_i A_i (x) B_i`` that can be re-multiplied and compared.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .errors import EmptyGraphError, NotAUnionGraph, PreconditionViolated, PsdCertificateFailure
from .graph import LayeredGraph, block_view, degree_vector, gtpt, is_degree_symmetric, is_partially_symmetric
from .linalg import RECON_TOL, eig_sym, is_psd, kron, partial_transpose
from .quantum import DensityMatrix, density, graph_matrix

CONCLUSIVE_DIMS = frozenset({(2, 2), (2, 3), (3, 2)})


class Separability(str, enum.Enum):
    SEPARABLE = "SEPARABLE"
    ENTANGLED = "ENTANGLED"
    PPT_INCONCLUSIVE = "PPT_INCONCLUSIVE"


def is_conclusive_dims(m: int, n: int) -> bool:
    return (m, n) in CONCLUSIVE_DIMS


@dataclass(frozen=True, eq=False)
class PptVerdict:
    ppt_holds: bool
    min_eigenvalue: float
    witness_vector: Optional[np.ndarray]
    conclusive: bool
    classification: Separability
    exact: bool = False


def ppt_test(rho: DensityMatrix, mode: str = "auto") -> PptVerdict:
    """Peres-Horodecki test on ``rho``.

    Rational states are tested on their integer numerator, which has the same
    PSD status as the state itself.  ``mode`` is passed to :func:`is_psd`.
    """
    if rho.exact:
        target = partial_transpose(rho.numerator, rho.m, rho.n)
        scale = 1.0 / rho.denominator
    else:
        if mode == "exact":
            raise PreconditionViolated("exact PPT test needs a state with a rational numerator")
        target = partial_transpose(rho.matrix, rho.m, rho.n)
        scale = 1.0
    res = is_psd(target, mode=mode)
    holds = bool(res.psd)
    conclusive = is_conclusive_dims(rho.m, rho.n) or not holds
    if not holds:
        cls = Separability.ENTANGLED
    elif conclusive:
        cls = Separability.SEPARABLE
    else:
        cls = Separability.PPT_INCONCLUSIVE
    return PptVerdict(
        ppt_holds=holds,
        min_eigenvalue=res.min_eigenvalue * scale,
        witness_vector=None if holds else res.witness,
        conclusive=conclusive,
        classification=cls,
        exact=res.exact,
    )


def degree_criterion(g: LayeredGraph) -> bool:
    """Degree symmetry of ``g``; agrees with PPT of the Laplacian state."""
    if not g.edges:
        raise EmptyGraphError("degree criterion needs at least one edge")
    return is_degree_symmetric(g)


@dataclass(frozen=True, eq=False)
class Term:
    weight: Fraction
    factor_a: np.ndarray
    factor_b: np.ndarray


@dataclass(frozen=True, eq=False)
class SeparableDecomposition:
    """Convex combination of product states on an ``m x n`` system."""

    m: int
    n: int
    terms: tuple
    source: str = ""

    def weight_sum(self) -> Fraction:
        return sum((t.weight for t in self.terms), Fraction(0))

    def reconstruct(self) -> np.ndarray:
        out = np.zeros((self.m * self.n, self.m * self.n))
        for t in self.terms:
            out += float(t.weight) * kron(t.factor_a, t.factor_b)
        return out

    def max_error(self, rho) -> float:
        target = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho)
        return float(np.abs(self.reconstruct() - target).max())

    def check(self, rho=None, tol: float = RECON_TOL):
        """Validate weights, factors and (optionally) the reconstruction."""
        if self.weight_sum() != 1:
            raise PsdCertificateFailure(f"weights sum to {self.weight_sum()}, not 1")
        for t in self.terms:
            if t.weight <= 0:
                raise PsdCertificateFailure("non-positive weight in decomposition")
            for f, size in ((t.factor_a, self.m), (t.factor_b, self.n)):
                if f.shape != (size, size) or abs(np.trace(f) - 1) > 1e-12:
                    raise PsdCertificateFailure("factor is not a unit-trace matrix of the right order")
                if not is_psd(f, mode="float").psd:
                    raise PsdCertificateFailure("factor is not positive semidefinite")
        if rho is not None and self.max_error(rho) > tol:
            raise PsdCertificateFailure(f"reconstruction error {self.max_error(rho):.3e} exceeds {tol:.1e}")
        return self

    def scaled(self, factor: Fraction) -> list:
        return [Term(t.weight * factor, t.factor_a, t.factor_b) for t in self.terms]


@dataclass(frozen=True, eq=False)
class TheoremCheck:
    """Outcome of the sufficiency check; truthy iff every condition holds."""

    holds: bool
    failed: Optional[str] = None
    common_block: Optional[np.ndarray] = field(default=None)

    def __bool__(self):
        return self.holds


def theorem_main_check(g: LayeredGraph) -> TheoremCheck:
    """Sufficient conditions for separability of a partially symmetric graph.

    In order: partially symmetric; no edge inside a layer; every nonzero
    off-diagonal block equals one common block; all vertices of a layer share
    a degree.  ``failed`` names the first condition that does not hold.
    """
    if not is_partially_symmetric(g):
        return TheoremCheck(False, "partially_symmetric")
    blocks = block_view(g).blocks
    m, n = g.m, g.n
    if any(blocks[i, i].any() for i in range(m)):
        return TheoremCheck(False, "no_intra_layer_edges")
    common = None
    for i in range(m):
        for j in range(m):
            if i != j and blocks[i, j].any():
                if common is None:
                    common = blocks[i, j]
                elif not np.array_equal(common, blocks[i, j]):
                    return TheoremCheck(False, "common_block")
    deg = degree_vector(g).reshape(m, n)
    if not (deg == deg[:, :1]).all():
        return TheoremCheck(False, "constant_layer_degree")
    if common is None:
        common = np.zeros((n, n), dtype=np.int64)
    return TheoremCheck(True, None, common.copy())


def _kind_sign(kind: str) -> int:
    if kind == "laplacian":
        return -1
    if kind == "signless":
        return 1
    raise ValueError(f"unknown state kind {kind!r}")


def _diagonally_dominant(b: np.ndarray, tol: float) -> bool:
    off = np.abs(b).sum(axis=1) - np.abs(np.diag(b))
    return bool((off <= np.diag(b) + tol).all())


def theorem_main_factors(g: LayeredGraph, kind: str = "laplacian"):
    """Per-eigenvector layer matrices ``B(r)`` with the common block's spectrum.

    ``L = sum_r B(r) (x) u_r u_r^T``; ``B(r)`` carries the layer degrees on
    its diagonal and ``-lambda_r`` (``+lambda_r`` for the signless Laplacian)
    wherever the corresponding block is nonzero.  Returns ``(B list, spectrum)``.
    """
    check = theorem_main_check(g)
    if not check:
        raise PreconditionViolated(f"sufficiency condition fails: {check.failed}", failed=check.failed)
    if not g.edges:
        raise EmptyGraphError("graph has no edges")
    sign = _kind_sign(kind)
    blocks = block_view(g).blocks
    m, n = g.m, g.n
    pattern = np.array([[i != j and blocks[i, j].any() for j in range(m)] for i in range(m)], dtype=float)
    layer_deg = degree_vector(g).reshape(m, n)[:, 0].astype(float)
    spectrum = eig_sym(check.common_block)
    bs = []
    for lam in spectrum.eigenvalues:
        b = np.diag(layer_deg) + sign * lam * pattern
        tol = 1e-9 * max(1.0, float(np.abs(b).max()))
        if not _diagonally_dominant(b, tol):
            raise PsdCertificateFailure(f"layer matrix for eigenvalue {lam:.6g} is not diagonally dominant")
        if not is_psd(b, mode="float").psd:
            raise PsdCertificateFailure(f"layer matrix for eigenvalue {lam:.6g} is not PSD")
        bs.append(b)
    return bs, spectrum


def decompose_theorem_main(g: LayeredGraph, kind: str = "laplacian") -> SeparableDecomposition:
    bs, spectrum = theorem_main_factors(g, kind)
    total = int(np.trace(graph_matrix(g, kind)))
    layer_total = int(degree_vector(g).reshape(g.m, g.n)[:, 0].sum())
    terms = []
    for b, u in zip(bs, spectrum.eigenvectors.T):
        terms.append(Term(Fraction(layer_total, total), b / layer_total, np.outer(u, u)))
    return SeparableDecomposition(g.m, g.n, tuple(terms), "theorem_main")


def union_copy(g: LayeredGraph) -> Optional[np.ndarray]:
    """The shared per-layer adjacency block if ``g`` is ``m`` disjoint copies, else None."""
    blocks = block_view(g).blocks
    m = g.m
    for i in range(m):
        for j in range(m):
            if i != j and blocks[i, j].any():
                return None
    first = blocks[0, 0]
    if any(not np.array_equal(first, blocks[i, i]) for i in range(1, m)):
        return None
    return first.copy()


def decompose_mg(g: LayeredGraph, kind: str = "laplacian") -> SeparableDecomposition:
    """``rho(mG) = sum_i (1/m) e_i e_i^T (x) rho(G)``."""
    block = union_copy(g)
    if block is None:
        raise NotAUnionGraph("graph is not m identical copies placed one per layer")
    if not g.edges:
        raise EmptyGraphError("graph has no edges")
    deg = np.diag(block.sum(axis=1))
    mat = deg + _kind_sign(kind) * block
    factor_b = mat / np.trace(mat)
    terms = []
    for i in range(g.m):
        e = np.zeros((g.m, g.m))
        e[i, i] = 1.0
        terms.append(Term(Fraction(1, g.m), e, factor_b))
    return SeparableDecomposition(g.m, g.n, tuple(terms), "union")


@dataclass(frozen=True, eq=False)
class TransferReport:
    degree_symmetric: bool
    rho_l: PptVerdict
    rho_l_gtpt: PptVerdict
    rho_q: PptVerdict
    rho_q_gtpt: PptVerdict

    def forward_transfer_holds(self) -> bool:
        """Degree symmetric and PPT-separable before GTPT implies PPT after, for both states."""
        if not self.degree_symmetric:
            return True
        return all(
            after.ppt_holds or not before.ppt_holds
            for before, after in ((self.rho_l, self.rho_l_gtpt), (self.rho_q, self.rho_q_gtpt))
        )


def gtpt_separability_transfer(g: LayeredGraph, mode: str = "auto") -> TransferReport:
    if not g.edges:
        raise EmptyGraphError("graph has no edges")
    h = gtpt(g)
    return TransferReport(
        degree_symmetric=is_degree_symmetric(g),
        rho_l=ppt_test(density(g, "laplacian"), mode),
        rho_l_gtpt=ppt_test(density(h, "laplacian"), mode),
        rho_q=ppt_test(density(g, "signless"), mode),
        rho_q_gtpt=ppt_test(density(h, "signless"), mode),
    )
