"""Small dense symmetric matrix kernel.

Matrices are plain numpy arrays.  An integer dtype marks an exact payload:
:func:`is_psd` can then decide positive semidefiniteness without any
tolerance through a fraction-free symmetric elimination.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import PreconditionViolated

PSD_TOL = 1e-9
RECON_TOL = 1e-9
ORTH_TOL = 1e-10
JACOBI_TOL = 1e-12
# float verdicts whose margin is below this (relative) band are re-decided exactly
EXACT_BAND = 1e-6


class Spectrum(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # columns, paired with eigenvalues


class PsdResult(NamedTuple):
    psd: bool
    min_eigenvalue: float
    witness: np.ndarray  # eigenvector of the minimum eigenvalue
    exact: bool  # verdict came from the exact integer path


def is_integer_matrix(a) -> bool:
    return np.issubdtype(np.asarray(a).dtype, np.integer)


def _check_symmetric(a: np.ndarray):
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise PreconditionViolated(f"expected a square matrix, got shape {a.shape}")
    if not np.array_equal(a, a.T):
        raise PreconditionViolated("matrix is not exactly symmetric")


def _fix_signs(vectors: np.ndarray) -> np.ndarray:
    for c in range(vectors.shape[1]):
        col = vectors[:, c]
        nz = np.flatnonzero(np.abs(col) > 1e-9)
        if nz.size and col[nz[0]] < 0:
            vectors[:, c] = -col
    return vectors


def eig_sym(a, max_sweeps: int = 100) -> Spectrum:
    """Full eigendecomposition of a real symmetric matrix by cyclic Jacobi rotations.

    Eigenvalues come back ascending (stable order on ties) and every
    eigenvector has its first non-negligible component positive, so the
    output is reproducible bit for bit on a given platform.
    """
    a = np.array(a, dtype=np.float64)
    _check_symmetric(a)
    size = a.shape[0]
    v = np.eye(size)
    threshold = JACOBI_TOL * np.linalg.norm(a)
    # entries this small cannot keep the off-diagonal norm above threshold
    negligible = threshold / (10.0 * max(size, 1))
    for _ in range(max_sweeps):
        off = np.sqrt(2.0 * np.sum(np.triu(a, 1) ** 2))
        if off <= threshold:
            break
        for p in range(size - 1):
            for q in range(p + 1, size):
                apq = a[p, q]
                if abs(apq) <= negligible:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if theta == 0.0:
                    t = 1.0
                elif abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                ap = a[:, p].copy()
                aq = a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                a[p, q] = a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    values = np.diag(a).copy()
    order = np.argsort(values, kind="stable")
    return Spectrum(values[order], _fix_signs(v[:, order]))


def reconstruct(spectrum: Spectrum) -> np.ndarray:
    vals, vecs = spectrum
    return (vecs * vals) @ vecs.T


def partial_transpose(a, m: int, n: int) -> np.ndarray:
    """Transpose each ``n x n`` block of an ``mn x mn`` matrix in place."""
    a = np.asarray(a)
    if a.shape != (m * n, m * n):
        raise PreconditionViolated(f"matrix of shape {a.shape} is not {m * n}x{m * n}")
    return np.ascontiguousarray(a.reshape(m, n, m, n).transpose(0, 3, 2, 1).reshape(m * n, m * n))


def kron(a, b) -> np.ndarray:
    return np.kron(np.asarray(a), np.asarray(b))


def exact_is_psd(a) -> bool:
    """Tolerance-free PSD decision for an integer symmetric matrix.

    Symmetric Bareiss elimination with largest-diagonal pivoting.  Every
    remaining entry is the Schur complement scaled by a positive principal
    minor, so signs are exact: a negative diagonal, or a zero diagonal with a
    nonzero residual, means the matrix is not PSD.
    """
    a = np.asarray(a)
    if not is_integer_matrix(a):
        raise PreconditionViolated("exact PSD path needs an integer matrix")
    _check_symmetric(a)
    rows = [[int(x) for x in row] for row in a.tolist()]
    active = list(range(len(rows)))
    prev = 1
    while active:
        best = active[0]
        for i in active:
            d = rows[i][i]
            if d < 0:
                return False
            if d > rows[best][best]:
                best = i
        p = rows[best][best]
        if p == 0:
            return all(rows[i][j] == 0 for i in active for j in active)
        active.remove(best)
        col = rows[best]
        for x, i in enumerate(active):
            ri = rows[i]
            ci = ri[best]
            for j in active[x:]:
                val = (p * ri[j] - ci * col[j]) // prev
                ri[j] = val
                rows[j][i] = val
        prev = p
    return True


def is_psd(a, mode: str = "auto", tol: float = PSD_TOL) -> PsdResult:
    """Positive semidefiniteness with a minimum-eigenvalue witness.

    ``mode`` is ``"float"`` (eigenvalues against ``-tol * max(1, lambda_max)``),
    ``"exact"`` (integer matrices only), or ``"auto"``: floating verdict, with
    integer matrices re-decided exactly when the margin is within a narrow band
    around the threshold.
    """
    if mode not in ("auto", "float", "exact"):
        raise ValueError(f"unknown PSD mode {mode!r}")
    arr = np.asarray(a)
    _check_symmetric(arr)
    vals, vecs = np.linalg.eigh(arr.astype(np.float64))
    lmin, lmax = float(vals[0]), float(vals[-1])
    scale = max(1.0, abs(lmax))
    witness = vecs[:, 0].copy()
    if mode == "exact" or (mode == "auto" and is_integer_matrix(arr) and abs(lmin) <= EXACT_BAND * scale):
        return PsdResult(exact_is_psd(arr), lmin, witness, True)
    return PsdResult(lmin >= -tol * scale, lmin, witness, False)
