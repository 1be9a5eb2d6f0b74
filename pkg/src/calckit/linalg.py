"""Small dense real matrix/vector kernel.

Vectors are 1-D float arrays, matrices 2-D row-major float arrays; everything
is validated at the operation boundary, never assumed. The solver is an LU
factorization with partial (row) pivoting written out explicitly so the pivot
threshold is under our control: a pivot is declared singular when its
magnitude drops below ``1e-12 * ||A||_inf``. Intended scale is n <= ~16.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionError, DomainError, SingularityError

PIVOT_RTOL = 1e-12


def as_vec(x) -> np.ndarray:
    """Validate and copy a 1-D real vector."""
    v = np.asarray(x, dtype=float)
    if v.ndim != 1:
        raise DimensionError(f"expected a 1-D vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise DomainError("vector entries must be finite")
    return v.copy()


def as_mat(a) -> np.ndarray:
    """Validate and copy a 2-D real matrix."""
    m = np.asarray(a, dtype=float)
    if m.ndim != 2:
        raise DimensionError(f"expected a 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise DomainError("matrix entries must be finite")
    return m.copy()


def norm_inf(a: np.ndarray) -> float:
    """Induced infinity norm (max absolute row sum)."""
    m = np.asarray(a, dtype=float)
    if m.size == 0:
        return 0.0
    if m.ndim == 1:
        return float(np.max(np.abs(m)))
    return float(np.max(np.sum(np.abs(m), axis=1)))


def matmul(a, b) -> np.ndarray:
    a = as_mat(a)
    b = as_mat(b)
    if a.shape[1] != b.shape[0]:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def transpose(a) -> np.ndarray:
    return as_mat(a).T.copy()


def lu_factor(a: np.ndarray):
    """Doolittle LU with partial pivoting.

    Returns (lu, perm, swaps) where ``lu`` packs L (unit diagonal implied)
    below and U on/above the diagonal, ``perm`` is the row permutation, and
    ``swaps`` counts row exchanges (for the determinant sign).
    """
    a = as_mat(a)
    n, m = a.shape
    if n != m:
        raise DimensionError(f"LU needs a square matrix, got {a.shape}")
    threshold = PIVOT_RTOL * norm_inf(a)
    lu = a.copy()
    perm = np.arange(n)
    swaps = 0
    for k in range(n):
        p = k + int(np.argmax(np.abs(lu[k:, k])))
        if abs(lu[p, k]) <= threshold:
            raise SingularityError(
                f"pivot {abs(lu[p, k]):.3e} below threshold {threshold:.3e} at column {k}"
            )
        if p != k:
            lu[[k, p]] = lu[[p, k]]
            perm[[k, p]] = perm[[p, k]]
            swaps += 1
        lu[k + 1:, k] /= lu[k, k]
        lu[k + 1:, k + 1:] -= np.outer(lu[k + 1:, k], lu[k, k + 1:])
    return lu, perm, swaps


def lu_solve(a, b) -> np.ndarray:
    """Solve ``A x = b`` for one right-hand side."""
    b = as_vec(b)
    lu, perm, _ = lu_factor(a)
    n = lu.shape[0]
    if len(b) != n:
        raise DimensionError(f"rhs length {len(b)} does not match matrix size {n}")
    x = b[perm]
    for k in range(1, n):          # forward substitution, unit lower
        x[k] -= lu[k, :k] @ x[:k]
    for k in range(n - 1, -1, -1):  # back substitution
        x[k] = (x[k] - lu[k, k + 1:] @ x[k + 1:]) / lu[k, k]
    return x


def determinant(a) -> float:
    """Determinant via LU; singular matrices report exactly 0.0."""
    a = as_mat(a)
    if a.shape[0] != a.shape[1]:
        raise DimensionError(f"determinant needs a square matrix, got {a.shape}")
    try:
        lu, _, swaps = lu_factor(a)
    except SingularityError:
        return 0.0
    det = float(np.prod(np.diag(lu)))
    return -det if swaps % 2 else det


def is_positive_definite(a) -> bool:
    """Cholesky-style pivot positivity check for a symmetric matrix."""
    m = as_mat(a)
    n = m.shape[0]
    if n != m.shape[1]:
        raise DimensionError("positive-definiteness check needs a square matrix")
    chol = np.zeros_like(m)
    for i in range(n):
        s = m[i, i] - chol[i, :i] @ chol[i, :i]
        if s <= 0.0:
            return False
        chol[i, i] = np.sqrt(s)
        for j in range(i + 1, n):
            chol[j, i] = (m[j, i] - chol[j, :i] @ chol[i, :i]) / chol[i, i]
    return True
