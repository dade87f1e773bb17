"""NumPy implementations of the floating-point kernels.

Fallback used when the compiled extension `locps._kernels` is unavailable;
both modules expose the same surface (see `locps._backend`).
"""

import numpy as np

BACKEND = "python"


def det_f64(a):
    """Determinant via pivoted LU elimination (LAPACK)."""
    a = np.asarray(a, dtype=np.float64)
    if a.shape[0] == 0:
        return 1.0
    return float(np.linalg.det(a))


def eigvals_f64(a):
    """Ascending eigenvalues of a symmetric matrix."""
    a = np.asarray(a, dtype=np.float64)
    if a.shape[0] == 0:
        return np.empty(0)
    return np.linalg.eigvalsh(a)


def eigh_f64(a):
    """Ascending eigenvalues and orthonormal eigenvectors (columns)."""
    a = np.asarray(a, dtype=np.float64)
    if a.shape[0] == 0:
        return np.empty(0), np.empty((0, 0))
    w, v = np.linalg.eigh(a)
    return w, v


def drop_one_min_eigs_f64(a):
    """Minimal eigenvalue of each submatrix obtained by deleting row/col i.

    Entry i of the result is lambda_min(A with row and column i removed);
    the order-0 submatrix of a 1x1 input yields +inf (vacuously PSD).
    """
    a = np.asarray(a, dtype=np.float64)
    n = a.shape[0]
    out = np.empty(n)
    if n == 1:
        out[0] = np.inf
        return out
    for i in range(n):
        sub = np.delete(np.delete(a, i, axis=0), i, axis=1)
        out[i] = np.linalg.eigvalsh(sub)[0]
    return out
