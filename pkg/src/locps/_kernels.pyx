# cython: language_level=3
"""Compiled floating-point kernels.

Same surface as `locps._kernels_py`: determinant via partial-pivot
elimination, symmetric eigenvalues via cyclic Jacobi (fixed sweep order, so
results are a pure function of the input bits), and the drop-one minimal
eigenvalue scan that dominates locally-PSD membership checks.
"""

import numpy as np

cimport cython
from libc.math cimport fabs, sqrt

BACKEND = "c"

DEF MAX_SWEEPS = 100


cdef double _det_inplace(double[:, ::1] m, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t i, j, k, piv
    cdef double best, factor, det = 1.0
    for k in range(n):
        piv = k
        best = fabs(m[k, k])
        for i in range(k + 1, n):
            if fabs(m[i, k]) > best:
                best = fabs(m[i, k])
                piv = i
        if best == 0.0:
            return 0.0
        if piv != k:
            for j in range(n):
                m[k, j], m[piv, j] = m[piv, j], m[k, j]
            det = -det
        det *= m[k, k]
        for i in range(k + 1, n):
            factor = m[i, k] / m[k, k]
            if factor != 0.0:
                for j in range(k + 1, n):
                    m[i, j] -= factor * m[k, j]
    return det


cdef int _jacobi(double[:, ::1] a, double[::1] w, double[:, ::1] v,
                 Py_ssize_t n, bint want_v) noexcept nogil:
    """Cyclic Jacobi on a (destroyed); eigenvalues into w, vectors into v.

    Returns the number of sweeps used, or -1 if MAX_SWEEPS was hit before
    the off-diagonal norm dropped below the stopping threshold.
    """
    cdef Py_ssize_t i, j, p, q, sweep
    cdef double anorm2 = 0.0, off2, thresh2
    cdef double apq, app, aqq, tau, t, c, s, xp, xq

    for i in range(n):
        for j in range(n):
            anorm2 += a[i, j] * a[i, j]
    # Frobenius norm is rotation-invariant; stop when the off-diagonal part
    # is negligible relative to it.
    thresh2 = (1e-14 * 1e-14) * anorm2

    if want_v:
        for i in range(n):
            for j in range(n):
                v[i, j] = 1.0 if i == j else 0.0

    for sweep in range(MAX_SWEEPS):
        off2 = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off2 += 2.0 * a[p, q] * a[p, q]
        if off2 <= thresh2 or anorm2 == 0.0:
            for i in range(n):
                w[i] = a[i, i]
            return <int>sweep
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                app = a[p, p]
                aqq = a[q, q]
                tau = (aqq - app) / (2.0 * apq)
                if fabs(tau) > 1e154:
                    t = 0.5 / tau
                elif tau >= 0.0:
                    t = 1.0 / (tau + sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                for i in range(n):
                    if i != p and i != q:
                        xp = a[i, p]
                        xq = a[i, q]
                        a[i, p] = c * xp - s * xq
                        a[p, i] = a[i, p]
                        a[i, q] = s * xp + c * xq
                        a[q, i] = a[i, q]
                a[p, p] = app - t * apq
                a[q, q] = aqq + t * apq
                a[p, q] = 0.0
                a[q, p] = 0.0
                if want_v:
                    for i in range(n):
                        xp = v[i, p]
                        xq = v[i, q]
                        v[i, p] = c * xp - s * xq
                        v[i, q] = s * xp + c * xq
    return -1


cdef void _sort_ascending(double[::1] w, double[:, ::1] v,
                          Py_ssize_t n, bint want_v) noexcept nogil:
    cdef Py_ssize_t i, j, k
    cdef double key, tmp
    for i in range(1, n):
        key = w[i]
        j = i - 1
        while j >= 0 and w[j] > key:
            w[j + 1] = w[j]
            if want_v:
                for k in range(n):
                    tmp = v[k, j + 1]
                    v[k, j + 1] = v[k, j]
                    v[k, j] = tmp
            j -= 1
        w[j + 1] = key
        # vector column for `key` travelled with the swaps above


cdef double[:, ::1] _square_input(object a, Py_ssize_t* n_out):
    arr = np.array(a, dtype=np.float64, order="C", copy=True)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError("expected a square 2-D array")
    n_out[0] = arr.shape[0]
    return arr


def det_f64(a):
    """Determinant via partial-pivot Gaussian elimination."""
    cdef Py_ssize_t n = 0
    cdef double[:, ::1] m = _square_input(a, &n)
    if n == 0:
        return 1.0
    return _det_inplace(m, n)


def eigvals_f64(a):
    """Ascending eigenvalues of a symmetric matrix (cyclic Jacobi)."""
    cdef Py_ssize_t n = 0
    cdef double[:, ::1] m = _square_input(a, &n)
    w_arr = np.empty(n, dtype=np.float64)
    if n == 0:
        return w_arr
    cdef double[::1] w = w_arr
    if _jacobi(m, w, m, n, False) < 0:
        raise RuntimeError(f"Jacobi failed to converge within {MAX_SWEEPS} sweeps")
    _sort_ascending(w, m, n, False)
    return w_arr


def eigh_f64(a):
    """Ascending eigenvalues and orthonormal eigenvectors (columns)."""
    cdef Py_ssize_t n = 0
    cdef double[:, ::1] m = _square_input(a, &n)
    w_arr = np.empty(n, dtype=np.float64)
    v_arr = np.empty((n, n), dtype=np.float64)
    if n == 0:
        return w_arr, v_arr
    cdef double[::1] w = w_arr
    cdef double[:, ::1] v = v_arr
    if _jacobi(m, w, v, n, True) < 0:
        raise RuntimeError(f"Jacobi failed to converge within {MAX_SWEEPS} sweeps")
    _sort_ascending(w, v, n, True)
    return w_arr, v_arr


def drop_one_min_eigs_f64(a):
    """Minimal eigenvalue of each submatrix with row/column i deleted."""
    cdef Py_ssize_t n = 0
    cdef double[:, ::1] m = _square_input(a, &n)
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    if n == 1:
        out[0] = float("inf")
        return out_arr
    sub_arr = np.empty((n - 1, n - 1), dtype=np.float64)
    w_arr = np.empty(n - 1, dtype=np.float64)
    cdef double[:, ::1] sub = sub_arr
    cdef double[::1] w = w_arr
    cdef Py_ssize_t i, r, c, rr, cc
    cdef double wmin
    for i in range(n):
        rr = 0
        for r in range(n):
            if r == i:
                continue
            cc = 0
            for c in range(n):
                if c == i:
                    continue
                sub[rr, cc] = m[r, c]
                cc += 1
            rr += 1
        if _jacobi(sub, w, sub, n - 1, False) < 0:
            raise RuntimeError(f"Jacobi failed to converge within {MAX_SWEEPS} sweeps")
        wmin = w[0]
        for r in range(1, n - 1):
            if w[r] < wmin:
                wmin = w[r]
        out[i] = wmin
    return out_arr
