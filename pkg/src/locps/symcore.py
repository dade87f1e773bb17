"""Symmetric matrices in floating or exact arithmetic, plus the elementary
kernels everything else builds on: principal submatrices, determinants (with
an independent cofactor oracle), eigenvalues, Schur complements, diagonal
normalization and principal-minor sums.

Conventions
-----------
* Matrices are exactly symmetric by construction: the upper triangle is
  mirrored onto the lower one.
* Index sets are 1-based (matching the usual {1..n} convention); positional
  0-based access on a SymMatrix uses `A[i, j]`.
* The empty principal submatrix has determinant 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from . import _backend, _exact
from ._exact import QuadExt

MODE_FLOAT = "float"
MODE_RATIONAL = "rational"
MODE_QUADRATIC = "quadratic"  # internal: rational + b*sqrt(q) entries

_COFACTOR_GUARD = 10
_MINOR_SUM_GUARD = 20


@dataclass(frozen=True)
class IndexSet:
    """Strictly increasing 1-based indices, a subset of {1..n}."""

    indices: tuple[int, ...]

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        if any(i < 1 for i in idx):
            raise ValueError(f"indices must be >= 1, got {idx}")
        if any(a >= b for a, b in zip(idx, idx[1:])):
            raise ValueError(f"indices must be strictly increasing, got {idx}")
        object.__setattr__(self, "indices", idx)

    @classmethod
    def of(cls, *indices):
        return cls.from_iterable(indices)

    @classmethod
    def from_iterable(cls, it):
        idx = sorted(int(i) for i in it)
        if len(set(idx)) != len(idx):
            raise ValueError(f"duplicate indices in {idx}")
        return cls(tuple(idx))

    def validate_within(self, n):
        if self.indices and self.indices[-1] > n:
            raise ValueError(f"index {self.indices[-1]} out of range for order {n}")

    def complement(self, n):
        self.validate_within(n)
        members = set(self.indices)
        return IndexSet(tuple(i for i in range(1, n + 1) if i not in members))

    def union(self, other):
        return IndexSet.from_iterable(set(self.indices) | set(other.indices))

    def intersection(self, other):
        return IndexSet(tuple(i for i in self.indices if i in set(other.indices)))

    def difference(self, other):
        members = set(other.indices)
        return IndexSet(tuple(i for i in self.indices if i not in members))

    def positions(self):
        """0-based positions for array slicing."""
        return tuple(i - 1 for i in self.indices)

    def __len__(self):
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def __contains__(self, i):
        return i in self.indices


def _as_index_set(alpha, n):
    if not isinstance(alpha, IndexSet):
        alpha = IndexSet.from_iterable(alpha)
    alpha.validate_within(n)
    return alpha


@dataclass(frozen=True)
class Spectrum:
    """Ascending eigenvalues of a symmetric matrix."""

    values: tuple[float, ...]

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        if any(a > b for a, b in zip(vals, vals[1:])):
            raise ValueError("eigenvalues must be ascending")
        object.__setattr__(self, "values", vals)

    @property
    def lambda_min(self):
        return self.values[0] if self.values else float("inf")

    @property
    def lambda_max(self):
        return self.values[-1] if self.values else float("-inf")

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)


class SymMatrix:
    """An n x n real symmetric matrix in one of three arithmetic modes.

    * ``float``: numpy float64 storage.
    * ``rational``: `fractions.Fraction` entries, exact.
    * ``quadratic``: exact entries in a quadratic extension field (used by
      the Fischer-sharpness family, whose border is an exact square root);
      behaves like rational mode everywhere and is never serialized.

    Construction mirrors the upper triangle, so symmetry is exact by
    invariant rather than by numerical accident.
    """

    __slots__ = ("n", "mode", "_a", "_rows")

    def __init__(self, entries, mode=None):
        if isinstance(entries, SymMatrix):
            raise TypeError("entries must be a square array, not a SymMatrix")
        if isinstance(entries, np.ndarray):
            rows = entries.tolist()
        else:
            rows = [list(r) for r in entries]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("entries must form a square matrix")
        if mode is None:
            mode = _infer_mode(rows)
        self.n = n
        self.mode = mode
        if mode == MODE_FLOAT:
            a = np.empty((n, n), dtype=np.float64)
            for i in range(n):
                for j in range(i, n):
                    a[i, j] = a[j, i] = float(rows[i][j])
            a.setflags(write=False)
            self._a = a
            self._rows = None
        elif mode in (MODE_RATIONAL, MODE_QUADRATIC):
            out = [[None] * n for _ in range(n)]
            for i in range(n):
                for j in range(i, n):
                    out[i][j] = out[j][i] = _coerce_exact(rows[i][j], mode)
            self._rows = tuple(tuple(r) for r in out)
            self._a = None
        else:
            raise ValueError(f"unknown mode {mode!r}")

    @property
    def is_exact(self):
        return self.mode != MODE_FLOAT

    def __getitem__(self, key):
        i, j = key
        if self.mode == MODE_FLOAT:
            return float(self._a[i, j])
        return self._rows[i][j]

    def rows(self):
        """Entries as nested tuples (floats in float mode, exact otherwise)."""
        if self.mode == MODE_FLOAT:
            return tuple(tuple(float(x) for x in r) for r in self._a)
        return self._rows

    def diagonal(self):
        if self.mode == MODE_FLOAT:
            return tuple(float(self._a[i, i]) for i in range(self.n))
        return tuple(self._rows[i][i] for i in range(self.n))

    def to_numpy(self):
        """float64 copy of the entries (exact entries are rounded once)."""
        if self.mode == MODE_FLOAT:
            return self._a.copy()
        return np.array([[float(x) for x in r] for r in self._rows], dtype=np.float64)

    def to_float(self):
        return self if self.mode == MODE_FLOAT else SymMatrix(self.to_numpy(), MODE_FLOAT)

    def __eq__(self, other):
        if not isinstance(other, SymMatrix):
            return NotImplemented
        if self.n != other.n or self.is_exact != other.is_exact:
            return False
        if self.mode == MODE_FLOAT:
            return bool(np.array_equal(self._a, other._a))
        return all(
            self._rows[i][j] == other._rows[i][j]
            for i in range(self.n)
            for j in range(i, self.n)
        )

    def __repr__(self):
        return f"SymMatrix(n={self.n}, mode={self.mode!r})"


def _infer_mode(rows):
    saw_quad = saw_float = False
    for r in rows:
        for x in r:
            if isinstance(x, QuadExt):
                saw_quad = True
            elif isinstance(x, (float, np.floating)):
                saw_float = True
            elif not isinstance(x, (int, np.integer, Fraction)):
                raise TypeError(f"unsupported entry type {type(x).__name__}")
    if saw_float and saw_quad:
        raise TypeError("mixed floating and exact entries")
    if saw_quad:
        return MODE_QUADRATIC
    if saw_float:
        return MODE_FLOAT
    return MODE_RATIONAL


def _coerce_exact(x, mode):
    if isinstance(x, QuadExt):
        return x
    if isinstance(x, (int, np.integer, Fraction)):
        return Fraction(x)
    raise TypeError(
        f"entry {x!r} is not exact; rational mode requires int/Fraction entries"
    )


def _array(A):
    """Read-only float64 view of a float-mode matrix (no copy)."""
    if A.mode != MODE_FLOAT:
        raise TypeError("operation requires floating mode")
    return A._a


def _exact_rows(A):
    if A.mode == MODE_FLOAT:
        raise TypeError("operation requires an exact mode")
    return [list(r) for r in A._rows]


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------


def principal_submatrix(A, alpha):
    """A[alpha]: rows and columns restricted to alpha, ascending order.

    The empty index set yields the order-0 matrix, whose determinant is 1.
    """
    alpha = _as_index_set(alpha, A.n)
    pos = alpha.positions()
    if A.mode == MODE_FLOAT:
        sub = _array(A)[np.ix_(pos, pos)] if pos else np.empty((0, 0))
        return SymMatrix(sub, MODE_FLOAT)
    rows = [[A._rows[i][j] for j in pos] for i in pos]
    return SymMatrix(rows, A.mode)


def determinant(A):
    """det(A): pivoted elimination in float mode, fraction-free in exact mode."""
    if A.mode == MODE_FLOAT:
        return _backend.det(_array(A))
    return _exact.det_exact(_exact_rows(A))


def determinant_cofactor(A):
    """Independent cofactor-expansion determinant oracle.

    Deliberately separate from the elimination routes; guarded to small
    orders because the expansion is factorial.
    """
    if A.n > _COFACTOR_GUARD:
        raise ValueError(f"cofactor oracle guard exceeded (n={A.n} > {_COFACTOR_GUARD})")
    if A.mode == MODE_FLOAT:
        return float(_exact.det_cofactor([list(r) for r in _array(A)]))
    return _exact.det_cofactor(_exact_rows(A))


def eigenvalues(A):
    """Ascending spectrum of a float-mode matrix.

    Exact modes are rejected: eigenvalues are generally irrational, so exact
    callers should reason through minors or characteristic coefficients.
    """
    if A.is_exact:
        raise TypeError("eigenvalues require floating mode; use to_float() first")
    return Spectrum(tuple(_backend.eigvals(_array(A))))


def schur_complement(A, alpha):
    """A / A[alpha] = A[alpha^c] - A[alpha^c, alpha] A[alpha]^{-1} A[alpha, alpha^c].

    Satisfies det(A) = det(A[alpha]) * det(result); raises on a singular
    (or numerically singular) pivot block.
    """
    alpha = _as_index_set(alpha, A.n)
    comp = alpha.complement(A.n)
    ppos, cpos = alpha.positions(), comp.positions()
    if not ppos:
        return principal_submatrix(A, comp)
    if A.mode == MODE_FLOAT:
        a = _array(A)
        block = a[np.ix_(ppos, ppos)]
        det_block = _backend.det(block)
        k = len(ppos)
        tol = 1e-12 * max(1.0, float(np.max(np.abs(block)))) ** k
        if abs(det_block) <= tol:
            raise ValueError("singular pivot block in Schur complement")
        off = a[np.ix_(ppos, cpos)]
        s = a[np.ix_(cpos, cpos)] - off.T @ np.linalg.solve(block, off)
        return SymMatrix(0.5 * (s + s.T), MODE_FLOAT)
    rows = A._rows
    block = [[rows[i][j] for j in ppos] for i in ppos]
    off = [[rows[i][j] for j in cpos] for i in ppos]
    try:
        x = _exact.solve_exact(block, off)  # block^{-1} A[alpha, alpha^c]
    except ValueError as e:
        raise ValueError("singular pivot block in Schur complement") from e
    out = []
    for ci, i in enumerate(cpos):
        row = []
        for cj, j in enumerate(cpos):
            acc = rows[i][j]
            for bi in range(len(ppos)):
                acc = acc - off[bi][ci] * x[bi][cj]
            row.append(acc)
        out.append(row)
    return SymMatrix(out, A.mode)


def normalize_unit_diagonal(A):
    """D^{-1/2} A D^{-1/2} with D = diag(A); requires a positive diagonal.

    det(result) = det(A) / (a_11 ... a_nn).  In rational mode the scaling is
    performed exactly and requires every needed sqrt(a_ii a_jj) to be
    rational; otherwise convert to float mode first.
    """
    diag = A.diagonal()
    if A.mode == MODE_FLOAT:
        if any(d <= 0 for d in diag):
            raise ValueError("normalization requires a strictly positive diagonal")
        a = _array(A)
        d = np.sqrt(np.asarray(diag))
        return SymMatrix(a / np.outer(d, d), MODE_FLOAT)
    if any(_exact.exact_sign(d) <= 0 for d in diag):
        raise ValueError("normalization requires a strictly positive diagonal")
    if all(d == 1 for d in diag):
        return A
    if A.mode == MODE_QUADRATIC:
        raise ValueError("exact normalization is unsupported for quadratic entries")
    n = A.n
    out = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        out[i][i] = Fraction(1)
        for j in range(i + 1, n):
            if A._rows[i][j] == 0:
                continue
            root = _exact.rational_sqrt(diag[i] * diag[j])
            if root is None:
                raise ValueError(
                    "sqrt(a_ii*a_jj) is irrational; use float mode for normalization"
                )
            out[i][j] = out[j][i] = A._rows[i][j] / root
    return SymMatrix(out, MODE_RATIONAL)


def sum_principal_minors(A, k):
    """Sum of all order-k principal minors; equals e_k of the eigenvalues.

    k = 0 gives 1, k = 1 the trace, k = n the determinant.  Enumeration is
    combinatorial, so the order is guarded.
    """
    if not 0 <= k <= A.n:
        raise ValueError(f"k={k} outside 0..{A.n}")
    if A.n > _MINOR_SUM_GUARD:
        raise ValueError(f"enumeration guard exceeded (n={A.n} > {_MINOR_SUM_GUARD})")
    if k == 0:
        return 1.0 if A.mode == MODE_FLOAT else Fraction(1)
    if A.mode == MODE_FLOAT:
        a = _array(A)
        total = 0.0
        for idx in combinations(range(A.n), k):
            total += _backend.det(a[np.ix_(idx, idx)])
        return total
    rows = _exact_rows(A)
    total = None
    for idx in combinations(range(A.n), k):
        minor = _exact.det_exact(_exact.submatrix(rows, idx))
        total = minor if total is None else total + minor
    return total
