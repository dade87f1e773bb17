"""Classify symmetric matrices against the PSD/PD cones and the
(n-1)-locally PSD hierarchy (all order-(n-1) principal submatrices PSD and
det < 0; the locally-PD variant replaces PSD with PD).

Floating mode decides through eigenvalues under a tolerance policy; exact
modes decide through principal-minor signs (PSD iff every principal minor is
nonnegative, PD iff the leading minors are positive) and Descartes' rule for
the eigenvalue signature, so the closed-form boundary families classify
exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from math import comb

import numpy as np

from . import _backend, _exact
from .symcore import IndexSet, SymMatrix, _array, _exact_rows, determinant

_ENUM_GUARD = 10**6
_EXACT_ORDER_GUARD = 14


class Classification(str, Enum):
    PD = "PD"
    PSD = "PSD"
    LOCALLY_PSD = "LOCALLY_PSD"
    LOCALLY_PD = "LOCALLY_PD"
    NONE = "NONE"


class PsdKind(str, Enum):
    PD = "PD"
    PSD = "PSD"
    INDEFINITE = "INDEFINITE"


@dataclass(frozen=True)
class TolerancePolicy:
    """Numerical surrogate for exact boundary decisions.

    eig_tol is relative: the effective cut is eig_tol * max(1, ||A||_inf).
    det_neg_tol is the (negative) base of the strict-negativity threshold for
    determinants, scaled by max(1, ||A||_inf)^n.  Exact modes ignore both and
    test signs exactly.
    """

    eig_tol: float = 1e-9
    det_neg_tol: float = -1e-12

    def __post_init__(self):
        if self.eig_tol < 0:
            raise ValueError("eig_tol must be nonnegative")
        if self.det_neg_tol > 0:
            raise ValueError("det_neg_tol must be nonpositive")

    def eig_cut(self, scale):
        return self.eig_tol * max(1.0, scale)

    def det_cut(self, scale, n):
        return self.det_neg_tol * max(1.0, scale) ** n


DEFAULT_TOLERANCE = TolerancePolicy()


@dataclass(frozen=True)
class PsdVerdict:
    kind: PsdKind
    min_eigenvalue: float


@dataclass(frozen=True)
class SubmatrixWitness:
    indices: IndexSet
    min_eigenvalue: float
    psd: bool
    pd: bool


@dataclass(frozen=True)
class LocalPsdReport:
    order: int
    witnesses: tuple[SubmatrixWitness, ...]
    all_psd: bool


@dataclass(frozen=True)
class MembershipReport:
    classification: Classification
    det_value: object
    signature: tuple[int, int, int]
    witnesses: tuple[SubmatrixWitness, ...]


def _scale_inf(A):
    """max(1-insensitive) infinity norm, as a float, in any mode."""
    if A.n == 0:
        return 0.0
    arr = _array(A) if A.mode == "float" else A.to_numpy()
    return float(np.max(np.sum(np.abs(arr), axis=1)))


def psd_verdict(A, tol=None):
    """PD / PSD / INDEFINITE for a float-mode matrix, with lambda_min witness."""
    if A.is_exact:
        raise TypeError("psd_verdict requires floating mode; see classify_membership")
    tol = tol or DEFAULT_TOLERANCE
    w = _backend.eigvals(_array(A))
    lam = float(w[0]) if len(w) else float("inf")
    cut = tol.eig_cut(_scale_inf(A))
    if lam > cut:
        kind = PsdKind.PD
    elif lam >= -cut:
        kind = PsdKind.PSD
    else:
        kind = PsdKind.INDEFINITE
    return PsdVerdict(kind, lam)


def _witness(indices, sub_rows_or_arr, exact, cut):
    if exact:
        rows = sub_rows_or_arr
        psd = _exact.is_psd(rows)
        pd = psd and _exact.is_pd(rows)
        arr = np.array([[float(x) for x in r] for r in rows]) if rows else np.empty((0, 0))
        lam = float(_backend.eigvals(arr)[0]) if len(rows) else float("inf")
    else:
        arr = sub_rows_or_arr
        lam = float(_backend.eigvals(arr)[0]) if arr.shape[0] else float("inf")
        psd = lam >= -cut
        pd = lam > cut
    return SubmatrixWitness(indices, lam, psd, pd)


def locally_psd_verdict(A, k, tol=None):
    """Per-submatrix PSD verdicts over every order-k principal submatrix."""
    if not 1 <= k <= A.n:
        raise ValueError(f"k={k} outside 1..{A.n}")
    if comb(A.n, k) > _ENUM_GUARD:
        raise ValueError(f"enumeration guard exceeded: C({A.n},{k}) > {_ENUM_GUARD}")
    tol = tol or DEFAULT_TOLERANCE
    cut = tol.eig_cut(_scale_inf(A))
    witnesses = []
    if A.is_exact:
        rows = _exact_rows(A)
        for pos in combinations(range(A.n), k):
            sub = _exact.submatrix(rows, pos)
            witnesses.append(_witness(IndexSet(tuple(p + 1 for p in pos)), sub, True, cut))
    else:
        arr = _array(A)
        for pos in combinations(range(A.n), k):
            sub = arr[np.ix_(pos, pos)]
            witnesses.append(_witness(IndexSet(tuple(p + 1 for p in pos)), sub, False, cut))
    return LocalPsdReport(k, tuple(witnesses), all(w.psd for w in witnesses))


def eigen_signature(A, tol=None):
    """(negative, zero, positive) eigenvalue counts.

    Float mode counts against the tolerance cut; exact modes count exactly
    via Descartes' rule on the characteristic coefficients.
    """
    tol = tol or DEFAULT_TOLERANCE
    if A.is_exact:
        if A.n > _EXACT_ORDER_GUARD:
            raise ValueError(f"exact signature guard exceeded (n > {_EXACT_ORDER_GUARD})")
        return _exact.signature_from_char_coeffs(_exact.char_coeffs(_exact_rows(A)))
    w = _backend.eigvals(_array(A))
    cut = tol.eig_cut(_scale_inf(A))
    neg = int(np.sum(w < -cut))
    pos = int(np.sum(w > cut))
    return (neg, A.n - neg - pos, pos)


def _drop_one_witnesses_float(arr, cut):
    n = arr.shape[0]
    mins = _backend.drop_one_min_eigs(arr)
    wit = []
    for i in range(n):
        idx = IndexSet(tuple(j + 1 for j in range(n) if j != i))
        lam = float(mins[i])
        wit.append(SubmatrixWitness(idx, lam, lam >= -cut, lam > cut))
    wit.sort(key=lambda w: w.indices.indices)
    return tuple(wit)


def _drop_one_witnesses_exact(rows, cut):
    n = len(rows)
    wit = []
    for i in range(n):
        pos = tuple(j for j in range(n) if j != i)
        sub = _exact.submatrix(rows, pos)
        wit.append(_witness(IndexSet(tuple(p + 1 for p in pos)), sub, True, cut))
    wit.sort(key=lambda w: w.indices.indices)
    return tuple(wit)


def classify_membership(A, tol=None):
    """Full cone classification with order-(n-1) witnesses.

    LOCALLY_* requires det < 0 (strictly, under the tolerance policy in float
    mode), so PSD and LOCALLY_PSD are mutually exclusive by the determinant
    sign; sharp boundary members with singular submatrices classify
    LOCALLY_PSD.
    """
    if A.n < 2:
        raise ValueError("classification needs n >= 2")
    tol = tol or DEFAULT_TOLERANCE
    scale = _scale_inf(A)
    cut = tol.eig_cut(scale)
    det = determinant(A)

    if A.is_exact:
        if A.n > _EXACT_ORDER_GUARD:
            raise ValueError(f"exact classification guard exceeded (n > {_EXACT_ORDER_GUARD})")
        rows = _exact_rows(A)
        signature = _exact.signature_from_char_coeffs(_exact.char_coeffs(rows))
        witnesses = _drop_one_witnesses_exact(rows, cut)
        det_negative = _exact.exact_sign(det) < 0
        if det_negative:
            if all(w.pd for w in witnesses):
                cls = Classification.LOCALLY_PD
            elif all(w.psd for w in witnesses):
                cls = Classification.LOCALLY_PSD
            else:
                cls = Classification.NONE
        else:
            if _exact.is_pd(rows):
                cls = Classification.PD
            elif _exact.is_psd(rows):
                cls = Classification.PSD
            else:
                cls = Classification.NONE
        return MembershipReport(cls, det, signature, witnesses)

    arr = _array(A)
    w = _backend.eigvals(arr)
    neg = int(np.sum(w < -cut))
    pos = int(np.sum(w > cut))
    signature = (neg, A.n - neg - pos, pos)
    witnesses = _drop_one_witnesses_float(arr, cut)
    if det < tol.det_cut(scale, A.n):
        if all(wi.pd for wi in witnesses):
            cls = Classification.LOCALLY_PD
        elif all(wi.psd for wi in witnesses):
            cls = Classification.LOCALLY_PSD
        else:
            cls = Classification.NONE
    else:
        lam = float(w[0])
        if lam > cut:
            cls = Classification.PD
        elif lam >= -cut:
            cls = Classification.PSD
        else:
            cls = Classification.NONE
    return MembershipReport(cls, det, signature, witnesses)
