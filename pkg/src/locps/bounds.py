"""Bound constants and determinant-inequality verdicts.

Every checker computes both sides and reports an explicit verdict with slack;
none of them assumes the inequality it probes.  The extended (lower-bound)
inequalities hold a negative coefficient -constant times a product of minors
on the right-hand side; the classical inequalities are upper bounds for PSD
matrices.  Preconditions are evaluated and reported, and a verdict is still
produced when they fail (preconditions_met=False never implies holds).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from . import _exact
from .cone import (
    DEFAULT_TOLERANCE,
    Classification,
    MembershipReport,
    classify_membership,
    _scale_inf,
)
from .symcore import IndexSet, SymMatrix, _as_index_set, determinant, principal_submatrix

F = Fraction

SLACK_TOL = 1e-9

RELATION_LOWER = "lower"  # inequality reads lhs >= rhs
RELATION_UPPER = "upper"  # inequality reads lhs <= rhs


class InequalityId(str, Enum):
    EXT_HADAMARD = "EXT_HADAMARD"
    LEADING_BLOCK = "LEADING_BLOCK"
    EXT_FISHER = "EXT_FISHER"
    EXT_KOTELJANSKII = "EXT_KOTELJANSKII"
    CLASSICAL_HADAMARD = "CLASSICAL_HADAMARD"
    CLASSICAL_FISHER = "CLASSICAL_FISHER"
    CLASSICAL_KOTELJANSKII = "CLASSICAL_KOTELJANSKII"


@dataclass(frozen=True)
class PreconditionCheck:
    name: str
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class BoundVerdict:
    """One inequality evaluation.

    slack is the satisfaction margin (lhs - rhs for lower bounds, rhs - lhs
    for upper bounds), so holds <=> slack >= -tol uniformly.  constant is the
    positive magnitude of the bound coefficient (1 for the classical upper
    bounds).  Exact inputs yield exact lhs/rhs/slack and an exact sign test.
    """

    inequality_id: InequalityId
    lhs: object
    rhs: object
    slack: object
    holds: bool
    constant: Fraction
    relation: str
    preconditions: tuple[PreconditionCheck, ...]

    @property
    def preconditions_met(self):
        return all(c.ok for c in self.preconditions)


def hadamard_constant(n):
    """c_H(n) = -(1/(n-2)) ((n-1)/(n-2))^(n-1), the extended Hadamard
    coefficient; exact."""
    if n < 3:
        raise ValueError("hadamard_constant needs n >= 3")
    return -F(1, n - 2) * F(n - 1, n - 2) ** (n - 1)


def leading_constant(n):
    """c_L(n) = -(n-1) ((n-1)/(n-2))^(n-2), the leading-block coefficient;
    exact."""
    if n < 3:
        raise ValueError("leading_constant needs n >= 3")
    return -(n - 1) * F(n - 1, n - 2) ** (n - 2)


def _finish(iid, lhs, rhs, relation, constant, pre, exact, slack_tol):
    slack = (lhs - rhs) if relation == RELATION_LOWER else (rhs - lhs)
    if exact:
        holds = _exact.exact_sign(slack) >= 0
    else:
        holds = slack >= -slack_tol * max(1.0, abs(lhs), abs(rhs))
    return BoundVerdict(iid, lhs, rhs, slack, holds, constant, relation, tuple(pre))


def _membership_check(A, tol, membership=None, label="matrix"):
    rep = membership if membership is not None else classify_membership(A, tol)
    ok = rep.classification in (Classification.LOCALLY_PSD, Classification.LOCALLY_PD)
    return (
        PreconditionCheck(
            "locally_psd_membership",
            ok,
            f"{label} classified {rep.classification.value}",
        ),
        rep,
    )


def _diag_product(A):
    diag = A.diagonal()
    if A.is_exact:
        prod = F(1)
        for d in diag:
            prod = prod * d
        return prod
    out = 1.0
    for d in diag:
        out *= d
    return out


def check_extended_hadamard(A, tol=None, slack_tol=SLACK_TOL, membership=None):
    """det(A) >= c_H(n) * a_11...a_nn, probed for locally PSD members."""
    if A.n < 3:
        raise ValueError("extended Hadamard bound needs n >= 3")
    tol = tol or DEFAULT_TOLERANCE
    c = hadamard_constant(A.n)
    pre, _ = _membership_check(A, tol, membership)
    lhs = determinant(A)
    prod = _diag_product(A)
    rhs = c * prod if A.is_exact else float(c) * prod
    return _finish(
        InequalityId.EXT_HADAMARD, lhs, rhs, RELATION_LOWER, -c, [pre], A.is_exact, slack_tol
    )


def check_leading_block(A, tol=None, slack_tol=SLACK_TOL):
    """det(A) >= c_L(n) * a_11...a_nn for a PSD leading block and a bounded
    border (the conditions are reported individually)."""
    if A.n < 3:
        raise ValueError("leading-block bound needs n >= 3")
    tol = tol or DEFAULT_TOLERANCE
    n = A.n
    c = leading_constant(n)
    lhs = determinant(A)
    block = principal_submatrix(A, range(1, n))
    diag = A.diagonal()
    corner = diag[-1]
    border = [A[i, n - 1] for i in range(n - 1)]

    pre = []
    if A.is_exact:
        rows = [list(r) for r in block.rows()]
        b_psd = _exact.is_psd(rows)
        det_ok = _exact.exact_sign(lhs) <= 0
        corner_ok = _exact.exact_sign(corner) >= 0
        bad = [
            i + 1
            for i, b in enumerate(border)
            if _exact.exact_sign(b * b - diag[i] * corner) > 0
        ]
    else:
        scale = _scale_inf(A)
        cut = tol.eig_cut(scale)
        from . import _backend

        lam = float(_backend.eigvals(block.to_numpy())[0])
        b_psd = lam >= -cut
        det_ok = lhs <= -tol.det_cut(scale, n)
        corner_ok = corner >= -cut
        bad = [i + 1 for i, b in enumerate(border) if b * b > diag[i] * corner + cut]
    pre.append(PreconditionCheck("leading_block_psd", b_psd, "B = A[{1..n-1}]"))
    pre.append(PreconditionCheck("det_nonpositive", det_ok, f"det(A) = {lhs}"))
    pre.append(PreconditionCheck("corner_nonnegative", corner_ok, f"a_nn = {corner}"))
    pre.append(
        PreconditionCheck(
            "border_bounded",
            not bad,
            "all |b_i| <= sqrt(a_ii a_nn)" if not bad else f"|b_i| > sqrt(a_ii a_nn) for i in {bad}",
        )
    )
    prod = _diag_product(A)
    rhs = c * prod if A.is_exact else float(c) * prod
    return _finish(
        InequalityId.LEADING_BLOCK, lhs, rhs, RELATION_LOWER, -c, pre, A.is_exact, slack_tol
    )


def check_extended_fisher(A, alpha, tol=None, slack_tol=SLACK_TOL, membership=None):
    """det(A) >= c_H(n) * det(A[alpha]) det(A[alpha^c]) for proper alpha.

    Trivial alpha (empty or full) is rejected: it would make the probe read
    det(A) >= c_H(n) det(A), which is false for every det(A) < 0 member, so
    the partition must be proper for the bound to be meaningful.
    """
    if A.n < 3:
        raise ValueError("extended Fischer bound needs n >= 3")
    alpha = _as_index_set(alpha, A.n)
    if len(alpha) == 0 or len(alpha) == A.n:
        raise ValueError(
            "alpha must be a proper nonempty subset: the trivial split pairs "
            "det(A) with itself and the negative-determinant bound degenerates"
        )
    tol = tol or DEFAULT_TOLERANCE
    c = hadamard_constant(A.n)
    pre, _ = _membership_check(A, tol, membership)
    lhs = determinant(A)
    da = determinant(principal_submatrix(A, alpha))
    dc = determinant(principal_submatrix(A, alpha.complement(A.n)))
    rhs = c * da * dc if A.is_exact else float(c) * da * dc
    return _finish(
        InequalityId.EXT_FISHER, lhs, rhs, RELATION_LOWER, -c, [pre], A.is_exact, slack_tol
    )


def check_extended_koteljanskii(A, alpha, beta, tol=None, slack_tol=SLACK_TOL, membership=None):
    """det(A[aub]) det(A[anb]) >= c_H(r) det(A[a]) det(A[b]) with
    r = |(aub) \\ (anb)| >= 3; the membership precondition applies to A[aub].
    """
    alpha = _as_index_set(alpha, A.n)
    beta = _as_index_set(beta, A.n)
    omega = alpha.union(beta)
    gamma = alpha.intersection(beta)
    r = len(omega) - len(gamma)
    if r < 3:
        raise ValueError(f"symmetric difference must have size >= 3, got r={r}")
    tol = tol or DEFAULT_TOLERANCE
    c = hadamard_constant(r)
    sub = principal_submatrix(A, omega)
    pre, _ = _membership_check(
        sub, tol, membership, label=f"A[{list(omega.indices)}] (order {len(omega)})"
    )
    lhs = determinant(sub) * determinant(principal_submatrix(A, gamma))
    da = determinant(principal_submatrix(A, alpha))
    db = determinant(principal_submatrix(A, beta))
    rhs = c * da * db if A.is_exact else float(c) * da * db
    return _finish(
        InequalityId.EXT_KOTELJANSKII, lhs, rhs, RELATION_LOWER, -c, [pre], A.is_exact, slack_tol
    )


def check_classical(A, alpha, beta, tol=None, slack_tol=SLACK_TOL):
    """The classical Hadamard/Fischer/Koteljanskii upper bounds for PSD
    matrices; returns the three verdicts in that order."""
    alpha = _as_index_set(alpha, A.n)
    beta = _as_index_set(beta, A.n)
    tol = tol or DEFAULT_TOLERANCE
    if A.is_exact:
        psd_ok = _exact.is_psd([list(r) for r in A.rows()])
        detail = "exact principal-minor scan"
    else:
        from . import _backend

        lam = float(_backend.eigvals(A.to_numpy())[0]) if A.n else float("inf")
        psd_ok = lam >= -tol.eig_cut(_scale_inf(A))
        detail = f"lambda_min = {lam}"
    pre = [PreconditionCheck("psd", psd_ok, detail)]

    det_a = determinant(A)
    one = F(1)
    hadamard = _finish(
        InequalityId.CLASSICAL_HADAMARD,
        det_a,
        _diag_product(A),
        RELATION_UPPER,
        one,
        pre,
        A.is_exact,
        slack_tol,
    )
    fisher = _finish(
        InequalityId.CLASSICAL_FISHER,
        det_a,
        determinant(principal_submatrix(A, alpha))
        * determinant(principal_submatrix(A, alpha.complement(A.n))),
        RELATION_UPPER,
        one,
        pre,
        A.is_exact,
        slack_tol,
    )
    kotel = _finish(
        InequalityId.CLASSICAL_KOTELJANSKII,
        determinant(principal_submatrix(A, alpha.union(beta)))
        * determinant(principal_submatrix(A, alpha.intersection(beta))),
        determinant(principal_submatrix(A, alpha))
        * determinant(principal_submatrix(A, beta)),
        RELATION_UPPER,
        one,
        pre,
        A.is_exact,
        slack_tol,
    )
    return hadamard, fisher, kotel
