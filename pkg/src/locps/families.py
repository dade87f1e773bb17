"""Constructors for the named extremal and counterexample matrix families:
equality cases of the extended Hadamard / leading-block / Fischer bounds, the
rank-one-coupling approach family, and the small matrices showing where the
bounds degenerate or need their hypotheses.

Every family with rational parameters is built in exact rational mode; the
Fischer-sharpness family has an irrational border s = sqrt(s^2) and is built
either as floats (default) or exactly over the quadratic extension field
(``exact=True``), where all principal minors are polynomial in s^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ._exact import QuadExt
from .symcore import SymMatrix

F = Fraction


def _is_exact_param(x):
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def uniform_offdiag(n, x, allow_out_of_regime=False):
    """Unit diagonal with constant off-diagonal entries -x.

    The membership regime is 0 < x <= 1/(n-2); x = 1/(n-2) attains the
    extended Hadamard bound, while x <= 1/(n-1) keeps the determinant
    nonnegative (the matrix stays PSD rather than locally PSD).  Values
    outside the regime are for boundary probing and need an explicit flag.
    """
    if n < 3:
        raise ValueError("uniform_offdiag needs n >= 3")
    if not allow_out_of_regime:
        limit = F(1, n - 2)
        inside = (x > 0) and (x <= limit if _is_exact_param(x) else x <= float(limit))
        if not inside:
            raise ValueError(
                f"x={x} outside the regime 0 < x <= 1/(n-2); "
                "pass allow_out_of_regime=True to probe"
            )
    if _is_exact_param(x):
        x = F(x)
    entries = [[1 if i == j else -x for j in range(n)] for i in range(n)]
    return SymMatrix(entries)


def ar_family(n, r):
    """(1-r) I + r 11^T: rank-one coupling with eigenvalues 1-r (n-1 times)
    and 1 + (n-1)r, hence det = (1-r)^(n-1) (1 + (n-1)r).

    For -1/(n-2) < r < -1/(n-1) every proper principal submatrix is PD while
    the determinant is negative; as r approaches -1/(n-2) the determinant
    approaches the extended Hadamard constant.
    """
    if n < 3:
        raise ValueError("ar_family needs n >= 3")
    if _is_exact_param(r):
        r = F(r)
    entries = [[1 if i == j else r for j in range(n)] for i in range(n)]
    return SymMatrix(entries)


def bordered_equality(n):
    """Singular uniform block bordered by ones: attains the leading-block
    bound with equality.

    The top-left (n-1)-block has unit diagonal and off-diagonal -1/(n-2), so
    det(B) = 0; the border is all ones and the corner is 1.
    """
    if n < 3:
        raise ValueError("bordered_equality needs n >= 3")
    x = F(1, n - 2)
    m = n - 1
    entries = [[None] * n for _ in range(n)]
    for i in range(m):
        for j in range(m):
            entries[i][j] = F(1) if i == j else -x
        entries[i][n - 1] = entries[n - 1][i] = F(1)
    entries[n - 1][n - 1] = F(1)
    return SymMatrix(entries)


@dataclass(frozen=True)
class FisherSharpParameters:
    p: Fraction
    t: Fraction
    s_squared: Fraction


def fisher_sharp_parameters(n):
    """Exact parameters (p, t, s^2) of the Fischer-sharpness family."""
    if n < 3:
        raise ValueError("fisher_sharp needs n >= 3")
    p = F(n - 2, n - 1) ** (n - 1)
    t = (1 - p) / (n - 1)
    s2 = (1 + (n - 2) * p) / ((n - 1) * (n - 2))
    return FisherSharpParameters(p, t, s2)


def fisher_sharp(n, exact=False):
    """Singular-bordered family attaining the extended Fischer bound at
    alpha = {n}: B = I - t J of order n-1, border s*1 with the s^2 above,
    corner 1.  det = -1/(n-2); deleting any row i < n leaves a singular PSD
    submatrix.

    s is irrational, so the default is a float matrix; ``exact=True``
    represents s in the quadratic extension field, keeping every principal
    minor exactly computable (they are all rational in s^2).
    """
    par = fisher_sharp_parameters(n)
    m = n - 1
    if exact:
        s = QuadExt(0, 1, par.s_squared)
        one = F(1)
    else:
        s = math.sqrt(par.s_squared)
        one = 1.0
    t = par.t if exact else float(par.t)
    entries = [[None] * n for _ in range(n)]
    for i in range(m):
        for j in range(m):
            entries[i][j] = (one - t) if i == j else -t
        entries[i][n - 1] = entries[n - 1][i] = s
    entries[n - 1][n - 1] = one
    return SymMatrix(entries)


def kotel_example():
    """The 6x6 quarter-coupling example: unit diagonal, off-diagonal -1/4."""
    return uniform_offdiag(6, F(1, 4))


def counterexample_2x2(t):
    """[[1, t], [t, 1]]: for t > 1 all order-1 submatrices are PD while the
    determinant 1 - t^2 is unboundedly negative, so no order-2 analogue of
    the lower bounds can exist."""
    if _is_exact_param(t):
        t = F(t)
    return SymMatrix([[1 if i == j else t for j in range(2)] for i in range(2)])


def counterexample_bordered(t):
    """[[1,0,t],[0,1,0],[t,0,1]]: violates the border condition
    |b_1| <= sqrt(a_11 a_33) for t > 1 and drops below the leading-block
    bound once t > sqrt(5)."""
    if _is_exact_param(t):
        t = F(t)
    z = 0 if _is_exact_param(t) else 0.0
    o = 1 if _is_exact_param(t) else 1.0
    return SymMatrix([[o, z, t], [z, o, z], [t, z, o]])
