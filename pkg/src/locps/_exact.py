"""Exact linear algebra over the rationals and a real quadratic extension.

Scalars are either `fractions.Fraction` or `QuadExt`, a number a + b*sqrt(q)
with rational a, b and a fixed rational q >= 0.  Both support exact field
arithmetic and exact sign determination, which is all the routines here need:
determinants (fraction-free Bareiss for rational matrices, pivoted Gaussian
elimination for general exact fields), linear solves, principal-minor scans
for PSD/PD decisions, and eigenvalue sign counts via Descartes' rule applied
to the characteristic polynomial (exact because symmetric matrices have only
real eigenvalues).

Everything operates on plain lists of lists; callers own the matrix wrapper.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations


class QuadExt:
    """Exact scalar a + b*sqrt(q) with rational a, b and fixed rational q >= 0.

    Arithmetic between two QuadExt values requires the same q; Fractions and
    ints lift automatically.  Division goes through the conjugate, so the
    type is closed under all four field operations.
    """

    __slots__ = ("a", "b", "q")

    def __init__(self, a, b, q):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.q = Fraction(q)
        if self.q < 0:
            raise ValueError("quadratic extension requires q >= 0")

    def _lift(self, other):
        if isinstance(other, QuadExt):
            if other.q != self.q and other.b and self.b:
                raise ValueError("mixed quadratic extensions")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadExt(other, 0, self.q)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return QuadExt(self.a + o.a, self.b + o.b, self.q)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.q)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return QuadExt(self.a - o.a, self.b - o.b, self.q)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return QuadExt(
            self.a * o.a + self.b * o.b * self.q,
            self.a * o.b + self.b * o.a,
            self.q,
        )

    __rmul__ = __mul__

    def _inverse(self):
        norm = self.a * self.a - self.b * self.b * self.q
        if norm == 0:
            raise ZeroDivisionError("division by zero quadratic scalar")
        return QuadExt(self.a / norm, -self.b / norm, self.q)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self * o._inverse()

    def __rtruediv__(self, other):
        return self._inverse() * other

    def __eq__(self, other):
        if isinstance(other, QuadExt):
            if self.b == 0 and other.b == 0:
                return self.a == other.a
            return self.a == other.a and self.b == other.b and self.q == other.q
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.q))

    def sign(self):
        """Exact sign of a + b*sqrt(q): compare a^2 against b^2*q."""
        sa = _frac_sign(self.a)
        sb = _frac_sign(self.b) if self.q != 0 else 0
        if sb == 0:
            return sa
        if sa == 0:
            return sb
        if sa == sb:
            return sa
        # Opposite signs: the larger of |a| and |b|*sqrt(q) wins.
        diff = self.a * self.a - self.b * self.b * self.q
        if diff == 0:
            return 0
        return sa if diff > 0 else sb

    def __bool__(self):
        return self.sign() != 0

    @property
    def is_rational(self):
        return self.b == 0 or self.q == 0

    def as_fraction(self):
        if not self.is_rational:
            raise ValueError(f"{self!r} is irrational")
        return self.a if self.b == 0 else self.a  # q == 0 collapses sqrt term

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(float(self.q))

    def __repr__(self):
        if self.b == 0:
            return f"QuadExt({self.a})"
        return f"QuadExt({self.a} + {self.b}*sqrt({self.q}))"


def _frac_sign(x):
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


def exact_sign(x):
    """Sign (-1, 0, 1) of an exact scalar."""
    if isinstance(x, QuadExt):
        return x.sign()
    return _frac_sign(x)


def is_exact_scalar(x):
    return isinstance(x, (int, Fraction, QuadExt))


def det_exact(rows):
    """Determinant of an exact square matrix (list of lists).

    Rational matrices go through fraction-free Bareiss elimination on a
    denominator-cleared integer copy; matrices containing QuadExt entries use
    pivoted Gaussian elimination with exact field arithmetic.  The empty
    matrix has determinant 1 by convention.
    """
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if all(isinstance(x, (int, Fraction)) for row in rows for x in row):
        return _det_bareiss(rows)
    return _det_gauss(rows)


def _det_bareiss(rows):
    n = len(rows)
    scale = 1
    m = []
    for row in rows:
        fracs = [Fraction(x) for x in row]
        l = math.lcm(*(f.denominator for f in fracs)) if fracs else 1
        scale *= l
        m.append([int(f * l) for f in fracs])

    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            ri, rk = m[i], m[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * pivot - mik * rk[j]) // prev
            ri[k] = 0
        prev = pivot
    return Fraction(sign * m[n - 1][n - 1], scale)


def _det_gauss(rows):
    n = len(rows)
    m = [list(row) for row in rows]
    sign = 1
    det = None
    for k in range(n):
        piv = None
        for i in range(k, n):
            if exact_sign(m[i][k]) != 0:
                piv = i
                break
        if piv is None:
            zero = m[k][k] - m[k][k]
            return zero
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        pivot = m[k][k]
        det = pivot if det is None else det * pivot
        for i in range(k + 1, n):
            factor = m[i][k] / pivot
            ri, rk = m[i], m[k]
            for j in range(k, n):
                ri[j] = ri[j] - factor * rk[j]
    return det if sign > 0 else -det


def det_cofactor(rows):
    """Determinant by cofactor expansion along the first row.

    Independent of the elimination routes; works for float, Fraction and
    QuadExt entries alike.  Exponential, so callers guard the order.
    """
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = None
    for j in range(n):
        a0j = rows[0][j]
        minor = [[row[c] for c in range(n) if c != j] for row in rows[1:]]
        term = a0j * det_cofactor(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total


def solve_exact(a_rows, b_rows):
    """Solve A X = B exactly by Gauss–Jordan with partial (first nonzero) pivoting.

    Raises ValueError if A is singular.  B is a list of rows; the solution is
    returned in the same layout.
    """
    n = len(a_rows)
    w = [list(ar) + list(br) for ar, br in zip(a_rows, b_rows)]
    ncols = len(w[0]) if n else 0
    for k in range(n):
        piv = None
        for i in range(k, n):
            if exact_sign(w[i][k]) != 0:
                piv = i
                break
        if piv is None:
            raise ValueError("singular pivot block")
        if piv != k:
            w[k], w[piv] = w[piv], w[k]
        pivot = w[k][k]
        w[k] = [x / pivot for x in w[k]]
        for i in range(n):
            if i != k:
                f = w[i][k]
                if exact_sign(f) != 0:
                    w[i] = [x - f * y for x, y in zip(w[i], w[k])]
    return [row[n:ncols] for row in w]


def submatrix(rows, idx):
    return [[rows[i][j] for j in idx] for i in idx]


def principal_minors(rows, order=None):
    """Yield (index_tuple, minor) over principal submatrices.

    `order` restricts to one size; default scans sizes 1..n in ascending
    order (cheapest minors first, which suits early-exit sign tests).
    """
    n = len(rows)
    sizes = [order] if order is not None else range(1, n + 1)
    for k in sizes:
        for idx in combinations(range(n), k):
            yield idx, det_exact(submatrix(rows, idx))


def is_psd(rows):
    """Exact PSD test: every principal minor is nonnegative."""
    for _, minor in principal_minors(rows):
        if exact_sign(minor) < 0:
            return False
    return True


def is_pd(rows):
    """Exact PD test: leading principal minors are positive (Sylvester)."""
    n = len(rows)
    for k in range(1, n + 1):
        idx = tuple(range(k))
        if exact_sign(det_exact(submatrix(rows, idx))) <= 0:
            return False
    return True


def char_coeffs(rows):
    """Elementary symmetric polynomials e_0..e_n of the eigenvalues.

    e_k equals the sum of all order-k principal minors, so the list is exact
    and doubles as the coefficient sequence of det(tI - A) up to signs.
    """
    n = len(rows)
    coeffs = [Fraction(1)]
    for k in range(1, n + 1):
        total = None
        for _, minor in principal_minors(rows, order=k):
            total = minor if total is None else total + minor
        coeffs.append(total)
    return coeffs


def signature_from_char_coeffs(coeffs):
    """(negative, zero, positive) eigenvalue counts from e_0..e_n.

    det(tI - A) = sum_k (-1)^k e_k t^(n-k) has only real roots for symmetric
    A, so Descartes' rule gives the positive-root count exactly; the zero
    multiplicity is the run of vanishing trailing coefficients.
    """
    n = len(coeffs) - 1
    signs = []
    for k, e in enumerate(coeffs):
        s = exact_sign(e)
        signs.append(-s if k % 2 else s)
    zero = 0
    while zero < n and signs[n - zero] == 0:
        zero += 1
    pos = 0
    prev = signs[0]
    for s in signs[1:]:
        if s == 0:
            continue
        if s != prev:
            pos += 1
        prev = s
    return (n - zero - pos, zero, pos)


def rational_sqrt(x):
    """Exact square root of a nonnegative Fraction, or None if irrational."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("negative radicand")
    if x == 0:
        return Fraction(0)
    rn = math.isqrt(x.numerator)
    rd = math.isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    return None
