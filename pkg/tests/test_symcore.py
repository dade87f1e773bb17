"""Core symmetric-matrix kernels: submatrices, determinants (vs the cofactor
oracle), eigenvalues, Schur complements, normalization, minor sums."""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from locps._exact import QuadExt
from locps.symcore import (
    IndexSet,
    Spectrum,
    SymMatrix,
    determinant,
    determinant_cofactor,
    eigenvalues,
    normalize_unit_diagonal,
    principal_submatrix,
    schur_complement,
    sum_principal_minors,
)

F = Fraction


def offdiag(n, x):
    """Unit diagonal, constant off-diagonal -x (exact when x is exact)."""
    return SymMatrix([[1 if i == j else -x for j in range(n)] for i in range(n)])


def quarter6():
    return offdiag(6, F(1, 4))


def rand_sym(rng, n, scale=1.0):
    g = rng.standard_normal((n, n)) * scale
    return SymMatrix(0.5 * (g + g.T))


def rand_rational(rng, n, denom=7):
    rows = [[F(int(rng.integers(-9, 10)), int(rng.integers(1, denom))) for _ in range(n)] for _ in range(n)]
    return SymMatrix([[rows[min(i, j)][max(i, j)] for j in range(n)] for i in range(n)])


def rand_pd(rng, n):
    g = rng.standard_normal((n + 2, n))
    return SymMatrix(g.T @ g + 0.3 * np.eye(n))


# ---------------------------------------------------------------------------
# Types
# ---------------------------------------------------------------------------


class TestIndexSet:
    def test_validation(self):
        with pytest.raises(ValueError):
            IndexSet((2, 1))
        with pytest.raises(ValueError):
            IndexSet((0, 1))
        with pytest.raises(ValueError):
            IndexSet.from_iterable([1, 1, 2])
        assert IndexSet.from_iterable([3, 1]).indices == (1, 3)

    @given(st.sets(st.integers(1, 12)), st.integers(12, 20))
    def test_complement_partitions(self, members, n):
        s = IndexSet.from_iterable(members)
        c = s.complement(n)
        assert set(s) | set(c) == set(range(1, n + 1))
        assert set(s) & set(c) == set()

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            IndexSet.of(5).validate_within(4)

    def test_set_algebra(self):
        a, b = IndexSet.of(1, 2, 3, 4), IndexSet.of(3, 4, 5, 6)
        assert a.intersection(b).indices == (3, 4)
        assert a.union(b).indices == (1, 2, 3, 4, 5, 6)
        assert a.difference(b).indices == (1, 2)


class TestSymMatrix:
    def test_mirrors_upper_triangle(self):
        a = SymMatrix([[1.0, 2.0], [999.0, 3.0]])
        assert a[1, 0] == 2.0

    def test_mode_inference(self):
        assert SymMatrix([[1, 0], [0, 1]]).mode == "rational"
        assert SymMatrix([[1.0, 0], [0, 1]]).mode == "float"
        assert SymMatrix([[QuadExt(1, 0, 2), QuadExt(0, 1, 2)], [0, 1]]).mode == "quadratic"

    def test_mixed_entries_rejected(self):
        with pytest.raises(TypeError):
            SymMatrix([[1.0, QuadExt(0, 1, 2)], [0, 1]])
        with pytest.raises(TypeError):
            SymMatrix([[0.5, 0], [0, 1]], mode="rational")

    def test_rational_entries_normalized(self):
        a = SymMatrix([[F(2, 4), 1], [1, F(6, 3)]])
        assert a[0, 0] == F(1, 2) and a[1, 1] == 2

    def test_equality(self):
        assert offdiag(3, 1) == offdiag(3, 1)
        assert offdiag(3, 1) != offdiag(3, F(1, 2))

    def test_non_square_rejected(self):
        with pytest.raises(ValueError):
            SymMatrix([[1, 2, 3], [2, 1, 3]])


def test_spectrum_requires_ascending():
    with pytest.raises(ValueError):
        Spectrum((2.0, 1.0))
    assert Spectrum(()).lambda_min == float("inf")


# ---------------------------------------------------------------------------
# principal_submatrix
# ---------------------------------------------------------------------------


class TestPrincipalSubmatrix:
    def test_quarter6_pair(self):
        sub = principal_submatrix(quarter6(), IndexSet.of(3, 4))
        assert sub == SymMatrix([[1, F(-1, 4)], [F(-1, 4), 1]])

    def test_full_selection_is_identity(self):
        a = offdiag(4, F(1, 3))
        assert principal_submatrix(a, range(1, 5)) == a

    def test_offdiag_sub_block(self):
        sub = principal_submatrix(offdiag(4, F(1, 2)), [1, 2, 3])
        assert sub == offdiag(3, F(1, 2))

    def test_empty_has_unit_determinant(self):
        sub = principal_submatrix(offdiag(3, 1), ())
        assert sub.n == 0
        assert determinant(sub) == 1

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            principal_submatrix(offdiag(3, 1), [4])


# ---------------------------------------------------------------------------
# determinant + cofactor oracle
# ---------------------------------------------------------------------------


class TestDeterminant:
    def test_offdiag3_full_coupling(self):
        assert determinant(offdiag(3, 1)) == -4

    def test_identity(self):
        assert determinant(SymMatrix(np.eye(5))) == pytest.approx(1.0)
        assert determinant(SymMatrix([[1, 0], [0, 1]])) == 1

    def test_quarter6(self):
        assert determinant(quarter6()) == F(-3125, 4096)

    def test_cofactor_guard(self):
        with pytest.raises(ValueError, match="guard"):
            determinant_cofactor(SymMatrix(np.eye(11)))

    @given(st.integers(1, 5), st.integers(0, 2**32 - 1))
    @settings(max_examples=60, deadline=None)
    def test_oracle_agreement_rational(self, n, seed):
        a = rand_rational(np.random.default_rng(seed), n)
        assert determinant(a) == determinant_cofactor(a)

    def test_oracle_agreement_rational_larger(self):
        rng = np.random.default_rng(7)
        for n in range(6, 9):
            a = rand_rational(rng, n)
            assert determinant(a) == determinant_cofactor(a)

    def test_oracle_agreement_float(self):
        rng = np.random.default_rng(3)
        for n in range(1, 9):
            a = rand_sym(rng, n)
            d, o = determinant(a), determinant_cofactor(a)
            assert d == pytest.approx(o, rel=1e-12, abs=1e-13)


# ---------------------------------------------------------------------------
# eigenvalues
# ---------------------------------------------------------------------------


class TestEigenvalues:
    def test_quarter6_spectrum(self):
        w = eigenvalues(quarter6().to_float())
        expect = [-0.25] + [1.25] * 5
        assert np.allclose(list(w), expect, atol=1e-12)

    def test_identity(self):
        assert list(eigenvalues(SymMatrix(np.eye(3)))) == [1.0, 1.0, 1.0]

    def test_offdiag4_half_vs_charpoly(self):
        a = offdiag(4, F(1, 2))
        w = np.array(list(eigenvalues(a.to_float())))
        assert np.allclose(w, [-0.5, 1.5, 1.5, 1.5], atol=1e-12)
        # cross-check against the characteristic polynomial built from exact
        # minor sums: coefficients of prod(t - lambda_i)
        coeffs = [float((-1) ** k * sum_principal_minors(a, k)) for k in range(5)]
        roots = np.sort(np.roots(coeffs))
        assert np.allclose(roots, w, atol=1e-8)

    def test_reconstruction_and_trace_contract(self):
        rng = np.random.default_rng(11)
        a = rand_sym(rng, 64, scale=3.0)
        arr = a.to_numpy()
        from locps._backend import eigh

        w, v = eigh(arr)
        scale = max(1.0, np.linalg.norm(arr))
        assert np.linalg.norm(arr - v @ np.diag(w) @ v.T) <= 1e-10 * scale
        assert abs(np.sum(w) - np.trace(arr)) <= 1e-10 * scale
        assert abs(sum(eigenvalues(a)) - np.trace(arr)) <= 1e-10 * scale

    def test_exact_mode_rejected(self):
        with pytest.raises(TypeError):
            eigenvalues(offdiag(3, 1))


# ---------------------------------------------------------------------------
# schur_complement
# ---------------------------------------------------------------------------


class TestSchurComplement:
    def test_quarter6_pair_block(self):
        s = schur_complement(quarter6(), IndexSet.of(3, 4))
        expect = SymMatrix(
            [[F(5, 6) if i == j else F(-5, 12) for j in range(4)] for i in range(4)]
        )
        assert s == expect
        # determinant identity, exactly
        assert determinant(quarter6()) == F(15, 16) * determinant(s)

    def test_block_diagonal(self):
        b = [[2, 1], [1, 2]]
        c = [[3, 0, 1], [0, 4, 0], [1, 0, 5]]
        a = SymMatrix(
            [
                [2, 1, 0, 0, 0],
                [1, 2, 0, 0, 0],
                [0, 0, 3, 0, 1],
                [0, 0, 0, 4, 0],
                [0, 0, 1, 0, 5],
            ]
        )
        assert schur_complement(a, [1, 2]) == SymMatrix(c)
        assert schur_complement(a, [3, 4, 5]) == SymMatrix(b)

    def test_fisher_sharp3_corner(self):
        # B = I2 - (3/8) J2 bordered by s*ones with s^2 = 5/8; eliminating the
        # 2x2 block leaves the 1x1 matrix [1 - 8*s^2] = [-4], consistent with
        # det(A) = det(B) * (-4) = (1/4)(-4) = -1.
        s = QuadExt(0, 1, F(5, 8))
        a = SymMatrix(
            [
                [F(5, 8), F(-3, 8), s],
                [F(-3, 8), F(5, 8), s],
                [s, s, 1],
            ]
        )
        comp = schur_complement(a, [1, 2])
        assert comp.n == 1
        assert comp[0, 0] == F(-4)
        assert determinant(a) == F(-1)

    def test_float_identity_property(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            n = int(rng.integers(2, 8))
            a = rand_pd(rng, n)
            k = int(rng.integers(1, n))
            alpha = IndexSet.from_iterable(rng.choice(n, size=k, replace=False) + 1)
            s = schur_complement(a, alpha)
            lhs = determinant(a)
            rhs = determinant(principal_submatrix(a, alpha)) * determinant(s)
            assert lhs == pytest.approx(rhs, rel=1e-10)

    def test_singular_block(self):
        a = SymMatrix([[0, 0], [0, 1]])
        with pytest.raises(ValueError, match="[Ss]ingular"):
            schur_complement(a, [1])
        with pytest.raises(ValueError, match="[Ss]ingular"):
            schur_complement(a.to_float(), [1])

    def test_quotient_property_exact(self):
        # nested-block quotient: A/B = (A/C)/(B/C) for C inside B
        rng = np.random.default_rng(13)
        for _ in range(10):
            g = rand_rational(rng, 5, denom=4)
            rows = g.rows()
            a = SymMatrix(
                [
                    [rows[i][j] + (6 if i == j else 0) for j in range(5)]
                    for i in range(5)
                ]
            )
            big = IndexSet.of(2, 4)
            small = IndexSet.of(2)
            direct = schur_complement(a, big)
            partial = schur_complement(a, small)
            # big \ small = {4}, which sits at position 3 of {1,3,4,5}
            inner = schur_complement(partial, [3])
            assert direct == inner


class TestQuotientPropertyFloat:
    def test_random_pd(self):
        rng = np.random.default_rng(17)
        for _ in range(30):
            n = int(rng.integers(3, 9))
            a = rand_pd(rng, n)
            sizes = rng.choice(n, size=int(rng.integers(2, n)), replace=False) + 1
            big = IndexSet.from_iterable(sizes)
            inner_pick = sorted(rng.choice(len(big), size=int(rng.integers(1, len(big))), replace=False))
            small = IndexSet.from_iterable(big.indices[i] for i in inner_pick)
            direct = schur_complement(a, big)
            partial = schur_complement(a, small)
            rest = small.complement(n)
            mid_positions = [rest.indices.index(i) + 1 for i in big.difference(small)]
            inner = schur_complement(partial, mid_positions)
            assert np.allclose(direct.to_numpy(), inner.to_numpy(), atol=1e-10)


# ---------------------------------------------------------------------------
# normalize_unit_diagonal
# ---------------------------------------------------------------------------


class TestNormalize:
    def test_rank_one_sign_pattern(self):
        a = SymMatrix([[4, -2], [-2, 1]])
        assert normalize_unit_diagonal(a) == SymMatrix([[1, -1], [-1, 1]])

    def test_unit_diagonal_fixed_point(self):
        a = offdiag(4, F(1, 3))
        assert normalize_unit_diagonal(a) == a

    def test_three_by_three(self):
        a = SymMatrix([[4, -2, -2], [-2, 1, -1], [-2, -1, 1]])
        assert normalize_unit_diagonal(a) == offdiag(3, 1)

    def test_det_identity_float(self):
        rng = np.random.default_rng(23)
        for _ in range(25):
            n = int(rng.integers(2, 9))
            a = rand_pd(rng, n)
            b = normalize_unit_diagonal(a)
            prod_diag = float(np.prod(a.diagonal()))
            assert determinant(b) == pytest.approx(determinant(a) / prod_diag, rel=1e-12)

    def test_nonpositive_diagonal(self):
        with pytest.raises(ValueError, match="diagonal"):
            normalize_unit_diagonal(SymMatrix([[0, 1], [1, 1]]))
        with pytest.raises(ValueError, match="diagonal"):
            normalize_unit_diagonal(SymMatrix([[-1.0, 0.0], [0.0, 1.0]]))

    def test_irrational_root_rejected(self):
        with pytest.raises(ValueError, match="irrational"):
            normalize_unit_diagonal(SymMatrix([[2, 1], [1, 1]]))


# ---------------------------------------------------------------------------
# sum_principal_minors
# ---------------------------------------------------------------------------


class TestMinorSums:
    def test_offdiag3_order2(self):
        assert sum_principal_minors(offdiag(3, 1), 2) == 0

    def test_extremes(self):
        a = offdiag(4, F(1, 2))
        assert sum_principal_minors(a, 4) == determinant(a)
        assert sum_principal_minors(a, 1) == 4
        assert sum_principal_minors(a, 0) == 1

    def test_guard(self):
        with pytest.raises(ValueError, match="guard"):
            sum_principal_minors(SymMatrix(np.eye(21)), 2)
        with pytest.raises(ValueError):
            sum_principal_minors(offdiag(3, 1), 4)

    def test_matches_elementary_symmetric(self):
        rng = np.random.default_rng(31)
        for _ in range(20):
            n = int(rng.integers(2, 9))
            a = rand_sym(rng, n)
            w = np.array(list(eigenvalues(a)))
            for k in range(n + 1):
                e_k = 0.0
                from itertools import combinations

                for idx in combinations(range(n), k):
                    e_k += float(np.prod(w[list(idx)])) if idx else 1.0
                got = sum_principal_minors(a, k)
                assert got == pytest.approx(e_k, rel=1e-9, abs=1e-9)


def test_operations_return_exact_symmetry():
    rng = np.random.default_rng(41)
    a = rand_pd(rng, 6)
    for m in (
        principal_submatrix(a, [1, 3, 5]),
        schur_complement(a, [2, 4]),
        normalize_unit_diagonal(a),
    ):
        arr = m.to_numpy()
        assert np.array_equal(arr, arr.T)
