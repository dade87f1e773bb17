"""Acceptance gate: one test per criterion, at the stated tolerances.

Each test prints a PASS line (visible with ``pytest -s`` or ``-rP``) naming
the criterion it certifies; every expected value is either exact or carries
its tolerance inline.
"""

from fractions import Fraction

import numpy as np
import pytest

from locps.bounds import (
    InequalityId,
    check_classical,
    check_extended_fisher,
    check_extended_hadamard,
    check_leading_block,
    hadamard_constant,
    leading_constant,
)
from locps.cone import Classification, classify_membership, eigen_signature
from locps.families import (
    ar_family,
    bordered_equality,
    counterexample_2x2,
    counterexample_bordered,
    fisher_sharp,
    kotel_example,
    uniform_offdiag,
)
from locps.harness import SampleConfig, fuzz_bound, identity_suite, sample_cone
from locps.symcore import IndexSet, SymMatrix, determinant, principal_submatrix

F = Fraction
NS = range(3, 9)


def _pass(num, msg):
    print(f"PASS criterion {num}: {msg}")


def test_criterion_01_extended_hadamard_fuzz():
    """10^5 fuzz samples across n in 3..8: no violations, ratio floor holds."""
    per_n = 16700
    total = 0
    for n in NS:
        cfg = SampleConfig(n=n, count=per_n, seed=1000 + n)
        rep = fuzz_bound(InequalityId.EXT_HADAMARD, cfg)
        assert rep.violations == [], f"n={n}: {len(rep.violations)} violations"
        floor = float(hadamard_constant(n)) - 1e-9
        assert rep.min_ratio >= floor, f"n={n}: min_ratio {rep.min_ratio} < {floor}"
        total += rep.trials
    assert total >= 10**5
    _pass(1, f"{total} samples, zero violations, min_ratio >= c_H(n) - 1e-9 for all n")


def test_criterion_02_hadamard_sharpness():
    """uniform_offdiag(n, 1/(n-2)) attains the constant exactly (and in float)."""
    for n in range(3, 13):
        a = uniform_offdiag(n, F(1, n - 2))
        prod = F(1)
        for d in a.diagonal():
            prod *= d
        assert determinant(a) / prod == hadamard_constant(n)
        v = check_extended_hadamard(a)
        assert v.slack == 0
        f = check_extended_hadamard(a.to_float())
        c = float(hadamard_constant(n))
        assert abs(f.lhs - c) <= 1e-10 * abs(c)
    _pass(2, "exact ratio equality for n=3..12; float within 1e-10 relative")


def test_criterion_03_ar_convergence():
    """A(r) at r = -1/3 + 1e-6 lands within 1e-4 of the n=5 constant."""
    c5 = hadamard_constant(5)
    assert c5 == F(-256, 243)
    r = F(-1, 3) + F(1, 10**6)
    det = determinant(ar_family(5, r))
    gap = abs(det - c5)
    assert gap <= F(1, 10**4)
    _pass(3, f"|det(A(r)) - c_H(5)| = {float(gap):.3e} <= 1e-4")


def test_criterion_04_leading_block_equality():
    """bordered_equality(n): exact slack 0 with all four preconditions met."""
    for n in NS:
        a = bordered_equality(n)
        v = check_leading_block(a)
        assert v.slack == 0 and isinstance(v.slack, F)
        assert v.preconditions_met
        assert [c.ok for c in v.preconditions] == [True] * 4
        block = principal_submatrix(a, range(1, n))
        assert determinant(block) == 0
    _pass(4, "exact equality and det(B) = 0 for n=3..8")


def test_criterion_05_fisher_sharpness():
    """fisher_sharp(n): member, exact det -1/(n-2), sharp at alpha = {n}."""
    for n in NS:
        exact = fisher_sharp(n, exact=True)
        rep = classify_membership(exact)
        assert rep.classification == Classification.LOCALLY_PSD
        assert determinant(exact) == F(-1, n - 2)
        v_exact = check_extended_fisher(exact, [n])
        assert v_exact.slack == 0
        v_float = check_extended_fisher(fisher_sharp(n), [n])
        assert abs(v_float.slack) <= 1e-9 * max(1.0, abs(v_float.lhs), abs(v_float.rhs))
    _pass(5, "LOCALLY_PSD, det = -1/(n-2) exactly, slack 0 at alpha={n}, n=3..8")


def test_criterion_06_worked_example_fractions():
    """The 6x6 quarter example reproduces the worked fractions exactly and
    emits the computed comparison verdict for that pair of values."""
    from locps.bounds import check_extended_koteljanskii

    v = check_extended_koteljanskii(
        kotel_example(), IndexSet.of(1, 2, 3, 4), IndexSet.of(3, 4, 5, 6)
    )
    assert v.lhs == F(-46875, 65536)
    assert v.constant == F(27, 16)
    assert v.rhs == F(-421875, 1048576)
    assert v.preconditions_met
    # exact comparison of those two fractions: lhs < rhs, so the recorded
    # verdict is holds=False (surfaced, not asserted away)
    assert v.holds is False and v.slack == v.lhs - v.rhs
    _pass(6, "lhs=-46875/65536, constant=27/16, rhs=-421875/1048576, verdict emitted")


def test_criterion_07_signature():
    """Every sampled member across 10^4 draws has exactly one negative eigenvalue."""
    per_n = 1670
    total = 0
    for n in NS:
        cfg = SampleConfig(n=n, count=per_n, seed=2000 + n)
        for m in sample_cone(cfg):
            neg, _, _ = eigen_signature(m)
            assert neg == 1
            total += 1
    assert total >= 10**4
    _pass(7, f"{total} members, all with signature (1, z, n-1-z)")


def test_criterion_08_identity_suite():
    """Characteristic-coefficient, quotient and multiplicativity identities
    pass on 10^3 instances each at 1e-10 relative."""
    per_n = 167
    counts = {"characteristic_coefficients": 0, "schur_quotient": 0, "schur_determinant": 0}
    for n in NS:
        rep = identity_suite(n, per_n, 3000 + n)
        for c in rep.checks:
            if c.name in counts:
                counts[c.name] += c.trials
                assert c.failures == 0, f"{c.name} n={n}"
                assert c.max_err <= 1e-10
    assert all(v >= 10**3 for v in counts.values())
    _pass(8, f"{counts} instances, all within 1e-10 relative")


def test_criterion_09_counterexamples():
    """Order-2 unboundedness and the essential border condition."""
    two = counterexample_2x2(10)
    rep = classify_membership(two)
    assert rep.classification == Classification.LOCALLY_PD
    assert rep.det_value == -99

    v = check_leading_block(counterexample_bordered(3))
    border = [c for c in v.preconditions if c.name == "border_bounded"][0]
    assert not border.ok
    assert v.lhs == -8
    assert v.lhs < leading_constant(3)
    _pass(9, "2x2 member with det -99; border violation with det -8 < c_L(3)")


def test_criterion_10_classical_inequalities():
    """Zero violations over 10^4 Gram-constructed PSD matrices, n <= 8."""
    rng = np.random.default_rng(4000)
    total = 0
    per_n = 1429
    for n in range(2, 9):
        for _ in range(per_n):
            k = int(rng.integers(1, n + 3))
            g = rng.standard_normal((k, n))
            a = SymMatrix(g.T @ g)
            alpha = IndexSet.from_iterable(
                (rng.choice(n, size=int(rng.integers(0, n + 1)), replace=False) + 1)
            )
            beta = IndexSet.from_iterable(
                (rng.choice(n, size=int(rng.integers(0, n + 1)), replace=False) + 1)
            )
            for v in check_classical(a, alpha, beta):
                assert v.preconditions_met
                assert v.holds, (n, v.inequality_id, v.slack)
            total += 1
    assert total >= 10**4
    _pass(10, f"{total} PSD matrices, all three classical bounds hold at 1e-9")


def test_criterion_11_probe_reporting():
    """The boundary probe violating the partitioned lower bound is reported
    as a computed verdict, not silenced."""
    probe_matrix = uniform_offdiag(4, F(1, 2))
    v = check_extended_fisher(probe_matrix, [1, 2, 3])
    assert v.holds is False
    assert v.lhs == F(-27, 16)
    assert v.rhs == 0

    cfg = SampleConfig(n=4, count=20, seed=5000)
    rep = fuzz_bound(
        InequalityId.EXT_FISHER, cfg, probes=[(probe_matrix, [1, 2, 3])]
    )
    surfaced = [
        verdict
        for _, verdict in rep.violations
        if verdict.lhs == F(-27, 16) and verdict.rhs == 0
    ]
    assert len(surfaced) == 1
    _pass(11, "holds=false with lhs=-27/16, rhs=0; surfaced in the fuzz report")
