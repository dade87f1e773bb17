"""Seeded sampling of locally-PSD cone members, property fuzzing of the bound
checkers, and the identity suite for the proof-internal algebraic facts.

Sampling pipeline: draw the rank-one-coupling family at a random interior
parameter, apply a random symmetric permutation, a random diagonal congruence
and (optionally) a signed rank-one perturbation, then re-verify membership
from scratch and reject failures.  Every emitted matrix is a verified member.

Determinism: each sample index gets its own child of the root SeedSequence,
so outputs are a pure function of (config, index) and reports do not depend
on evaluation order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _backend
from .bounds import (
    InequalityId,
    check_classical,
    check_extended_fisher,
    check_extended_hadamard,
    check_extended_koteljanskii,
    check_leading_block,
)
from .cone import (
    DEFAULT_TOLERANCE,
    Classification,
    classify_membership,
    eigen_signature,
)
from .symcore import (
    IndexSet,
    SymMatrix,
    determinant,
    normalize_unit_diagonal,
    principal_submatrix,
    schur_complement,
    sum_principal_minors,
)

F = Fraction

RATIONALIZE_GRID = 10**12

_MEMBER = (Classification.LOCALLY_PSD, Classification.LOCALLY_PD)


@dataclass(frozen=True)
class SampleConfig:
    n: int
    count: int
    seed: int = 0
    perturb_scale: float = 0.05
    diag_range: tuple[float, float] = (0.5, 2.0)
    max_rejects: int | None = None

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("sampling needs n >= 3")
        if self.count < 0:
            raise ValueError("count must be nonnegative")
        if self.perturb_scale < 0:
            raise ValueError("perturb_scale must be nonnegative")
        lo, hi = self.diag_range
        if not (0 < lo <= hi):
            raise ValueError("diag_range must satisfy 0 < lo <= hi")

    @property
    def reject_budget(self):
        total = 100 * self.count if self.max_rejects is None else self.max_rejects
        return max(1, total // max(1, self.count))


@dataclass
class FuzzReport:
    kind: InequalityId
    n: int
    seed: int
    trials: int
    rejects: int
    probe_count: int
    min_slack: object | None
    min_ratio: object | None
    violations: list = field(default_factory=list)

    @property
    def violation_free(self):
        return not self.violations


def rationalize(A, grid=RATIONALIZE_GRID):
    """Round a float matrix onto the 1/grid rational lattice, exactly."""
    arr = A.to_numpy()
    rows = [
        [F(int(round(arr[i, j] * grid)), grid) for j in range(A.n)]
        for i in range(A.n)
    ]
    return SymMatrix(rows, "rational")


def _draw_member(rng, cfg, tol):
    """One pipeline attempt; returns (SymMatrix, report) or None on reject."""
    n = cfg.n
    r = rng.uniform(-1.0 / (n - 2), -1.0 / (n - 1))
    a = np.full((n, n), r)
    np.fill_diagonal(a, 1.0)
    perm = rng.permutation(n)
    a = a[np.ix_(perm, perm)]
    d = rng.uniform(cfg.diag_range[0], cfg.diag_range[1], size=n)
    s = np.sqrt(d)
    a = a * np.outer(s, s)
    if cfg.perturb_scale > 0:
        eps = rng.uniform(-cfg.perturb_scale, cfg.perturb_scale)
        v = rng.standard_normal(n)
        norm = np.linalg.norm(v)
        if norm > 0:
            v /= norm
            a = a + eps * np.outer(v, v)
    m = SymMatrix(a)
    rep = classify_membership(m, tol)
    if rep.classification in _MEMBER:
        return m, rep
    return None


def _member_stream(cfg, tol):
    root = np.random.SeedSequence(cfg.seed)
    budget = cfg.reject_budget
    rejects = 0
    for child in root.spawn(cfg.count):
        rng = np.random.Generator(np.random.PCG64(child))
        for _ in range(budget + 1):
            out = _draw_member(rng, cfg, tol)
            if out is not None:
                yield out[0], out[1], rejects
                rejects = 0
                break
            rejects += 1
        else:
            raise RuntimeError(
                f"sampler exceeded the reject budget ({budget} per sample)"
            )


def sample_cone(cfg, tol=None):
    """Draw cfg.count verified locally-PSD/PD members (float mode)."""
    tol = tol or DEFAULT_TOLERANCE
    return [m for m, _, _ in _member_stream(cfg, tol)]


def _draw_leading_block(rng, cfg, tol):
    """B PSD by Gram construction, border within |b_i| <= sqrt(a_ii a_nn),
    rejected unless det(A) <= 0 (the regime the leading-block bound probes)."""
    n = cfg.n
    m = n - 1
    k = int(rng.integers(1, n + 2))
    g = rng.standard_normal((k, m))
    block = g.T @ g
    corner = rng.uniform(0.0, 2.0)
    u = rng.uniform(-1.0, 1.0, size=m)
    border = u * np.sqrt(np.diag(block) * corner)
    a = np.zeros((n, n))
    a[:m, :m] = block
    a[:m, n - 1] = border
    a[n - 1, :m] = border
    a[n - 1, n - 1] = corner
    if _backend.det(a) > 0.0:
        return None
    return SymMatrix(a)


def _draw_gram_psd(rng, cfg):
    n = cfg.n
    k = int(rng.integers(1, n + 3))
    g = rng.standard_normal((k, n))
    return SymMatrix(g.T @ g)


def _random_subset(rng, n, allow_empty=True, allow_full=True):
    while True:
        mask = rng.integers(0, 2, size=n)
        size = int(mask.sum())
        if size == 0 and not allow_empty:
            continue
        if size == n and not allow_full:
            continue
        return IndexSet(tuple(int(i) + 1 for i in np.flatnonzero(mask)))


def _default_selector(kind, rng, n):
    if kind == InequalityId.EXT_FISHER:
        return _random_subset(rng, n, allow_empty=False, allow_full=False), None
    if kind == InequalityId.EXT_KOTELJANSKII:
        # alpha ∪ beta = {1..n}: proper unions cannot satisfy the membership
        # precondition (a member's proper submatrices have det >= 0)
        while True:
            gamma_size = int(rng.integers(0, n - 2))
            order = rng.permutation(n)
            gamma = sorted(order[:gamma_size])
            rest = order[gamma_size:]
            assign = rng.integers(0, 2, size=len(rest))
            mu = [int(i) for i, pick in zip(rest, assign) if pick == 0]
            nu = [int(i) for i, pick in zip(rest, assign) if pick == 1]
            if mu and nu:
                alpha = IndexSet.from_iterable([i + 1 for i in gamma] + [i + 1 for i in mu])
                beta = IndexSet.from_iterable([i + 1 for i in gamma] + [i + 1 for i in nu])
                return alpha, beta
    # classical probes allow any subsets, empty and full included
    return _random_subset(rng, n), _random_subset(rng, n)


def _normalize_probe(kind, probe):
    if isinstance(probe, SymMatrix):
        return probe, None, None
    probe = tuple(probe)
    if len(probe) == 2:
        return probe[0], probe[1], None
    return probe[0], probe[1], probe[2]


def _evaluate(kind, matrix, alpha, beta, tol, membership, exact):
    target = rationalize(matrix) if exact and not matrix.is_exact else matrix
    if kind == InequalityId.EXT_HADAMARD:
        return [check_extended_hadamard(target, tol, membership=membership)], target
    if kind == InequalityId.LEADING_BLOCK:
        return [check_leading_block(target, tol)], target
    if kind == InequalityId.EXT_FISHER:
        return [check_extended_fisher(target, alpha, tol, membership=membership)], target
    if kind == InequalityId.EXT_KOTELJANSKII:
        return [
            check_extended_koteljanskii(target, alpha, beta, tol, membership=membership)
        ], target
    verdicts = check_classical(target, alpha, beta, tol)
    picked = {
        InequalityId.CLASSICAL_HADAMARD: verdicts[0],
        InequalityId.CLASSICAL_FISHER: verdicts[1],
        InequalityId.CLASSICAL_KOTELJANSKII: verdicts[2],
    }[kind]
    return [picked], target


def _ratio(matrix):
    det = determinant(matrix)
    prod = F(1) if matrix.is_exact else 1.0
    for d in matrix.diagonal():
        prod = prod * d
    if prod <= 0:
        return None
    return det / prod


def fuzz_bound(kind, cfg, selector=None, probes=(), tol=None, exact=False):
    """Fuzz one inequality and aggregate an explicit report.

    Samplers: the extended bounds draw verified cone members; LEADING_BLOCK
    draws Gram blocks with a bounded border (det <= 0 enforced by rejection);
    the classical bounds draw Gram PSD matrices.  `selector(rng, n)` may
    override the (alpha, beta) strategy.  `probes` are injected inputs
    (SymMatrix, or (SymMatrix, alpha[, beta])) evaluated before the random
    trials; their verdicts feed the same report.  With `exact=True` float
    samples are rationalized on the 1e-12 grid and verdicts are arbitrated in
    exact arithmetic.
    """
    kind = InequalityId(kind)
    tol = tol or DEFAULT_TOLERANCE

    report = FuzzReport(
        kind=kind,
        n=cfg.n,
        seed=cfg.seed,
        trials=0,
        rejects=0,
        probe_count=0,
        min_slack=None,
        min_ratio=None,
    )

    def record(matrix, verdicts):
        ratio = _ratio(matrix)
        if ratio is not None and (report.min_ratio is None or ratio < report.min_ratio):
            report.min_ratio = ratio
        for v in verdicts:
            if report.min_slack is None or v.slack < report.min_slack:
                report.min_slack = v.slack
            if not v.holds:
                report.violations.append((matrix, v))

    for probe in probes:
        matrix, alpha, beta = _normalize_probe(kind, probe)
        verdicts, target = _evaluate(kind, matrix, alpha, beta, tol, None, exact)
        report.probe_count += 1
        record(target, verdicts)

    needs_members = kind in (
        InequalityId.EXT_HADAMARD,
        InequalityId.EXT_FISHER,
        InequalityId.EXT_KOTELJANSKII,
    )

    if needs_members:
        for matrix, membership, rejects in _member_stream(cfg, tol):
            report.rejects += rejects
            alpha = beta = None
            if kind != InequalityId.EXT_HADAMARD:
                rng = np.random.Generator(
                    np.random.PCG64(np.random.SeedSequence((cfg.seed, report.trials, 0xA1)))
                )
                strategy = selector or (lambda r, n: _default_selector(kind, r, n))
                alpha, beta = strategy(rng, cfg.n)
            verdicts, target = _evaluate(kind, matrix, alpha, beta, tol, membership, exact)
            report.trials += 1
            record(target, verdicts)
    else:
        root = np.random.SeedSequence(cfg.seed)
        budget = cfg.reject_budget
        for child in root.spawn(cfg.count):
            rng = np.random.Generator(np.random.PCG64(child))
            matrix = None
            for _ in range(budget + 1):
                if kind == InequalityId.LEADING_BLOCK:
                    matrix = _draw_leading_block(rng, cfg, tol)
                else:
                    matrix = _draw_gram_psd(rng, cfg)
                if matrix is not None:
                    break
                report.rejects += 1
            if matrix is None:
                raise RuntimeError(
                    f"sampler exceeded the reject budget ({budget} per sample)"
                )
            alpha = beta = None
            if kind != InequalityId.LEADING_BLOCK:
                strategy = selector or (lambda r, n: _default_selector(kind, r, n))
                alpha, beta = strategy(rng, cfg.n)
            verdicts, target = _evaluate(kind, matrix, alpha, beta, tol, None, exact)
            report.trials += 1
            record(target, verdicts)

    return report


# ---------------------------------------------------------------------------
# Identity suite
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    name: str
    trials: int
    failures: int
    max_err: float

    @property
    def passed(self):
        return self.failures == 0


@dataclass(frozen=True)
class IdentitySuiteReport:
    n: int
    trials: int
    seed: int
    checks: tuple[CheckResult, ...]

    @property
    def passed(self):
        return all(c.passed for c in self.checks)


def _rel_err(lhs, rhs):
    return abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs))


def identity_suite(n, trials, seed, tol=None):
    """Per-trial algebraic identity checks at 1e-10 relative tolerance:

    (i)   minor sums equal elementary symmetric eigenvalue polynomials;
    (ii)  nested Schur complements satisfy the quotient identity
          A/B = (A/C)/(B/C) (Crabtree-Haynsworth);
    (iii) det(A) = det(A[alpha]) det(A/A[alpha]);
    (iv)  unit-diagonal cone members satisfy the interior spectral and entry
          bounds (lambda_min >= -1/(n-2), |a_ij| <= 1, one negative
          eigenvalue, nonnegative order-(n-1) minor sum).
    """
    if not 3 <= n <= 8:
        raise ValueError("identity suite is desk-scale: 3 <= n <= 8")
    tol = tol or DEFAULT_TOLERANCE
    bound = 1e-10
    root = np.random.SeedSequence(seed)
    rng_sym, rng_pd, rng_schur = (
        np.random.Generator(np.random.PCG64(c)) for c in root.spawn(3)
    )
    checks = []

    # (i) characteristic coefficients
    failures = 0
    max_err = 0.0
    for _ in range(trials):
        g = rng_sym.uniform(-1.0, 1.0, size=(n, n))
        a = SymMatrix(0.5 * (g + g.T))
        w = np.array(list(_spectrum(a)))
        coeffs = np.poly(w)  # [1, -e1, e2, ...]
        for k in range(n + 1):
            lhs = sum_principal_minors(a, k)
            rhs = float((-1) ** k * coeffs[k])
            err = _rel_err(lhs, rhs)
            max_err = max(max_err, err)
            if err > bound:
                failures += 1
    checks.append(CheckResult("characteristic_coefficients", trials, failures, max_err))

    # (ii) nested Schur quotient
    failures = 0
    max_err = 0.0
    for _ in range(trials):
        a = _random_pd(rng_pd, n)
        big_size = int(rng_pd.integers(2, n))
        big_pick = np.sort(rng_pd.choice(n, size=big_size, replace=False))
        small_size = int(rng_pd.integers(1, big_size))
        small_pick = np.sort(rng_pd.choice(big_pick, size=small_size, replace=False))
        big = IndexSet(tuple(int(i) + 1 for i in big_pick))
        small = IndexSet(tuple(int(i) + 1 for i in small_pick))
        direct = schur_complement(a, big)
        partial = schur_complement(a, small)
        rest = small.complement(n)
        mid = [rest.indices.index(i) + 1 for i in big.difference(small)]
        inner = schur_complement(partial, mid)
        err = float(np.max(np.abs(direct.to_numpy() - inner.to_numpy())))
        scale = max(1.0, float(np.max(np.abs(direct.to_numpy()))))
        err /= scale
        max_err = max(max_err, err)
        if err > bound:
            failures += 1
    checks.append(CheckResult("schur_quotient", trials, failures, max_err))

    # (iii) Schur determinant multiplicativity
    failures = 0
    max_err = 0.0
    for _ in range(trials):
        a = _random_pd(rng_schur, n)
        size = int(rng_schur.integers(1, n))
        pick = np.sort(rng_schur.choice(n, size=size, replace=False))
        alpha = IndexSet(tuple(int(i) + 1 for i in pick))
        lhs = determinant(a)
        rhs = determinant(principal_submatrix(a, alpha)) * determinant(
            schur_complement(a, alpha)
        )
        err = _rel_err(lhs, rhs)
        max_err = max(max_err, err)
        if err > bound:
            failures += 1
    checks.append(CheckResult("schur_determinant", trials, failures, max_err))

    # (iv) unit-diagonal member bounds
    cfg = SampleConfig(n=n, count=trials, seed=seed, diag_range=(1.0, 1.0))
    failures = 0
    max_err = 0.0
    slack_cut = 1e-9
    for member in sample_cone(cfg, tol):
        m = normalize_unit_diagonal(member)
        arr = m.to_numpy()
        w = _backend.eigvals(arr)
        lam_excess = max(0.0, (-1.0 / (n - 2)) - float(w[0]))
        entry_excess = max(0.0, float(np.max(np.abs(arr))) - 1.0)
        minor_sum = sum_principal_minors(m, n - 1)
        minor_deficit = max(0.0, -minor_sum)
        sig = eigen_signature(m, tol)
        err = max(lam_excess, entry_excess, minor_deficit)
        max_err = max(max_err, err)
        if err > slack_cut or sig[0] != 1:
            failures += 1
    checks.append(CheckResult("unit_diagonal_member_bounds", trials, failures, max_err))

    return IdentitySuiteReport(n, trials, seed, tuple(checks))


def _spectrum(a):
    return _backend.eigvals(a.to_numpy())


def _random_pd(rng, n):
    g = rng.standard_normal((n + 2, n))
    return SymMatrix(g.T @ g + 0.3 * np.eye(n))
