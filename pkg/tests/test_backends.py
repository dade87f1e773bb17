"""Both kernel backends satisfy the same contracts and agree with each other."""

import numpy as np
import pytest

from locps import _kernels_py

try:
    from locps import _kernels
except ImportError:
    _kernels = None

BACKENDS = [_kernels_py] + ([_kernels] if _kernels is not None else [])
IDS = [b.BACKEND for b in BACKENDS]


def rand_sym(rng, n, scale=1.0):
    g = rng.standard_normal((n, n)) * scale
    return 0.5 * (g + g.T)


@pytest.fixture(params=BACKENDS, ids=IDS)
def backend(request):
    return request.param


class TestContracts:
    def test_det_edges(self, backend):
        assert backend.det_f64(np.empty((0, 0))) == 1.0
        assert backend.det_f64(np.array([[3.0]])) == pytest.approx(3.0, rel=1e-12)
        assert backend.det_f64(np.zeros((3, 3))) == 0.0

    def test_eigvals_sorted_and_traces(self, backend):
        rng = np.random.default_rng(1)
        for n in (1, 2, 5, 16):
            a = rand_sym(rng, n, 2.0)
            w = backend.eigvals_f64(a)
            assert np.all(np.diff(w) >= 0)
            assert np.sum(w) == pytest.approx(np.trace(a), rel=1e-12, abs=1e-12)

    def test_eigh_reconstruction_n64(self, backend):
        rng = np.random.default_rng(2)
        a = rand_sym(rng, 64, 5.0)
        w, v = backend.eigh_f64(a)
        scale = max(1.0, float(np.linalg.norm(a)))
        assert np.linalg.norm(a - v @ np.diag(w) @ v.T) <= 1e-10 * scale
        assert np.allclose(v.T @ v, np.eye(64), atol=1e-12)

    def test_zero_and_diagonal(self, backend):
        w = backend.eigvals_f64(np.diag([3.0, -1.0, 2.0]))
        assert np.allclose(w, [-1.0, 2.0, 3.0])
        assert np.allclose(backend.eigvals_f64(np.zeros((4, 4))), 0.0)

    def test_drop_one(self, backend):
        rng = np.random.default_rng(3)
        a = rand_sym(rng, 6)
        mins = backend.drop_one_min_eigs_f64(a)
        for i in range(6):
            sub = np.delete(np.delete(a, i, 0), i, 1)
            assert mins[i] == pytest.approx(np.linalg.eigvalsh(sub)[0], abs=1e-12)
        assert backend.drop_one_min_eigs_f64(np.array([[5.0]]))[0] == np.inf

    def test_input_not_mutated(self, backend):
        rng = np.random.default_rng(4)
        a = rand_sym(rng, 5)
        kept = a.copy()
        backend.eigvals_f64(a)
        backend.det_f64(a)
        backend.drop_one_min_eigs_f64(a)
        assert np.array_equal(a, kept)

    def test_deterministic(self, backend):
        rng = np.random.default_rng(5)
        a = rand_sym(rng, 9)
        assert np.array_equal(backend.eigvals_f64(a), backend.eigvals_f64(a))
        assert backend.det_f64(a) == backend.det_f64(a)


@pytest.mark.skipif(_kernels is None, reason="compiled extension not built")
class TestCrossAgreement:
    def test_eigvals_match(self):
        rng = np.random.default_rng(6)
        for n in (2, 3, 7, 12, 33):
            a = rand_sym(rng, n, 3.0)
            wc = _kernels.eigvals_f64(a)
            wp = _kernels_py.eigvals_f64(a)
            scale = max(1.0, np.abs(wp).max())
            assert np.max(np.abs(wc - wp)) <= 1e-11 * scale

    def test_det_match(self):
        rng = np.random.default_rng(7)
        for n in (1, 2, 5, 8, 12):
            a = rand_sym(rng, n, 2.0)
            dc = _kernels.det_f64(a)
            dp = _kernels_py.det_f64(a)
            assert dc == pytest.approx(dp, rel=1e-10, abs=1e-12)

    def test_drop_one_match(self):
        rng = np.random.default_rng(8)
        a = rand_sym(rng, 8)
        assert np.allclose(
            _kernels.drop_one_min_eigs_f64(a),
            _kernels_py.drop_one_min_eigs_f64(a),
            atol=1e-11,
        )
