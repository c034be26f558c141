import numpy as np
import pytest

from graphnewton.linalg import (
    DimensionMismatchError,
    as_symmetric,
    clip_unit,
    largest_eigenvalue,
    sandwich,
    smallest_eigenvalue_probe,
    sym_multiply,
    symmetrize,
    trace,
    trace_of_square,
)

from oracles import random_spd, random_symmetric, triple_loop_multiply


class TestSymMultiply:
    def test_identity(self):
        a = np.arange(9.0).reshape(3, 3)
        assert np.array_equal(sym_multiply(np.eye(3), a), a)
        assert np.array_equal(sym_multiply(a, np.eye(3)), a)

    def test_diagonal(self):
        out = sym_multiply(np.diag([1.0, 2.0]), np.diag([3.0, 4.0]))
        assert np.array_equal(out, np.diag([3.0, 8.0]))

    def test_matches_triple_loop(self):
        rng = np.random.default_rng(7)
        a = rng.standard_normal((4, 4))
        b = rng.standard_normal((4, 4))
        ref = triple_loop_multiply(a, b)
        assert np.allclose(sym_multiply(a, b), ref, rtol=1e-12, atol=1e-14)

    def test_dim_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            sym_multiply(np.eye(2), np.eye(3))


class TestSandwich:
    def test_identity(self):
        a = random_symmetric(4, np.random.default_rng(0))
        assert np.allclose(sandwich(np.eye(4), a), a)

    def test_diagonal_scaling(self):
        d = np.array([1.0, 2.0, 3.0])
        a = random_symmetric(3, np.random.default_rng(1))
        expected = d[:, None] * a * d[None, :]
        assert np.allclose(sandwich(np.diag(d), a), expected)

    def test_matches_composition(self):
        rng = np.random.default_rng(2)
        theta = random_spd(5, rng)
        u = random_symmetric(5, rng)
        ref = symmetrize(sym_multiply(sym_multiply(theta, u), theta))
        assert np.allclose(sandwich(theta, u), ref, rtol=1e-12, atol=1e-14)

    def test_output_exactly_symmetric(self):
        rng = np.random.default_rng(3)
        out = sandwich(random_spd(6, rng), random_symmetric(6, rng))
        assert np.array_equal(out, out.T)


class TestTraces:
    def test_identity_trace(self):
        assert trace(np.eye(7)) == 7.0

    def test_diag_trace(self):
        assert trace(np.diag([1.0, 2.0, 3.0])) == 6.0

    def test_random_trace(self):
        a = np.random.default_rng(4).standard_normal((5, 5))
        assert trace(a) == pytest.approx(sum(a[i, i] for i in range(5)), rel=1e-14)

    def test_trace_of_square_identity(self):
        assert trace_of_square(np.eye(4)) == 4.0

    def test_trace_of_square_permutation(self):
        assert trace_of_square(np.array([[0.0, 1.0], [1.0, 0.0]])) == 2.0

    def test_trace_of_square_matches_explicit(self):
        w = np.random.default_rng(5).standard_normal((6, 6))
        ref = trace(sym_multiply(w, w))
        assert trace_of_square(w) == pytest.approx(ref, rel=1e-12)

    @pytest.mark.parametrize("p", [4, 16, 32])
    def test_trace_of_square_property(self, p):
        w = np.random.default_rng(p).standard_normal((p, p))
        assert trace_of_square(w) == pytest.approx(trace(w @ w), rel=1e-10)


class TestClipUnit:
    def test_saturation(self):
        assert np.all(clip_unit(np.full((3, 3), 2.5)) == 1.0)

    def test_interior(self):
        assert np.all(clip_unit(np.full((2, 2), -0.3)) == -0.3)

    def test_mixed(self):
        x = np.array([[-3.0, -1.0, 0.0], [0.5, 4.0, 0.0], [0.0, 0.0, 0.0]])
        expected = np.array([[-1.0, -1.0, 0.0], [0.5, 1.0, 0.0], [0.0, 0.0, 0.0]])
        assert np.array_equal(clip_unit(x), expected)

    def test_idempotent(self):
        x = np.random.default_rng(6).standard_normal((5, 5)) * 3
        once = clip_unit(x)
        assert np.array_equal(clip_unit(once), once)

    def test_is_projection(self):
        rng = np.random.default_rng(8)
        for _ in range(20):
            x = rng.standard_normal((4, 4)) * 2
            y = rng.uniform(-1, 1, size=(4, 4))
            assert np.linalg.norm(x - clip_unit(x)) <= np.linalg.norm(x - y) + 1e-15


class TestLargestEigenvalue:
    def test_diagonal(self):
        est = largest_eigenvalue(np.diag([1.0, 2.0, 3.0]), tol=1e-10, max_iters=500)
        assert est.converged
        assert est.value == pytest.approx(3.0, abs=1e-8)

    def test_identity(self):
        est = largest_eigenvalue(np.eye(5))
        assert est.converged
        assert est.value == pytest.approx(1.0, abs=1e-12)

    def test_zero_matrix_degenerate(self):
        est = largest_eigenvalue(np.zeros((3, 3)))
        assert est.value == 0.0
        assert est.degenerate

    def test_matches_dense_eigensolver(self):
        a = random_spd(8, np.random.default_rng(9))
        est = largest_eigenvalue(a, tol=1e-10, max_iters=5000)
        ref = np.max(np.linalg.eigvalsh(a))
        assert est.value == pytest.approx(ref, rel=1e-6)

    def test_scaling_homogeneity(self):
        a = random_spd(6, np.random.default_rng(10))
        one = largest_eigenvalue(a, tol=1e-10, max_iters=5000).value
        scaled = largest_eigenvalue(3.5 * a, tol=1e-10, max_iters=5000).value
        assert scaled == pytest.approx(3.5 * one, rel=1e-6)


class TestSmallestEigenvalueProbe:
    def test_diagonal(self):
        assert smallest_eigenvalue_probe(np.diag([1.0, 2.0, 3.0])) == pytest.approx(
            1.0, rel=1e-6
        )

    def test_identity(self):
        assert smallest_eigenvalue_probe(np.eye(4)) == pytest.approx(1.0, rel=1e-8)

    def test_matches_dense_eigensolver(self):
        a = random_spd(8, np.random.default_rng(11))
        ref = np.min(np.linalg.eigvalsh(a))
        assert smallest_eigenvalue_probe(a, tol=1e-10, max_iters=20000) == pytest.approx(
            ref, rel=1e-5
        )


class TestAsSymmetric:
    def test_rejects_nonfinite(self):
        bad = np.eye(2)
        bad[0, 1] = np.nan
        with pytest.raises(ValueError):
            as_symmetric(bad)

    def test_rejects_asymmetric_with_tolerance(self):
        a = np.array([[1.0, 0.5], [0.0, 1.0]])
        with pytest.raises(ValueError):
            as_symmetric(a, atol=1e-8)

    def test_symmetrizes(self):
        a = np.array([[1.0, 2.0], [0.0, 1.0]])
        out = as_symmetric(a)
        assert np.array_equal(out, out.T)
        assert out[0, 1] == 1.0
