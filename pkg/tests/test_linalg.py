import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import ptmatrix as pt
from ptmatrix.linalg import eig_arrays

SWAP = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)


def test_mat_mul_identity(rng):
    m = rng.uniform(-1, 1, (4, 4)) + 1j * rng.uniform(-1, 1, (4, 4))
    np.testing.assert_array_equal(pt.mat_mul(np.eye(4), m), m)


def test_mat_mul_involutions():
    d = np.diag([1.0, -1.0]).astype(complex)
    np.testing.assert_allclose(pt.mat_mul(d, d), np.eye(2), atol=0)
    np.testing.assert_allclose(pt.mat_mul(SWAP, SWAP), np.eye(2), atol=0)


def test_mat_mul_dimension_mismatch():
    with pytest.raises(ValueError):
        pt.mat_mul(np.eye(2), np.eye(3))


def test_eigendecompose_diagonal():
    pairs = pt.eigendecompose(np.diag([2.0, 0.0]))
    assert [p.value for p in pairs] == [0.0, 2.0]  # sorted by (re, im)
    for p in pairs:
        assert p.residual <= 1e-14


def test_eigendecompose_real_pair():
    # [[1-i, 2], [2, 1+i]]: characteristic polynomial x^2 - 2x - 2
    h = np.array([[1 - 1j, 2], [2, 1 + 1j]])
    got = np.array([p.value for p in pt.eigendecompose(h)])
    ref = np.sort(np.roots([1, -2, -2]).real)
    np.testing.assert_allclose(got.real, ref, atol=1e-12)
    np.testing.assert_allclose(got.imag, [0, 0], atol=1e-12)
    np.testing.assert_allclose(got, [1 - np.sqrt(3), 1 + np.sqrt(3)], atol=1e-12)


def test_eigendecompose_conjugate_pair():
    # [[1, 2i], [2i, -1]]: x^2 + 3 = 0
    h = np.array([[1, 2j], [2j, -1]])
    got = np.array([p.value for p in pt.eigendecompose(h)])
    np.testing.assert_allclose(got, [-1j * np.sqrt(3), 1j * np.sqrt(3)], atol=1e-12)


@pytest.mark.parametrize("dim", [2, 3, 4, 5, 6, 7, 8])
def test_eigendecompose_matches_lapack(dim, rng):
    for _ in range(10):
        m = rng.uniform(-1, 1, (dim, dim)) + 1j * rng.uniform(-1, 1, (dim, dim))
        got = np.array([p.value for p in pt.eigendecompose(m)])
        ref = np.linalg.eigvals(m)
        ref = ref[np.lexsort((ref.imag, ref.real))]
        np.testing.assert_allclose(got, ref, atol=1e-9)


@pytest.mark.parametrize("dim", [2, 4, 8])
def test_residual_contract(dim, rng):
    for _ in range(25):
        m = rng.uniform(-1, 1, (dim, dim)) + 1j * rng.uniform(-1, 1, (dim, dim))
        pairs = pt.eigendecompose(m, tol=1e-10)
        assert max(p.residual for p in pairs) <= 1e-10
        for p in pairs:
            np.testing.assert_allclose(np.linalg.norm(p.vector), 1.0, atol=1e-12)


@pytest.mark.parametrize("dim", [2, 3, 4, 5, 6])
def test_trace_and_determinant(dim, rng):
    for _ in range(10):
        m = rng.uniform(-1, 1, (dim, dim)) + 1j * rng.uniform(-1, 1, (dim, dim))
        w = np.array([p.value for p in pt.eigendecompose(m)])
        assert abs(w.sum() - np.trace(m)) <= 1e-9
        det = np.linalg.det(m)
        assert abs(w.prod() - det) <= 1e-8 * max(1.0, abs(det))


@settings(max_examples=25, deadline=None, derandomize=True)
@given(
    dim=st.integers(min_value=2, max_value=6),
    seed=st.integers(min_value=0, max_value=2**32 - 1),
)
def test_eigenvalue_sum_is_trace(dim, seed):
    r = np.random.default_rng(seed)
    m = r.uniform(-1, 1, (dim, dim)) + 1j * r.uniform(-1, 1, (dim, dim))
    w = np.array([p.value for p in pt.eigendecompose(m)])
    assert abs(w.sum() - np.trace(m)) <= 1e-9


def test_degenerate_cluster_is_bilinear_orthogonal():
    w, v, _ = eig_arrays(np.eye(3, dtype=complex))
    for i in range(3):
        for j in range(i + 1, 3):
            assert abs(v[:, i] @ v[:, j]) <= 1e-10


def test_eigendecompose_rejects_bad_input():
    with pytest.raises(ValueError):
        pt.eigendecompose(np.ones((2, 3)))
    with pytest.raises(ValueError):
        pt.eigendecompose(np.array([[np.nan, 0], [0, 1]]))
    with pytest.raises(ValueError):
        pt.eigendecompose(np.eye(65))


def test_mat_exp_zero_time(rng):
    m = rng.uniform(-1, 1, (3, 3)) + 1j * rng.uniform(-1, 1, (3, 3))
    np.testing.assert_allclose(pt.mat_exp_times(m, 0.0), np.eye(3), atol=1e-12)


def test_mat_exp_diagonal():
    eps = np.array([0.7, -1.2])
    got = pt.mat_exp_times(np.diag(eps).astype(complex), -1.7j)
    np.testing.assert_allclose(got, np.diag(np.exp(-1.7j * eps)), atol=1e-12)


def test_mat_exp_group_inverse(rng):
    for _ in range(20):
        r_, t_ = rng.uniform(-1, 1), rng.uniform(0.5, 1.5)
        s_ = rng.uniform(-0.9, 0.9) * t_
        h = pt.h2(pt.TwoByTwoParams(r_, s_, t_, rng.uniform(0, 2 * np.pi)))
        prod = pt.mat_exp_times(h, -1j) @ pt.mat_exp_times(h, 1j)
        assert pt.max_abs(prod - np.eye(2)) <= 10 * 1e-10


def test_mat_exp_additivity(rng):
    m = rng.uniform(-1, 1, (4, 4)) + 1j * rng.uniform(-1, 1, (4, 4))
    lhs = pt.mat_exp_times(m, 0.3 - 0.2j) @ pt.mat_exp_times(m, 0.5 + 0.1j)
    rhs = pt.mat_exp_times(m, 0.8 - 0.1j)
    assert pt.max_abs(lhs - rhs) <= 1e-8


def test_mat_exp_defective_raises():
    h = pt.h2(pt.TwoByTwoParams(0.0, 1.0, 1.0, 0.3))  # coalescence point
    with pytest.raises(pt.ExceptionalPointError):
        pt.mat_exp_times(h, -1j)


def test_defective_input_keeps_residual_contract():
    # only one eigendirection exists; it is returned (repeated) with a tiny
    # residual, and the exponential flags the singular eigenvector matrix
    jordan = np.eye(4, k=1) + 2 * np.eye(4)
    pairs = pt.eigendecompose(jordan)
    assert max(p.residual for p in pairs) <= 1e-12
    np.testing.assert_allclose([p.value for p in pairs], [2.0] * 4, atol=1e-8)
    with pytest.raises(pt.ExceptionalPointError):
        pt.mat_exp_times(jordan, 1.0)


def test_predicates():
    assert pt.is_symmetric(SWAP)
    assert pt.is_hermitian(SWAP)
    assert pt.is_real(SWAP)
    assert pt.is_orthogonal(SWAP)
    assert not pt.is_symmetric(np.array([[0, 1], [-1, 0]]))
    assert not pt.is_hermitian(np.array([[0, 1j], [1j, 0]]))
    assert pt.is_symmetric(np.array([[0, 1j], [1j, 0]]))
