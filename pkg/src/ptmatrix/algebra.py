"""PT and CPT inner products, spectral construction of the C operator, and
the weight-matrix generalization forced by asymmetric Hamiltonians.

The PT inner product (a|b) = [P conj(a)]^T b is indefinite: phase-fixed
eigenvectors of an unbroken system carry norms +-1. The C operator is the sum
of outer products of the PT-normalized eigenvectors with their PT-conjugate
rows; it squares to the identity, commutes with the Hamiltonian, and flips
exactly the negative-norm directions, making the CPT product positive
definite.
"""

from __future__ import annotations

import numpy as np

from .construct import PTSystem
from .errors import BrokenPhaseError, ExceptionalPointError
from .linalg import DEFAULT_TOL, as_matrix
from .spectral import Phase, classify_phase, pt_apply

WEIGHT_COND_LIMIT = 1e8


def pt_conjugate(v, p) -> np.ndarray:
    """PT-conjugate row of a ket: [P conj(v)]^T, returned as a 1-D array."""
    return pt_apply(v, p)


def pt_inner(a, b, p) -> complex:
    """(a|b): dot product of the PT conjugate of a with b."""
    av = np.asarray(a, dtype=np.complex128)
    bv = np.asarray(b, dtype=np.complex128)
    if av.shape != bv.shape:
        raise ValueError("vector dimensions do not match")
    return complex(pt_conjugate(av, p) @ bv)


def build_c_operator(sys: PTSystem, tol: float = DEFAULT_TOL) -> np.ndarray:
    """C as the sum of |v)(v| over PT-normalized phase-fixed eigenvectors.

    Requires the unbroken phase. Raises ExceptionalPointError when a PT norm
    vanishes (eigenvectors coalescing).
    """
    data = classify_phase(sys, tol)
    if data.phase is Phase.BROKEN:
        raise BrokenPhaseError("the C operator exists only in the unbroken phase")
    if data.phase is Phase.EXCEPTIONAL:
        raise ExceptionalPointError("no C operator at an exceptional point")
    n = sys.dim
    c = np.zeros((n, n), dtype=np.complex128)
    for pair in data.pairs:
        nrm = pt_inner(pair.vector, pair.vector, sys.p)
        if abs(nrm) < tol:
            raise ExceptionalPointError(
                f"vanishing PT norm {abs(nrm):.3e}: exceptional point"
            )
        vhat = pair.vector / np.sqrt(abs(nrm))
        c += np.outer(vhat, pt_conjugate(vhat, sys.p))
    return c


def cpt_inner(a, b, c, p) -> complex:
    """<a|b>: dot product of the CPT conjugate of a with b."""
    av = np.asarray(a, dtype=np.complex128)
    bv = np.asarray(b, dtype=np.complex128)
    if av.shape != bv.shape:
        raise ValueError("vector dimensions do not match")
    cm = as_matrix(c)
    return complex((cm @ pt_apply(av, p)) @ bv)


def build_weight_matrix(eigvecs, p) -> np.ndarray:
    """Solve (v_m| W |v_n) = delta_mn over the given eigenvector basis.

    Least squares is used for mildly ill-conditioned bases; a basis with
    condition number at or above 1e8 (or a rank-deficient one) raises.
    For a symmetric unbroken Hamiltonian with PT-normalized eigenvectors the
    result coincides with the C operator.
    """
    v = np.column_stack([np.asarray(x, dtype=np.complex128) for x in eigvecs])
    if v.shape[0] != v.shape[1]:
        raise ValueError("need exactly dim eigenvectors of length dim")
    pm = as_matrix(p)
    rows = (pm @ v.conj()).T  # row m is the PT conjugate of eigenvector m
    eye = np.eye(v.shape[0], dtype=np.complex128)
    for basis in (v, rows):
        sing = np.linalg.svd(basis, compute_uv=False)
        if sing[-1] <= 0.0 or sing[0] / sing[-1] >= WEIGHT_COND_LIMIT:
            raise ValueError("eigenvector basis is singular or too ill-conditioned")
    inv_rows = np.linalg.lstsq(rows, eye, rcond=None)[0]
    inv_v = np.linalg.lstsq(v, eye, rcond=None)[0]
    return inv_rows @ inv_v
