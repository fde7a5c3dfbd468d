"""Dense complex eigensolver kernels: Householder Hessenberg reduction,
explicit shifted QR with deflation, and triangular back-substitution.

The kernels are written in numba-compatible numpy and are JIT-compiled by
default. Set ``PTMATRIX_DISABLE_NUMBA=1`` (or install without numba) to run
the identical source as plain Python/numpy. ``benchmarks/bench_eigensolver.py``
compares both paths.
"""

from __future__ import annotations

import os

import numpy as np

_EPS = float(np.finfo(np.float64).eps)

_flag = os.environ.get("PTMATRIX_DISABLE_NUMBA", "").strip().lower()
_DISABLED = _flag in {"1", "true", "yes", "on"}

if not _DISABLED:
    try:
        from numba import njit as _njit

        NUMBA_ENABLED = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        NUMBA_ENABLED = False
else:
    NUMBA_ENABLED = False


def _hessenberg(t, q):
    """In-place unitary reduction of t to upper Hessenberg form.

    q accumulates the transform so that q @ t @ q^H stays constant.
    """
    n = t.shape[0]
    for k in range(n - 2):
        xnorm = 0.0
        for i in range(k + 1, n):
            xnorm += t[i, k].real ** 2 + t[i, k].imag ** 2
        xnorm = np.sqrt(xnorm)
        if xnorm <= 1e-300:
            continue
        x0 = t[k + 1, k]
        if abs(x0) > 0.0:
            phase = x0 / abs(x0)
        else:
            phase = 1.0 + 0.0j
        alpha = -phase * xnorm
        v = np.empty(n - k - 1, np.complex128)
        for i in range(k + 1, n):
            v[i - k - 1] = t[i, k]
        v[0] -= alpha
        vnorm = 0.0
        for i in range(v.shape[0]):
            vnorm += v[i].real ** 2 + v[i].imag ** 2
        vnorm = np.sqrt(vnorm)
        if vnorm <= 1e-300:
            continue
        for i in range(v.shape[0]):
            v[i] /= vnorm
        vc = np.conj(v)
        # left reflection: rows k+1.., columns k..
        w = np.zeros(n - k, np.complex128)
        for i in range(v.shape[0]):
            w += vc[i] * t[k + 1 + i, k:]
        for i in range(v.shape[0]):
            t[k + 1 + i, k:] -= (2.0 * v[i]) * w
        # right reflection: all rows, columns k+1..
        for r in range(n):
            s = t[r, k + 1:] @ v
            t[r, k + 1:] -= (2.0 * s) * vc
        for r in range(n):
            s = q[r, k + 1:] @ v
            q[r, k + 1:] -= (2.0 * s) * vc
        t[k + 1, k] = alpha
        for i in range(k + 2, n):
            t[i, k] = 0.0 + 0.0j


def _qr_schur(t, q, maxiter):
    """Shifted QR iteration on an upper Hessenberg t, in place.

    Drives t to upper triangular (Schur) form while accumulating the unitary
    similarity into q. Returns False if the iteration cap was exhausted.
    """
    n = t.shape[0]
    tnorm = 0.0
    for i in range(n):
        for j in range(n):
            a = abs(t[i, j])
            if a > tnorm:
                tnorm = a
    if tnorm == 0.0:
        return True
    cs = np.empty(n, np.float64)
    sn = np.empty(n, np.complex128)
    hi = n - 1
    total = 0
    stall = 0
    while hi > 0:
        lo = hi
        while lo > 0:
            sd = abs(t[lo, lo - 1])
            s = abs(t[lo - 1, lo - 1]) + abs(t[lo, lo])
            if s == 0.0:
                s = tnorm
            if sd <= _EPS * s:
                t[lo, lo - 1] = 0.0 + 0.0j
                break
            lo -= 1
        if lo == hi:
            hi -= 1
            stall = 0
            continue
        total += 1
        stall += 1
        if total > maxiter:
            return False
        if stall % 20 == 0:
            # exceptional shift to break rare symmetric stalls
            mu = t[hi, hi] + 0.75 * abs(t[hi, hi - 1])
        else:
            # Wilkinson shift: trailing 2x2 eigenvalue closest to t[hi, hi]
            a2 = t[hi - 1, hi - 1]
            b2 = t[hi - 1, hi]
            c2 = t[hi, hi - 1]
            d2 = t[hi, hi]
            half = 0.5 * (a2 - d2)
            disc = np.sqrt(half * half + b2 * c2)
            m1 = 0.5 * (a2 + d2) + disc
            m2 = 0.5 * (a2 + d2) - disc
            if abs(m1 - d2) <= abs(m2 - d2):
                mu = m1
            else:
                mu = m2
        for i in range(lo, hi + 1):
            t[i, i] -= mu
        # explicit QR factorization of the shifted window by Givens rotations
        for i in range(lo, hi):
            f = t[i, i]
            g = t[i + 1, i]
            af = abs(f)
            ag = abs(g)
            r = np.sqrt(af * af + ag * ag)
            if r <= 1e-300:
                c = 1.0
                s = 0.0 + 0.0j
            elif af <= 1e-300:
                c = 0.0
                s = g.conjugate() / ag
            else:
                c = af / r
                s = (f / af) * g.conjugate() / r
            cs[i - lo] = c
            sn[i - lo] = s
            t[i, i] = c * f + s * g
            t[i + 1, i] = 0.0 + 0.0j
            for j in range(i + 1, n):
                t1 = t[i, j]
                t2 = t[i + 1, j]
                t[i, j] = c * t1 + s * t2
                t[i + 1, j] = -s.conjugate() * t1 + c * t2
        # multiply the conjugate rotations back on the right (RQ step)
        for i in range(lo, hi):
            c = cs[i - lo]
            s = sn[i - lo]
            for r2 in range(i + 2):
                t1 = t[r2, i]
                t2 = t[r2, i + 1]
                t[r2, i] = c * t1 + s.conjugate() * t2
                t[r2, i + 1] = -s * t1 + c * t2
            for r2 in range(n):
                q1 = q[r2, i]
                q2 = q[r2, i + 1]
                q[r2, i] = c * q1 + s.conjugate() * q2
                q[r2, i + 1] = -s * q1 + c * q2
        for i in range(lo, hi + 1):
            t[i, i] += mu
    for i in range(n):
        for j in range(i):
            t[i, j] = 0.0 + 0.0j
    return True


def _tri_eigvecs(t, q):
    """Eigenvectors of q @ t @ q^H from the triangular factor, as columns.

    Back-substitutes (t - t[k,k] I) y = 0 with a floored denominator so that
    (near-)repeated diagonal entries yield the dominant eigendirection instead
    of dividing by zero. Columns are L2-normalized.
    """
    n = t.shape[0]
    v = np.zeros((n, n), np.complex128)
    tnorm = 0.0
    for i in range(n):
        for j in range(i, n):
            a = abs(t[i, j])
            if a > tnorm:
                tnorm = a
    if tnorm == 0.0:
        tnorm = 1.0
    smin = _EPS * tnorm
    for k in range(n):
        y = np.zeros(n, np.complex128)
        y[k] = 1.0 + 0.0j
        for i in range(k - 1, -1, -1):
            s = t[i, i + 1:k + 1] @ y[i + 1:k + 1]
            d = t[i, i] - t[k, k]
            if abs(d) < smin:
                d = smin + 0.0j
            yi = -s / d
            ay = abs(yi)
            if ay > 1e120:
                # homogeneous system: rescaling the partial solution is safe
                scale = 1e120 / ay
                for j in range(i + 1, k + 1):
                    y[j] *= scale
                yi *= scale
            y[i] = yi
        x = q @ y
        xnorm = 0.0
        for i in range(n):
            xnorm += x[i].real ** 2 + x[i].imag ** 2
        xnorm = np.sqrt(xnorm)
        for i in range(n):
            v[i, k] = x[i] / xnorm
    return v


def _make_solver(hessenberg, qr_schur, tri_eigvecs):
    """Assemble a full eigensolver from the three stage kernels."""

    def eig_all(a: np.ndarray, maxiter: int) -> tuple[np.ndarray, np.ndarray, bool]:
        """Eigenvalues and L2-normalized eigenvector columns of a square matrix."""
        t = np.ascontiguousarray(a, dtype=np.complex128).copy()
        n = t.shape[0]
        q = np.eye(n, dtype=np.complex128)
        if n > 2:
            hessenberg(t, q)
        ok = qr_schur(t, q, maxiter)
        w = np.diagonal(t).copy()
        v = tri_eigvecs(t, q)
        return w, v, bool(ok)

    return eig_all


#: pure Python/numpy path; always available (used by the benchmark)
eig_all_python = _make_solver(_hessenberg, _qr_schur, _tri_eigvecs)

if NUMBA_ENABLED:
    _jit = _njit(cache=True)
    #: jitted path, the default
    eig_all = _make_solver(_jit(_hessenberg), _jit(_qr_schur), _jit(_tri_eigvecs))
else:
    eig_all = eig_all_python
