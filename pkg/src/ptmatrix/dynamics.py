"""Time evolution under exp(-iHt) and quantitative unitarity checks.

Time is dimensionless. A valid unbroken system conserves the CPT inner
product of evolving states; an asymmetric Hamiltonian forces a weight-matrix
inner product whose value drifts because the weight fails to commute with H.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import build_weight_matrix, cpt_inner, pt_conjugate, pt_inner
from .construct import PTSystem, validate_parity
from .errors import ExceptionalPointError
from .linalg import COND_CAP, DEFAULT_TOL, as_matrix, eig_arrays, mat_exp_times, max_abs

COMMUTATOR_REL_THRESHOLD = 1e-3


@dataclass(frozen=True)
class EvolutionTrace:
    """Sampled inner product along an evolution, with its sup-norm drift."""

    times: np.ndarray
    inner_products: np.ndarray
    max_drift: float


@dataclass(frozen=True)
class NonunitarityResult:
    """Weight-matrix trace plus the commutator size that explains the drift."""

    trace: EvolutionTrace
    commutator_norm: float
    conclusive: bool


def evolve(sys: PTSystem, state, t: float, tol: float = DEFAULT_TOL) -> np.ndarray:
    """exp(-iHt) applied to the state."""
    vec = np.asarray(state, dtype=np.complex128)
    if vec.shape != (sys.dim,):
        raise ValueError("state dimension does not match the system")
    return mat_exp_times(sys.h, -1j * t, tol) @ vec


def _propagator(h: np.ndarray, tol: float):
    """One-time diagonalization; returns state, t -> exp(-iHt) state."""
    w, v, _ = eig_arrays(h, tol)
    sing = np.linalg.svd(v, compute_uv=False)
    if sing[-1] <= 0.0 or sing[0] / sing[-1] > COND_CAP:
        raise ExceptionalPointError("defective Hamiltonian: cannot evolve")
    vinv = np.linalg.solve(v, np.eye(h.shape[0], dtype=np.complex128))

    def apply(state: np.ndarray, t: float) -> np.ndarray:
        return v @ (np.exp(-1j * w * t) * (vinv @ state))

    return apply


def _grid(t_max: float, steps: int) -> np.ndarray:
    if steps < 2:
        raise ValueError("need at least two samples")
    if t_max < 0.0:
        raise ValueError("t_max must be nonnegative")
    return np.linspace(0.0, t_max, steps)


def unitarity_trace(
    sys: PTSystem,
    c,
    a,
    b,
    t_max: float = 10.0,
    steps: int = 101,
    tol: float = DEFAULT_TOL,
    product: str = "cpt",
) -> EvolutionTrace:
    """Sample the CPT (or PT) inner product of two evolving states.

    Both products are conserved for a PT-symmetric H; the CPT one is the
    positive-definite physical norm.
    """
    if product not in ("cpt", "pt"):
        raise ValueError("product must be 'cpt' or 'pt'")
    if product == "cpt" and c is None:
        raise ValueError("the cpt product needs the C operator")
    av = np.asarray(a, dtype=np.complex128)
    bv = np.asarray(b, dtype=np.complex128)
    times = _grid(t_max, steps)
    apply = _propagator(sys.h, tol)
    vals = np.empty(times.shape[0], dtype=np.complex128)
    for k, t in enumerate(times):
        at = apply(av, float(t))
        bt = apply(bv, float(t))
        if product == "cpt":
            vals[k] = cpt_inner(at, bt, c, sys.p)
        else:
            vals[k] = pt_inner(at, bt, sys.p)
    drift = float(np.max(np.abs(vals - vals[0])))
    return EvolutionTrace(times=times, inner_products=vals, max_drift=drift)


def nonunitarity_demo(
    h_asym,
    p,
    t_max: float = 10.0,
    steps: int = 101,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
) -> NonunitarityResult:
    """Evolve two random states under a (generally asymmetric) H and sample
    the weight-matrix inner product (a,t| W |b,t).

    The weight W is fixed by demanding the eigenvector basis be orthonormal
    under it, so the sampled product equals (a,0| e^{iHt} W e^{-iHt} |b,0).
    When [W, H] is above threshold the product must drift; below threshold
    (e.g. the symmetric control case, where W coincides with the C operator)
    the result is flagged inconclusive and the drift stays at round-off level.
    """
    h = as_matrix(h_asym)
    pm = validate_parity(p, tol)
    w, v, _ = eig_arrays(h, tol)
    weight = build_weight_matrix([v[:, k] for k in range(h.shape[0])], pm)
    comm = max_abs(weight @ h - h @ weight)
    scale = max_abs(h)
    conclusive = comm > COMMUTATOR_REL_THRESHOLD * max(scale, 1e-300)

    rng = np.random.default_rng(seed)
    a = rng.standard_normal(h.shape[0]) + 1j * rng.standard_normal(h.shape[0])
    b = rng.standard_normal(h.shape[0]) + 1j * rng.standard_normal(h.shape[0])
    a /= np.linalg.norm(a)
    b /= np.linalg.norm(b)

    times = _grid(t_max, steps)
    apply_ket = _propagator(h, tol)
    # the bra row evolves as (a,t| = (a,0| exp(+iHt); for symmetric H this is
    # the same as PT-conjugating the evolved ket, for asymmetric H it is not
    apply_bra = _propagator(h.T, tol)
    row0 = pt_conjugate(a, pm)
    vals = np.empty(times.shape[0], dtype=np.complex128)
    for k, t in enumerate(times):
        row_t = apply_bra(row0, -float(t))
        bt = apply_ket(b, float(t))
        vals[k] = (row_t @ weight) @ bt
    drift = float(np.max(np.abs(vals - vals[0])))
    trace = EvolutionTrace(times=times, inner_products=vals, max_drift=drift)
    return NonunitarityResult(trace=trace, commutator_norm=float(comm), conclusive=bool(conclusive))
