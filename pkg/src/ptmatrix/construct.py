"""Constructors for parity operators, block-form Hamiltonians and bound
PT-symmetric systems, plus the parameter-count bookkeeping for each matrix
family.

A parity operator is a real symmetric involution realized as R P0 R^T, where
P0 = diag(+1 x m_plus, -1 x m_minus) and R is an orthogonal matrix built as an
ordered product of Givens rotations. The same R conjugates the block
Hamiltonian H0 = [[A, iB], [iB^T, C]] into the general symmetric PT-symmetric
Hamiltonian.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .linalg import DEFAULT_TOL, as_matrix, is_hermitian, is_real, is_symmetric, max_abs

SYMMETRY_TOL = 1e-12
PT_COMMUTATION_TOL = 1e-10


@dataclass(frozen=True)
class ParitySpec:
    """Signature (m_plus, m_minus) and rotation angles realizing a parity."""

    m_plus: int
    m_minus: int
    angles: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "angles", np.asarray(self.angles, dtype=np.float64))

    @property
    def dim(self) -> int:
        return self.m_plus + self.m_minus


@dataclass(frozen=True)
class BlockForm:
    """Real blocks (A, B, C) of the Hamiltonian [[A, iB], [iB^T, C]]."""

    a_block: np.ndarray
    b_block: np.ndarray
    c_block: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "a_block", np.asarray(self.a_block, dtype=np.float64))
        object.__setattr__(self, "b_block", np.asarray(self.b_block, dtype=np.float64))
        object.__setattr__(self, "c_block", np.asarray(self.c_block, dtype=np.float64))

    @property
    def signature(self) -> tuple[int, int]:
        return self.a_block.shape[0], self.c_block.shape[0]


@dataclass(frozen=True)
class PTSystem:
    """A Hamiltonian bound to its parity operator, with construction record."""

    h: np.ndarray
    p: np.ndarray
    provenance: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return self.h.shape[0]


class MatrixClass(enum.Enum):
    REAL_SYMMETRIC = "real_symmetric"
    HERMITIAN = "hermitian"
    PT_SYMMETRIC = "pt_symmetric"
    SYMMETRIC = "symmetric"


def n_rotation_angles(d: int) -> int:
    return d * (d - 1) // 2


def rotation_pairs(d: int) -> list[tuple[int, int]]:
    """Index pairs (i, j), i < j, in lexicographic order."""
    return [(i, j) for i in range(d) for j in range(i + 1, d)]


def givens(d: int, i: int, j: int, theta: float) -> np.ndarray:
    """Plane rotation by theta in the (i, j) coordinate plane."""
    g = np.eye(d)
    c, s = np.cos(theta), np.sin(theta)
    g[i, i] = c
    g[j, j] = c
    g[i, j] = -s
    g[j, i] = s
    return g


def make_rotation(d: int, angles) -> np.ndarray:
    """Orthogonal matrix with det +1: the left-to-right product of Givens
    rotations over all index pairs i < j in lexicographic order."""
    ang = np.asarray(angles, dtype=np.float64).ravel()
    if ang.shape[0] != n_rotation_angles(d):
        raise ValueError(
            f"dimension {d} needs {n_rotation_angles(d)} angles, got {ang.shape[0]}"
        )
    r = np.eye(d)
    for (i, j), theta in zip(rotation_pairs(d), ang):
        r = r @ givens(d, i, j, theta)
    return r


def make_p0(m_plus: int, m_minus: int) -> np.ndarray:
    """Diagonal parity: m_plus entries of +1 followed by m_minus of -1."""
    if m_plus < 0 or m_minus < 0:
        raise ValueError("eigenvalue counts must be nonnegative")
    if m_plus + m_minus < 1:
        raise ValueError("parity needs at least one eigenvalue")
    return np.diag(np.concatenate([np.ones(m_plus), -np.ones(m_minus)])).astype(
        np.complex128
    )


def make_parity(spec: ParitySpec) -> np.ndarray:
    """Realize P = R P0 R^T; real symmetric with P^2 = I."""
    p0 = make_p0(spec.m_plus, spec.m_minus)
    r = make_rotation(spec.dim, spec.angles)
    m = r @ p0.real @ r.T
    return ((m + m.T) / 2.0).astype(np.complex128)  # exactly symmetric


def make_h0(blocks: BlockForm) -> np.ndarray:
    """Assemble [[A, iB], [iB^T, C]]; complex symmetric by construction."""
    a, b, c = blocks.a_block, blocks.b_block, blocks.c_block
    mp, mm = blocks.signature
    if a.ndim != 2 or a.shape != (mp, mp) or c.ndim != 2 or c.shape != (mm, mm):
        raise ValueError("A and C must be square")
    if b.shape != (mp, mm):
        raise ValueError(f"B must have shape {(mp, mm)}, got {b.shape}")
    if max_abs(a - a.T) > SYMMETRY_TOL or max_abs(c - c.T) > SYMMETRY_TOL:
        raise ValueError("A and C must be symmetric")
    d = mp + mm
    h0 = np.zeros((d, d), dtype=np.complex128)
    h0[:mp, :mp] = (a + a.T) / 2.0
    h0[:mp, mp:] = 1j * b
    h0[mp:, :mp] = 1j * b.T
    h0[mp:, mp:] = (c + c.T) / 2.0
    return h0


def make_pt_system(blocks: BlockForm, spec: ParitySpec, seed=None) -> PTSystem:
    """Rotate (H0, P0) by the same R into a bound PT-symmetric pair."""
    if blocks.signature != (spec.m_plus, spec.m_minus):
        raise ValueError(
            f"block signature {blocks.signature} does not match parity "
            f"signature {(spec.m_plus, spec.m_minus)}"
        )
    h0 = make_h0(blocks)
    r = make_rotation(spec.dim, spec.angles)
    m = r @ h0 @ r.T
    h = (m + m.T) / 2.0  # exactly symmetric
    p = make_parity(spec)
    provenance = {
        "signature": [spec.m_plus, spec.m_minus],
        "angles": [float(x) for x in spec.angles],
        "blocks": {
            "A": blocks.a_block.tolist(),
            "B": blocks.b_block.tolist(),
            "C": blocks.c_block.tolist(),
        },
        "seed": seed,
    }
    sys = PTSystem(h=h, p=p, provenance=provenance)
    resid = max_abs(p @ h.conj() @ p - h)
    if resid > PT_COMMUTATION_TOL:
        raise ValueError(f"construction failed the PT-commutation check ({resid:.3e})")
    return sys


def pt_system_from_matrices(h, p, provenance=None, tol: float = DEFAULT_TOL) -> PTSystem:
    """Bind an existing (H, P) pair, validating all structural invariants."""
    hm = as_matrix(h)
    pm = as_matrix(p)
    if hm.shape != pm.shape:
        raise ValueError("H and P must share a dimension")
    if max_abs(hm - hm.T) > SYMMETRY_TOL:
        raise ValueError("H must be symmetric")
    validate_parity(pm, tol)
    if max_abs(pm @ hm.conj() @ pm - hm) > PT_COMMUTATION_TOL:
        raise ValueError("H does not commute with the PT operation for this P")
    return PTSystem(h=hm, p=pm, provenance=provenance or {})


def validate_parity(p, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Check that p is a real symmetric involution; return it as a matrix."""
    pm = as_matrix(p)
    if not is_real(pm, tol):
        raise ValueError("parity must be real")
    if max_abs(pm - pm.T) > tol:
        raise ValueError("parity must be symmetric")
    if max_abs(pm @ pm - np.eye(pm.shape[0])) > max(tol, 1e-12):
        raise ValueError("parity must square to the identity")
    return pm


def count_parity_params(d: int, m_plus: int, m_minus: int) -> int:
    """Free real parameters in a parity with the given signature."""
    if d < 0 or m_plus < 0 or m_minus < 0:
        raise ValueError("counts must be nonnegative")
    if m_plus + m_minus != d:
        raise ValueError("signature must sum to the dimension")
    return (
        d * (d - 1) // 2 - m_plus * (m_plus - 1) // 2 - m_minus * (m_minus - 1) // 2
    )


@dataclass(frozen=True)
class ParameterCounts:
    """Free real parameters in the five matrix families at one dimension."""

    parity_max: int
    h0: int
    pt: int
    hermitian: int
    real_symmetric: int


def parameter_table(d: int) -> ParameterCounts:
    """Closed-form parameter counts at dimension d.

    parity_max maximizes over signatures: balanced for even d, and
    m_plus - m_minus = 1 for odd d.
    """
    if d < 1:
        raise ValueError("dimension must be at least 1")
    return ParameterCounts(
        parity_max=d * d // 4,
        h0=d * (d + 1) // 2,
        pt=(3 * d * d + 2 * d - (d % 2)) // 4,
        hermitian=d * d,
        real_symmetric=d * (d + 1) // 2,
    )


def max_signature(d: int) -> tuple[int, int]:
    """Signature with the most parity parameters: balanced, or off by one."""
    return (d + 1) // 2, d // 2


def pt_commutes(h, p, tol: float = DEFAULT_TOL, conjugate_transpose: bool = False) -> bool:
    """Whether P (T h) P == h, with T either plain conjugation or
    conjugate-transpose. For symmetric h the two predicates coincide
    entrywise."""
    hm = as_matrix(h)
    pm = as_matrix(p)
    ht = hm.conj().T if conjugate_transpose else hm.conj()
    return max_abs(pm @ ht @ pm - hm) <= tol


def classify_matrix(m, p=None, tol: float = DEFAULT_TOL) -> set[MatrixClass]:
    """Membership flags by direct predicate evaluation.

    PT_SYMMETRIC is only decidable when a parity is supplied; an invalid
    parity (not a real symmetric involution) raises.
    """
    a = as_matrix(m)
    flags: set[MatrixClass] = set()
    if is_symmetric(a, tol):
        flags.add(MatrixClass.SYMMETRIC)
    if is_hermitian(a, tol):
        flags.add(MatrixClass.HERMITIAN)
    if is_real(a, tol) and is_symmetric(a, tol):
        flags.add(MatrixClass.REAL_SYMMETRIC)
    if p is not None:
        pm = validate_parity(p, tol)
        if pt_commutes(a, pm, tol):
            flags.add(MatrixClass.PT_SYMMETRIC)
    return flags


# --- seeded random generation ------------------------------------------------
#
# The generator is numpy's default_rng (PCG64) with a 64-bit seed. Draw order
# is fixed: A's upper triangle row-major, then B row-major, then C's upper
# triangle, then the rotation angles. Block entries are uniform on [-1, 1],
# angles uniform on [0, 2*pi).


def _symmetric_from_upper(vals: np.ndarray, m: int) -> np.ndarray:
    out = np.zeros((m, m))
    iu = np.triu_indices(m)
    out[iu] = vals
    return out + np.triu(out, 1).T


def random_blocks(rng: np.random.Generator, m_plus: int, m_minus: int) -> BlockForm:
    a = _symmetric_from_upper(
        rng.uniform(-1.0, 1.0, m_plus * (m_plus + 1) // 2), m_plus
    )
    b = rng.uniform(-1.0, 1.0, (m_plus, m_minus))
    c = _symmetric_from_upper(
        rng.uniform(-1.0, 1.0, m_minus * (m_minus + 1) // 2), m_minus
    )
    return BlockForm(a_block=a, b_block=b, c_block=c)


def random_angles(rng: np.random.Generator, d: int) -> np.ndarray:
    return rng.uniform(0.0, 2.0 * np.pi, n_rotation_angles(d))


def random_pt_system(dim: int, signature: tuple[int, int], seed: int) -> PTSystem:
    """Reproducible random system: same (dim, signature, seed) gives the same
    matrices on every platform."""
    m_plus, m_minus = signature
    if m_plus + m_minus != dim:
        raise ValueError("signature must sum to the dimension")
    rng = np.random.default_rng(seed)
    blocks = random_blocks(rng, m_plus, m_minus)
    spec = ParitySpec(m_plus=m_plus, m_minus=m_minus, angles=random_angles(rng, dim))
    return make_pt_system(blocks, spec, seed=seed)
