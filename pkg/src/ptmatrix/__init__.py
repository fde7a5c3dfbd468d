"""Finite-dimensional PT-symmetric matrix Hamiltonians.

Construction of parity operators and PT-symmetric systems, spectral phase
classification, the C operator and CPT inner product, time evolution with
unitarity checks, parameter-count bookkeeping, and exact two-level closed
forms.
"""

__version__ = "0.1.0"

from ._kernels import NUMBA_ENABLED
from .algebra import build_c_operator, build_weight_matrix, cpt_inner, pt_conjugate, pt_inner
from .closedform import (
    ThreeByThreeParityParams,
    TwoByTwoParams,
    c2,
    eig2,
    h2,
    p2,
    p3,
    vec2,
)
from .construct import (
    BlockForm,
    MatrixClass,
    ParameterCounts,
    ParitySpec,
    PTSystem,
    classify_matrix,
    count_parity_params,
    make_h0,
    make_p0,
    make_parity,
    make_pt_system,
    make_rotation,
    max_signature,
    parameter_table,
    pt_commutes,
    pt_system_from_matrices,
    random_pt_system,
)
from .dynamics import EvolutionTrace, NonunitarityResult, evolve, nonunitarity_demo, unitarity_trace
from .errors import (
    BrokenPhaseError,
    CollinearityError,
    ConvergenceError,
    ExceptionalPointError,
)
from .linalg import (
    DEFAULT_TOL,
    EigenPair,
    eigendecompose,
    is_hermitian,
    is_orthogonal,
    is_real,
    is_symmetric,
    mat_exp_times,
    mat_mul,
    max_abs,
)
from .spectral import (
    Phase,
    SpectralData,
    classify_phase,
    find_unbroken_seeds,
    fix_pt_phase,
    pt_apply,
    pt_norm_signature,
)

__all__ = [
    "NUMBA_ENABLED",
    "__version__",
    "BlockForm",
    "BrokenPhaseError",
    "CollinearityError",
    "ConvergenceError",
    "DEFAULT_TOL",
    "EigenPair",
    "EvolutionTrace",
    "ExceptionalPointError",
    "MatrixClass",
    "NonunitarityResult",
    "ParameterCounts",
    "ParitySpec",
    "PTSystem",
    "Phase",
    "SpectralData",
    "ThreeByThreeParityParams",
    "TwoByTwoParams",
    "build_c_operator",
    "build_weight_matrix",
    "c2",
    "classify_matrix",
    "classify_phase",
    "count_parity_params",
    "cpt_inner",
    "eig2",
    "eigendecompose",
    "evolve",
    "find_unbroken_seeds",
    "fix_pt_phase",
    "h2",
    "is_hermitian",
    "is_orthogonal",
    "is_real",
    "is_symmetric",
    "make_h0",
    "make_p0",
    "make_parity",
    "make_pt_system",
    "make_rotation",
    "mat_exp_times",
    "mat_mul",
    "max_abs",
    "max_signature",
    "nonunitarity_demo",
    "p2",
    "p3",
    "parameter_table",
    "pt_apply",
    "pt_commutes",
    "pt_conjugate",
    "pt_inner",
    "pt_norm_signature",
    "pt_system_from_matrices",
    "random_pt_system",
    "unitarity_trace",
    "vec2",
]
