"""Numerical library for the hyperbolic Calogero-Sutherland wave function.

Evaluates the same joint eigenfunction through four independent routes
(real-space Euler integral, spectral Mellin-Barnes integral, Harish-Chandra
chamber series, plane-wave asymptotics) and cross-verifies them against exact
closed forms and against the eigen-equations of the differential, difference
and Baxter integral operators of the model.
"""

from .errors import (
    CSWaveError,
    DegenerateInput,
    DepthExceeded,
    DomainError,
    NonConvergence,
    NonFinite,
    PoleError,
    QuadratureError,
    StepTooLarge,
    ZeroError,
)
from .gammafn import (
    Coupling,
    alpha_n,
    dual_kernel_khat,
    dual_measure_muhat,
    dual_weight_what,
    gamma,
    kernel_k,
    log_gamma,
    measure_mu,
    norm_const,
    rgamma,
    weight_w,
)
from .doublesine import (
    Periods,
    bernoulli_b22,
    bound_check_uniform,
    gamma_limit_check,
    kernel_kr,
    limit_check_pointwise,
    measure_mur,
    s2,
    weight_wr,
)
from .quadrature import EvalResult, QuadSpec, integrate_1d, integrate_nested, truncation_radius
from .wavefunctions import (
    euler_psi,
    hc_coeff,
    hc_index_matrices,
    hc_psi,
    hc_psi_symmetrized,
    ho_f,
    lattice_gap,
    mb_psi,
    phi_asymptotic,
    phi_renormalized,
    psi_asymptotic,
    psi_zero,
)
from .operators import (
    EigenResidual,
    FDStencil,
    apply_baxter,
    apply_cs_hamiltonian,
    apply_dual_baxter,
    apply_dual_difference_hr,
    apply_macdonald_rational,
)
from .verification import (
    IdentityReport,
    barnes_check,
    baxter_commutativity_check,
    gustafson_check,
    kernel_function_identity_check,
    kernel_identity_check,
    rational_hypergeom_check,
)

__version__ = "0.1.0"
