"""Alternating Hurwitz zeta, the modified gamma function, and zeta-regularized
alternating products."""

from .errors import AltZetaError, DomainError, ParameterError, PoleError
from .gamma import (
    ModStieltjesResult,
    classical_digamma,
    classical_log_gamma,
    gamma_tilde,
    log_gamma_tilde,
    mod_euler_const,
    mod_stieltjes,
    psi_tilde,
    psi_tilde_n,
)
from .numcore import (
    EvalConfig,
    SeriesResult,
    alt_sum,
    bernoulli_numbers,
    contour_taylor_coeffs,
    richardson_extrapolate,
)
from .regprod import (
    ProductSpec,
    VerificationReport,
    classical_lerch_check,
    geometric_mean_oracle,
    kurokawa_wakayama,
    lambda_star,
    lambda_star_deriv_zero,
    mizuno_rhs,
    reg_alt_product,
    roots_of_unity,
    verify_lerch_qi,
    verify_lerch_type,
    verify_mizuno,
    verify_suite,
    verify_wallis,
    wallis_extrapolated,
    wallis_partial,
)
from .zeta import (
    alt_hurwitz_zeta,
    dirichlet_eta,
    eta_prime_zero,
    hurwitz_zeta,
    hurwitz_zeta_s_derivative,
    riemann_zeta,
)

__version__ = "0.1.0"
