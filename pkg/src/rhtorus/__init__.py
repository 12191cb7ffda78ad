"""Harmonic analysis on the multiplicative semigroup of naturals.

Dirichlet convolution, Laplace transforms on the infinite torus, torus
integral representations of mu, phi and Lambda, and finite-range
evaluators of Riemann-hypothesis-equivalent inequalities.
"""

__version__ = "0.1.0"

from .arithmetic import (
    ExponentVector,
    PrimorialRecord,
    SieveLimitError,
    SieveTable,
    build_sieve,
    chebyshev_psi,
    exponent_vector,
    harmonic_number,
    mangoldt,
    mertens,
    primes_up_to,
    primorials,
)
from .criteria import (
    EULER_GAMMA,
    CriterionRecord,
    GrowthDiagnostic,
    inequality_one_check,
    lagarias_check,
    littlewood_diagnostic,
    nicolas_check,
    prop1_consistency,
)
from .dirichlet import (
    ArithmeticFunction,
    Weight,
    convolve,
    identity,
    log_function,
    mangoldt_function,
    mobius_function,
    mobius_invert,
    ones,
    totient_function,
    unit,
    weighted_norm,
)
from .torus import (
    CircleFactor,
    TorusIntegralResult,
    TruncatedTorusPoint,
    circle_factor_closed,
    circle_factor_quadrature,
    euler_product_partial,
    laplace_partial,
    smooth_number_sum,
    torus_integral_mangoldt,
    torus_integral_mu,
    torus_integral_phi,
    transform_homomorphism_check,
)
