"""Exact domino-tiling counts of 2n x 2n boards and the 2-adic behaviour of f(n).

The number of tilings of the 2n x 2n square is 2^n f(n)^2 with f(n) odd.
This package counts tilings exactly, computes f(n) inside Z[zeta], and
evaluates f modulo powers of 2 at any integer argument.
"""

from .cyclotomic import (
    BudgetExceededError,
    CycloElement,
    IdentityCheckError,
    IntPolynomial,
    alpha,
    cos_product_sign,
    cyclotomic_polynomial,
    f_exact,
    full_product_check,
    pair_product_sign,
    unit_product,
)
from .grid_count import (
    DEFAULT_KERNEL,
    KERNELS,
    BoardDims,
    Budget,
    TilingFactorization,
    count_tilings,
    count_tilings_transfer,
    factor_square_count,
)
from .padics import TwoAdicTrunc, hensel_sqrt, isqrt_exact, reduce_mod2k, val2
from .quasipoly import (
    QuasiPolynomial,
    check_reflection,
    continuity_scan,
    evaluate,
    f_mod_any,
    fit,
    fit_u,
    functional_check,
)
from .series import (
    f_mod,
    f_squared_mod,
    log_derivative_series,
    newton_e,
    p_poly,
    s_values,
    sign_factor,
    u_values,
)

__version__ = "0.1.0"
