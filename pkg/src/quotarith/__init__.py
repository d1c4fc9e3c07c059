"""Euler and Carmichael quotients: d(m), f(m), their identities, bounds and constructions."""

from .core_arith import (
    ArithProfile,
    Factorization,
    carmichael_lambda,
    delta,
    euler_phi,
    factorize,
    is_prime,
    iterated_totient_radical,
    multiplicative_order,
    phi_iterate,
    radical,
)
from .df_functions import DfRecord, big_d, d_of, df_record, f_of, predicted_df
from .quotients import (
    QuotientKind,
    carmichael_quotient_mod,
    euler_quotient_mod,
    image_generator,
    quotient_exact,
    zero_set_count,
)

__version__ = "0.1.0"
