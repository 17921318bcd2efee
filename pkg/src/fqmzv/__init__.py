"""Exact multiple zeta values over F_q(t) at non-positive integers, and their zeros."""

from .digits import (
    IndexTuple,
    Kind,
    LValue,
    carry_free,
    digit_sum,
    enumerate_index_set,
    greedy_element,
    is_q_even,
    l_value,
    modest_element,
    multinomial_mod_p,
)
from .harness import SUITES, GridSpec, HarnessError, SuiteReport, replay, run_suite, search_conjecture
from .field import (
    INFINITY,
    ZERO_DEGREE,
    FieldError,
    FieldParams,
    Polynomial,
    PrimeModulus,
    field_for_q,
    is_irreducible,
    make_field,
    monics_of_degree,
    poly_arith,
    poly_pow,
    primes_of_degree,
    v_adic_valuation,
)
from .mzv import (
    Classification,
    ZeroReport,
    is_trivial_zero_all_primes,
    is_trivial_zero_inf,
    is_trivial_zero_v,
    valuation_prediction,
    zeta_inf,
    zeta_v,
)
from .powersum import (
    PowerSumResult,
    Valuation,
    max_degree_prediction,
    min_degree_prediction_t,
    nu,
    s_enumerate,
    s_formula,
    s_twisted,
    s_twisted_formula_t,
    vanishes,
    vanishes_twisted,
)

__version__ = "0.1.0"
