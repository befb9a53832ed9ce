"""Exact integer/rational primitives shared by every other module."""

from .matrix import (
    IntMatrix,
    SmithForm,
    charpoly,
    det,
    det_one_minus_zA,
    exterior_power,
    mat_mul,
    mat_pow,
    smith_normal_form,
    trace,
)
from .numtheory import divisors, factorint, is_prime, mobius, p_adic_abs, valuation
from .poly import count_real_roots, cyclotomic, rational_roots
from .ratfunc import RationalFunctionQ, series_of_rational
from .recurrence import LinearRecurrence, berlekamp_massey
from .series import TruncatedSeriesQ, exp_zeta_series, log_coefficients

__all__ = [
    "IntMatrix",
    "LinearRecurrence",
    "RationalFunctionQ",
    "SmithForm",
    "TruncatedSeriesQ",
    "berlekamp_massey",
    "charpoly",
    "count_real_roots",
    "cyclotomic",
    "det",
    "det_one_minus_zA",
    "divisors",
    "exp_zeta_series",
    "exterior_power",
    "factorint",
    "is_prime",
    "log_coefficients",
    "mat_mul",
    "mat_pow",
    "mobius",
    "p_adic_abs",
    "rational_roots",
    "series_of_rational",
    "smith_normal_form",
    "trace",
    "valuation",
]
