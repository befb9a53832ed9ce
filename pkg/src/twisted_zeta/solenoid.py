"""Multiplication by a rational on ``Z[1/S]`` and its Reidemeister zeta function.

For ``xi = a/b`` acting on ``Z[1/S]`` (every prime of ``b`` in ``S``) the
Reidemeister numbers are the periodic-point counts of the dual solenoid map::

    F(j) = |xi^j - 1|_inf * prod_{p in S} |xi^j - 1|_p

The zeta function is rational exactly when no prime of ``S`` is a unit for
``xi``; otherwise it has a natural boundary on its circle of convergence.
This module classifies a SolenoidSpec by that criterion. It does not prove anything
analytic; the boundary verdict is labelled as criterion-based.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from fractions import Fraction

from ._limits import check_bits
from .exactmath.numtheory import (
    is_prime,
    multiplicative_order,
    p_adic_abs,
    strip_primes,
    valuation,
)
from .exactmath.ratfunc import RationalFunctionQ, series_of_rational
from .exactmath.recurrence import berlekamp_massey
from .exactmath.series import (
    TruncatedSeriesQ,
    exp_zeta_series,
    product,
    series_inverse,
    series_power,
)
from .zetaform import reconstruct_zeta

RATIONAL = "RATIONAL"
NATURAL_BOUNDARY = "NATURAL_BOUNDARY"
BOUNDARY_LABEL = "boundary by Theorem criterion (|xi|_p = 1 for a prime p in S)"


@dataclass(frozen=True)
class SolenoidSpec:
    """``x -> xi x`` on ``Z[1/S]`` for a finite prime set ``S``."""

    primes: tuple[int, ...]
    xi: Fraction

    def __init__(self, primes: Iterable[int], xi):
        ps = tuple(sorted({int(p) for p in primes}))
        for p in ps:
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
        x = Fraction(xi)
        if x in (0, 1, -1):
            raise ValueError(f"xi={x} is zero or a root of unity")
        bad = [p for p in _prime_factors(x.denominator) if p not in ps]
        if bad:
            raise ValueError(
                f"xi={x} does not preserve Z[1/S]: denominator primes {bad} are not inverted"
            )
        object.__setattr__(self, "primes", ps)
        object.__setattr__(self, "xi", x)

    @property
    def a(self) -> int:
        return self.xi.numerator

    @property
    def b(self) -> int:
        return self.xi.denominator


def _prime_factors(n: int) -> list[int]:
    from .exactmath.numtheory import factorint

    return sorted(factorint(n)) if abs(n) > 1 else []


def unit_primes(s: SolenoidSpec) -> tuple[int, ...]:
    """Primes ``p`` of ``S`` with ``|xi|_p = 1``."""
    return tuple(p for p in s.primes if s.a % p and s.b % p)


def periodic_count(s: SolenoidSpec, j: int) -> int:
    """``F(j)`` as a product of normalised absolute values over the places."""
    if j < 1:
        raise ValueError("j must be >= 1")
    x = s.xi**j - 1
    value = abs(x)
    for p in s.primes:
        value *= p_adic_abs(x, p)
    if value.denominator != 1 or value <= 0:
        raise ArithmeticError(f"F({j}) = {value} is not a positive integer")
    check_bits((value,), "periodic_count")
    return int(value)


def cokernel_count(s: SolenoidSpec, j: int) -> int:
    """``|Z[1/S] / (xi^j - 1)|``: strip the primes of ``S`` from ``a^j - b^j``."""
    return strip_primes(s.a**j - s.b**j, s.primes)


def periodic_counts(s: SolenoidSpec, N: int) -> list[int]:
    return [periodic_count(s, j) for j in range(1, N + 1)]


def zeta_series(s: SolenoidSpec, N: int) -> TruncatedSeriesQ:
    if N < 1:
        raise ValueError("N must be >= 1")
    return exp_zeta_series(periodic_counts(s, N))


@dataclass(frozen=True)
class DichotomyVerdict:
    tag: str
    closed_form: RationalFunctionQ | None = None
    witnesses: tuple[int, ...] = ()
    radius: Fraction | None = None
    label: str = ""

    def __post_init__(self):
        if self.tag == NATURAL_BOUNDARY and not self.witnesses:
            raise ValueError("a boundary verdict needs at least one witness prime")

    def to_json(self) -> dict:
        out: dict = {"tag": self.tag}
        if self.closed_form is not None:
            out["closed_form"] = self.closed_form.to_json()
        if self.tag == NATURAL_BOUNDARY:
            out["witnesses"] = [str(p) for p in self.witnesses]
            out["radius"] = f"{self.radius.numerator}/{self.radius.denominator}"
            out["label"] = self.label
        return out


def classify(s: SolenoidSpec, order: int = 24) -> DichotomyVerdict:
    witnesses = unit_primes(s)
    if witnesses:
        radius = Fraction(1, max(abs(s.a), abs(s.b)))
        return DichotomyVerdict(NATURAL_BOUNDARY, None, witnesses, radius, BOUNDARY_LABEL)
    return DichotomyVerdict(RATIONAL, rational_closed_form(s, order))


def rational_closed_form(s: SolenoidSpec, order: int = 24) -> RationalFunctionQ:
    """Closed form of the zeta function when no prime of ``S`` is a unit for ``xi``."""
    if unit_primes(s):
        raise ValueError("zeta function is not rational: some prime of S is a unit for xi")
    form = reconstruct_zeta(lambda j: periodic_count(s, j), order)
    if form.closed_form is None:
        raise AssertionError(
            "rational reconstruction failed for xi in Q; characteristic roots must be rational"
        )
    return form.closed_form


def no_short_recurrence(s: SolenoidSpec, terms: int = 40, max_order: int = 12) -> bool:
    """Heuristic corroboration only: no linear recurrence of order <= max_order fits F(1..terms)."""
    rec = berlekamp_massey(periodic_counts(s, terms))
    return rec is None or rec.order > max_order


# ---------------------------------------------------------------- LTE


def lte_valuation(xi, p: int, n: int) -> int:
    """``v_p(xi^n - 1)`` for an odd prime ``p`` with ``|xi|_p = 1`` by lifting the exponent."""
    if p == 2:
        raise ValueError("lifting the exponent needs an odd prime; use direct valuation at 2")
    if n < 1:
        raise ValueError("n must be >= 1")
    xi = Fraction(xi)
    d = multiplicative_order(xi, p)
    if n % d:
        return 0
    return valuation(xi**d - 1, p) + valuation(n // d, p)


def unit_valuation(xi, p: int, n: int) -> int:
    """``v_p(xi^n - 1)``: LTE for odd ``p``, direct computation at 2."""
    if p == 2:
        return valuation(Fraction(xi) ** n - 1, 2)
    return lte_valuation(xi, p, n)


# ------------------------------------------------------ boundary expansion


def _dominant_roots(s: SolenoidSpec) -> tuple[int, int]:
    """``(w_plus, w_minus)`` with ``|a^n - b^n| = w_plus^n - w_minus^n``."""
    a, b = s.a, s.b
    if abs(a) > b:
        return abs(a), (1 if a > 0 else -1) * b
    return b, a


def _level(s: SolenoidSpec, M: int) -> RationalFunctionQ:
    """``(1 - (w_plus z)^M) / (1 - (w_minus z)^M)``."""
    wp, wm = _dominant_roots(s)
    return RationalFunctionQ([1] + [0] * (M - 1) + [-(wp**M)], [1] + [0] * (M - 1) + [-(wm**M)])


@dataclass(frozen=True)
class ExpansionFactor:
    function: RationalFunctionQ
    exponent: Fraction
    level: int

    def to_json(self) -> dict:
        return {
            "numerator": [str(c) for c in self.function.numerator],
            "denominator": [str(c) for c in self.function.denominator],
            "exponent": f"{self.exponent.numerator}/{self.exponent.denominator}",
            "level": self.level,
        }


@dataclass(frozen=True)
class BoundaryExpansion:
    witness: int
    order_mod_p: int
    valuations: tuple[int, ...]
    factors: tuple[ExpansionFactor, ...]
    match_order: int
    residual: TruncatedSeriesQ
    label: str = BOUNDARY_LABEL

    def to_json(self) -> dict:
        return {
            "witness": str(self.witness),
            "order_mod_p": self.order_mod_p,
            "valuations": list(self.valuations),
            "factors": [f.to_json() for f in self.factors],
            "match_order": self.match_order,
            "residual": self.residual.to_json(),
            "label": self.label,
        }


def _factor(f: RationalFunctionQ, e: Fraction, level: int) -> ExpansionFactor:
    if e < 0:
        return ExpansionFactor(f.inverse(), -e, level)
    return ExpansionFactor(f, e, level)


def boundary_expansion(s: SolenoidSpec, depth: int, order: int) -> BoundaryExpansion:
    """Split ``log R(z) = sum F(j) z^j / j`` by the p-adic size of ``j``.

    With ``d`` the order of ``xi`` modulo the witness prime ``p`` (``d = 1``
    for ``p = 2``), ``e_j = v_p(xi^(d p^j) - 1)`` and ``G_M`` from
    :func:`_level`, the zeta function is::

        G_1^-1 * G_d^(1/d) * G_d^(-p^-e_0 / d)
               * prod_{j>=1} G_{d p^j}^((p^-e_{j-1} - p^-e_j) / (d p^j))

    The product is truncated after level ``j = depth``; the truncation agrees
    with the exact series through ``z^(d p^(depth+1) - 1)``, which is
    asserted up to ``order``.
    """
    witnesses = unit_primes(s)
    if len(witnesses) != 1:
        raise ValueError(
            f"boundary expansion needs exactly one unit prime in S, found {list(witnesses)}"
        )
    if depth < 0 or order < 1:
        raise ValueError("depth must be >= 0 and order >= 1")
    p = witnesses[0]
    d = 1 if p == 2 else multiplicative_order(s.xi, p)
    e = [unit_valuation(s.xi, p, d * p**j) for j in range(depth + 1)]
    w = [Fraction(1, p**ej) for ej in e]

    factors: list[ExpansionFactor] = []
    if d > 1:
        factors.append(_factor(_level(s, 1), Fraction(-1), 1))
        factors.append(_factor(_level(s, d), Fraction(1, d), d))
        factors.append(_factor(_level(s, d), -w[0] / d, d))
    else:
        factors.append(_factor(_level(s, 1), -w[0], 1))
    for j in range(1, depth + 1):
        M = d * p**j
        factors.append(_factor(_level(s, M), (w[j - 1] - w[j]) / M, M))

    match = min(order, d * p ** (depth + 1) - 1)
    exact = zeta_series(s, order)
    approx = product(
        (series_power(series_of_rational(f.function, order), f.exponent) for f in factors), order
    )
    if approx.truncate(match) != exact.truncate(match):
        raise ArithmeticError("truncated boundary expansion disagrees with the zeta series")
    residual = exact * series_inverse(approx)
    return BoundaryExpansion(p, d, tuple(e), tuple(factors), match, residual)
