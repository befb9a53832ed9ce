"""Zeta functions of explicit finite dynamical systems and of periodic automorphisms."""

from __future__ import annotations

import warnings
from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from . import _kernels
from .exactmath import poly as P
from .exactmath.numtheory import divisors, mobius
from .exactmath.ratfunc import RationalFunctionQ
from .exactmath.series import (
    TruncatedSeriesQ,
    binomial_series,
    exp_zeta_series,
    product,
)


@dataclass(frozen=True)
class FiniteMap:
    """A self-map of ``{0, ..., N-1}`` given by its successor table."""

    table: tuple[int, ...]

    def __post_init__(self):
        t = tuple(int(x) for x in self.table)
        n = len(t)
        if any(not 0 <= x < n for x in t):
            raise ValueError("successor table must map 0..N-1 into 0..N-1")
        object.__setattr__(self, "table", t)

    @property
    def size(self) -> int:
        return len(self.table)

    def array(self) -> np.ndarray:
        return np.asarray(self.table, dtype=np.int64)


@dataclass(frozen=True)
class OrbitDecomposition:
    cycle_lengths: tuple[int, ...]
    transient: int


def orbit_decomposition(f: FiniteMap) -> OrbitDecomposition:
    """Cycle lengths (sorted, with multiplicity) and the number of non-periodic points."""
    if f.size == 0:
        return OrbitDecomposition((), 0)
    cycles, transient = _kernels.cycle_structure(f.array())
    return OrbitDecomposition(tuple(int(c) for c in cycles), int(transient))


def fixed_count(f: FiniteMap | OrbitDecomposition, n: int) -> int:
    """``#{x : f^n(x) = x}``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    dec = f if isinstance(f, OrbitDecomposition) else orbit_decomposition(f)
    return sum(ell for ell in dec.cycle_lengths if n % ell == 0)


@dataclass(frozen=True)
class OrbitZeta:
    zeta: RationalFunctionQ
    a: int  # number of periodic orbits
    b: int  # number of periodic points


def zeta_from_orbits(f: FiniteMap | OrbitDecomposition) -> OrbitZeta:
    """``prod 1/(1 - z^len)`` over cycles, with the functional-equation constants.

    Raises ``ArithmeticError`` if ``Z(1/z) = (-1)^a z^b Z(z)`` fails as a
    polynomial identity (it cannot for a genuine cycle decomposition).
    """
    dec = f if isinstance(f, OrbitDecomposition) else orbit_decomposition(f)
    den: list = [1]
    for ell in dec.cycle_lengths:
        den = P.pmul(den, [1] + [0] * (ell - 1) + [-1])
    zeta = RationalFunctionQ([1], den)
    a, b = len(dec.cycle_lengths), sum(dec.cycle_lengths)
    if not functional_equation_holds(zeta, a, b):
        raise ArithmeticError("orbit zeta violates Z(1/z) = (-1)^a z^b Z(z)")
    return OrbitZeta(zeta, a, b)


def functional_equation_holds(zeta: RationalFunctionQ, a: int, b: int) -> bool:
    """Check ``Z(1/z) = (-1)^a z^b Z(z)`` by clearing denominators.

    With ``Z = p/q`` and ``D = max(deg p, deg q)``, ``Z(1/z) = rev_D(p)/rev_D(q)``
    where ``rev_D(p)(z) = z^D p(1/z)``. The identity becomes
    ``rev_D(p) q = (-1)^a z^b p rev_D(q)``.
    """
    p, q = list(zeta.numerator), list(zeta.denominator)
    D = max(len(p), len(q)) - 1

    def rev(c):
        c = c + [0] * (D + 1 - len(c))
        return list(reversed(c))

    lhs = P.pmul(rev(p), q)
    rhs = P.pscale(P.pmul([0] * b + [1], P.pmul(p, rev(q))), (-1) ** a)
    return P.trim(lhs) == P.trim(rhs)


# --------------------------------------------------------------- periodic


@dataclass(frozen=True)
class FormalProduct:
    """``prod (1 - z^d)^{e_d}`` with exact rational exponents."""

    factors: tuple[tuple[int, Fraction], ...]

    def series(self, N: int) -> TruncatedSeriesQ:
        return product((binomial_series(1, d, e, N) for d, e in self.factors), N)

    def to_json(self) -> list[dict]:
        out = []
        for d, e in self.factors:
            out.append({"d": d, "exponent": f"{e.numerator}/{e.denominator}"})
        return out


@dataclass(frozen=True)
class PeriodicProduct:
    period: int
    P: Mapping[int, int]
    product: FormalProduct


def periodic_product_formula(values: Mapping[int, int], m: int) -> PeriodicProduct:
    """Zeta of a periodic map of least period ``m`` from ``Z(phi^d)`` for ``d | m``.

    ``P(d) = sum_{d1 | d} mu(d1) Z(phi^{d/d1})`` and the zeta function is
    ``prod_{d | m} (1 - z^d)^{-P(d)/d}``.
    """
    if m < 1:
        raise ValueError("period must be >= 1")
    divs = divisors(m)
    missing = [d for d in divs if d not in values]
    if missing:
        raise ValueError(f"missing Z(phi^d) for divisors {missing} of m={m}")
    Pd = {d: sum(mobius(d1) * int(values[d // d1]) for d1 in divisors(d)) for d in divs}
    if any(Pd[d] % d for d in divs):
        warnings.warn(
            "some P(d) are not divisible by d; the input does not look like "
            "fixed-point counts of a periodic system",
            stacklevel=2,
        )
    factors = tuple((d, Fraction(-Pd[d], d)) for d in divs if Pd[d])
    return PeriodicProduct(m, Pd, FormalProduct(factors))


def periodic_extension(values: Mapping[int, int], m: int, N: int) -> list[int]:
    """``Z(phi^n) = Z(phi^gcd(n, m))`` for ``n = 1..N``."""
    return [int(values[gcd(n, m)]) for n in range(1, N + 1)]


def prime_period_product(z1: int, zm: int, m: int) -> FormalProduct:
    """Closed form for prime period: ``(1-z)^{-Z(phi)} (1-z^m)^{(Z(phi)-Z(phi^m))/m}``."""
    factors = []
    if z1:
        factors.append((1, Fraction(-z1)))
    if z1 != zm:
        factors.append((m, Fraction(z1 - zm, m)))
    return FormalProduct(tuple(factors))


def product_matches_sequence(pp: PeriodicProduct, values: Mapping[int, int], N: int) -> bool:
    seq = periodic_extension(values, pp.period, N)
    return pp.product.series(N) == exp_zeta_series(seq)


__all__ = [
    "FiniteMap",
    "FormalProduct",
    "OrbitDecomposition",
    "OrbitZeta",
    "PeriodicProduct",
    "fixed_count",
    "functional_equation_holds",
    "orbit_decomposition",
    "periodic_extension",
    "periodic_product_formula",
    "prime_period_product",
    "product_matches_sequence",
    "zeta_from_orbits",
]
