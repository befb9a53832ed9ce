"""Elementary number theory: factoring small integers, Möbius, p-adic valuations."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd


def factorint(n: int) -> dict[int, int]:
    """Prime factorisation of ``|n|`` by trial division.

    Only intended for the moderate sizes that show up as recurrence
    constants, divisor indices and group orders.
    """
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 5
    step = 2
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += step
        step = 6 - step
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return factorint(n) == {n: 1}


def divisors(n: int) -> list[int]:
    """Positive divisors of ``n`` in increasing order."""
    if n == 0:
        raise ValueError("0 has infinitely many divisors")
    divs = [1]
    for p, e in factorint(n).items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


@lru_cache(maxsize=4096)
def mobius(n: int) -> int:
    if n < 1:
        raise ValueError(f"mobius is defined for n >= 1, got {n}")
    fac = factorint(n) if n > 1 else {}
    if any(e > 1 for e in fac.values()):
        return 0
    return -1 if len(fac) % 2 else 1


def valuation(x: int | Fraction, p: int) -> int:
    """``v_p(x)`` for nonzero rational ``x``."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("valuation of 0 is infinite")
    if p < 2:
        raise ValueError(f"p must be prime, got {p}")
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def p_adic_abs(x: int | Fraction, p: int) -> Fraction:
    """Normalised p-adic absolute value ``p ** -v_p(x)``, exactly."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if Fraction(x) == 0:
        raise ValueError("p-adic absolute value of 0 has no finite valuation")
    return Fraction(p) ** (-valuation(x, p))


def strip_primes(n: int, primes) -> int:
    """``|n|`` with every factor from ``primes`` removed."""
    n = abs(n)
    for p in primes:
        while n and n % p == 0:
            n //= p
    return n


def multiplicative_order(x: Fraction, p: int) -> int:
    """Order of the p-adic unit ``x`` in ``(Z/p)^*``."""
    x = Fraction(x)
    if x.numerator % p == 0 or x.denominator % p == 0:
        raise ValueError(f"{x} is not a unit at {p}")
    r = x.numerator * pow(x.denominator, -1, p) % p
    order, acc = 1, r
    while acc != 1:
        acc = acc * r % p
        order += 1
    return order


def lcm(a: int, b: int) -> int:
    return abs(a * b) // gcd(a, b) if a and b else 0
