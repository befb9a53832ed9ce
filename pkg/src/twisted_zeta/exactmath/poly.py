"""Univariate polynomials over Q as ascending coefficient lists.

``[c0, c1, c2]`` is ``c0 + c1 z + c2 z^2``. Functions accept ints or
Fractions and never mutate their arguments. The zero polynomial is ``[]``.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Sequence
from fractions import Fraction
from functools import reduce
from math import gcd

from .numtheory import divisors

Poly = list


def trim(p: Sequence) -> list:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p: Sequence) -> int:
    return len(trim(p)) - 1


def padd(p: Sequence, q: Sequence) -> list:
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def psub(p: Sequence, q: Sequence) -> list:
    return padd(p, [-c for c in q])


def pscale(p: Sequence, c) -> list:
    return trim([c * x for x in p])


def pmul(p: Sequence, q: Sequence) -> list:
    p, q = trim(p), trim(q)
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def ppow(p: Sequence, n: int) -> list:
    result: list = [1]
    for _ in range(n):
        result = pmul(result, p)
    return result


def pdivmod(p: Sequence, q: Sequence) -> tuple[list, list]:
    """Quotient and remainder over Q."""
    q = trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(c) for c in trim(p)]
    dq = len(q) - 1
    lead = Fraction(q[-1])
    if len(r) - 1 < dq:
        return [], trim(r)
    quot = [Fraction(0)] * (len(r) - dq)
    for k in range(len(r) - 1 - dq, -1, -1):
        c = r[k + dq] / lead
        quot[k] = c
        if c:
            for j, b in enumerate(q):
                r[k + j] -= c * b
    return trim(quot), trim(r[:dq])


def pderiv(p: Sequence) -> list:
    return trim([i * c for i, c in enumerate(p)][1:])


def peval(p: Sequence, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def monic(p: Sequence) -> list:
    p = trim(p)
    if not p:
        return []
    lead = Fraction(p[-1])
    return [Fraction(c) / lead for c in p]


def pgcd(p: Sequence, q: Sequence) -> list:
    """Monic gcd over Q."""
    a, b = trim(p), trim(q)
    while b:
        _, r = pdivmod(a, b)
        a, b = b, r
    return monic(a)


def content(p: Sequence) -> Fraction:
    p = [Fraction(c) for c in trim(p)]
    if not p:
        return Fraction(0)
    num = reduce(gcd, (c.numerator for c in p))
    den = reduce(lambda a, b: a * b // gcd(a, b), (c.denominator for c in p))
    return Fraction(num, den)


def primitive(p: Sequence) -> list[int]:
    """Integer polynomial with coprime coefficients, same roots and sign of lead."""
    p = trim(p)
    if not p:
        return []
    c = content(p)
    out = [Fraction(x) / c for x in p]
    if out[-1] < 0:
        out = [-x for x in out]
    return [int(x) for x in out]


def squarefree_decomposition(p: Sequence) -> list[tuple[list, int]]:
    """Yun's algorithm: ``[(f_k, k)]`` with ``p = c * prod f_k^k``, f_k squarefree, coprime."""
    p = monic(p)
    if len(p) <= 1:
        return []
    out = []
    dp = pderiv(p)
    a = pgcd(p, dp)
    b, _ = pdivmod(p, a)
    c, _ = pdivmod(dp, a)
    d = psub(c, pderiv(b))
    k = 1
    while len(b) > 1:
        g = pgcd(b, d)
        if len(g) > 1:
            out.append((g, k))
        b, _ = pdivmod(b, g)
        c, _ = pdivmod(d, g)
        d = psub(c, pderiv(b))
        k += 1
    return out


def sturm_chain(p: Sequence) -> list[list]:
    chain = [trim([Fraction(c) for c in p])]
    chain.append(pderiv(chain[0]))
    while chain[-1]:
        _, r = pdivmod(chain[-2], chain[-1])
        chain.append([-c for c in r])
    chain.pop()
    return chain


def _sign_at(p: list, x) -> int:
    if x == math.inf:
        v = p[-1]
    elif x == -math.inf:
        v = p[-1] * (-1) ** (len(p) - 1)
    else:
        v = peval(p, Fraction(x))
    return (v > 0) - (v < 0)


def _variations(chain: list[list], x) -> int:
    signs = [s for s in (_sign_at(p, x) for p in chain) if s]
    return sum(1 for a, b in itertools.pairwise(signs) if a != b)


def count_real_roots(p: Sequence, lo=-math.inf, hi=math.inf) -> int:
    """Number of real roots of ``p`` in the open interval ``(lo, hi)``, with multiplicity.

    Endpoints are exact rationals or ``±math.inf``.
    """
    p = trim(p)
    if not p:
        raise ValueError("the zero polynomial has no finite root count")
    if not lo < hi:
        raise ValueError(f"degenerate interval ({lo}, {hi})")
    total = 0
    for factor, mult in squarefree_decomposition(p):
        chain = sturm_chain(factor)
        # Sturm's count is for the half-open interval (lo, hi].
        n = _variations(chain, lo) - _variations(chain, hi)
        if hi != math.inf and peval(factor, Fraction(hi)) == 0:
            n -= 1
        total += mult * n
    return total


_CYCLO_CACHE: dict[int, list[int]] = {}


def cyclotomic(n: int) -> list[int]:
    """n-th cyclotomic polynomial, ascending integer coefficients."""
    if n < 1:
        raise ValueError("cyclotomic index must be >= 1")
    if n not in _CYCLO_CACHE:
        num = [-1] + [0] * (n - 1) + [1]
        for d in divisors(n):
            if d < n:
                num, r = pdivmod(num, cyclotomic(d))
                assert not r
        _CYCLO_CACHE[n] = [int(c) for c in num]
    return list(_CYCLO_CACHE[n])


def divides(q: Sequence, p: Sequence) -> bool:
    _, r = pdivmod(p, q)
    return not r


def rational_roots(p: Sequence) -> dict[Fraction, int]:
    """Rational roots of ``p`` with multiplicities (rational root theorem)."""
    f = primitive(p)
    if not f:
        raise ValueError("zero polynomial")
    roots: dict[Fraction, int] = {}
    zero_mult = 0
    while f and f[0] == 0:
        f = f[1:]
        zero_mult += 1
    if zero_mult:
        roots[Fraction(0)] = zero_mult
    if len(f) <= 1:
        return roots
    cands = {
        Fraction(s * a, b)
        for a in divisors(f[0])
        for b in divisors(f[-1])
        for s in (1, -1)
    }
    for r in sorted(cands):
        lin = [-r.numerator, r.denominator]
        while len(f) > 1 and divides(lin, f):
            f = primitive(pdivmod(f, lin)[0])
            roots[r] = roots.get(r, 0) + 1
    return roots
