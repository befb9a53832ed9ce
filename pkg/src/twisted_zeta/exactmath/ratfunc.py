"""Rational functions of one variable with integer coefficients."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm

from . import poly as P
from .series import TruncatedSeriesQ


def _normalize(num: Sequence, den: Sequence) -> tuple[tuple[int, ...], tuple[int, ...]]:
    num = P.trim([Fraction(c) for c in num])
    den = P.trim([Fraction(c) for c in den])
    if not den:
        raise ZeroDivisionError("denominator is identically zero")
    if not num:
        return (), (1,)
    g = P.pgcd(num, den)
    if len(g) > 1:
        num = P.pdivmod(num, g)[0]
        den = P.pdivmod(den, g)[0]
    scale = reduce(lcm, (c.denominator for c in num + den), 1)
    inum = [int(c * scale) for c in num]
    iden = [int(c * scale) for c in den]
    cg = reduce(gcd, inum + iden)
    if next(c for c in iden if c) < 0:
        cg = -cg
    return tuple(c // cg for c in inum), tuple(c // cg for c in iden)


@dataclass(frozen=True, init=False)
class RationalFunctionQ:
    """``numerator(z) / denominator(z)`` in lowest terms.

    Coefficients are ascending integer tuples with overall content 1 and a
    positive lowest nonzero denominator coefficient, so equal functions
    compare equal and ``1 - 2z`` prints the way it is usually written.
    """

    numerator: tuple[int, ...]
    denominator: tuple[int, ...]

    def __init__(self, numerator: Sequence, denominator: Sequence = (1,)):
        num, den = _normalize(numerator, denominator)
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator", den)

    @classmethod
    def one(cls) -> RationalFunctionQ:
        return cls((1,), (1,))

    @classmethod
    def constant(cls, c) -> RationalFunctionQ:
        c = Fraction(c)
        return cls((c.numerator,), (c.denominator,))

    def __mul__(self, other: RationalFunctionQ) -> RationalFunctionQ:
        return RationalFunctionQ(
            P.pmul(self.numerator, other.numerator),
            P.pmul(self.denominator, other.denominator),
        )

    def __truediv__(self, other: RationalFunctionQ) -> RationalFunctionQ:
        return RationalFunctionQ(
            P.pmul(self.numerator, other.denominator),
            P.pmul(self.denominator, other.numerator),
        )

    def inverse(self) -> RationalFunctionQ:
        return RationalFunctionQ(self.denominator, self.numerator)

    def __pow__(self, k: int) -> RationalFunctionQ:
        base = self if k >= 0 else self.inverse()
        return RationalFunctionQ(P.ppow(base.numerator, abs(k)), P.ppow(base.denominator, abs(k)))

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        d = P.peval(self.denominator, x)
        if d == 0:
            raise ZeroDivisionError(f"pole at z = {x}")
        return Fraction(P.peval(self.numerator, x)) / d

    def scale_argument(self, c) -> RationalFunctionQ:
        """``z -> c z``."""
        c = Fraction(c)
        return RationalFunctionQ(
            [a * c**i for i, a in enumerate(self.numerator)],
            [a * c**i for i, a in enumerate(self.denominator)],
        )

    def substitute_reciprocal(self, d) -> RationalFunctionQ:
        """``z -> 1/(d z)``, with both parts multiplied through by ``(d z)^D``."""
        d = Fraction(d)
        if d == 0:
            raise ZeroDivisionError("d must be nonzero")
        D = max(len(self.numerator), len(self.denominator)) - 1

        def flip(p):
            out = [Fraction(0)] * (D + 1)
            for i, a in enumerate(p):
                out[D - i] = a * d ** (D - i)
            return out

        return RationalFunctionQ(flip(self.numerator), flip(self.denominator))

    def constant_value(self) -> Fraction | None:
        """The value if the function is constant, else ``None``."""
        if len(self.numerator) <= 1 and len(self.denominator) == 1:
            n = self.numerator[0] if self.numerator else 0
            return Fraction(n, self.denominator[0])
        return None

    def series(self, N: int) -> TruncatedSeriesQ:
        return series_of_rational(self, N)

    def to_json(self) -> dict:
        return {
            "numerator": [str(c) for c in self.numerator],
            "denominator": [str(c) for c in self.denominator],
        }

    def __str__(self) -> str:
        return f"({_poly_str(self.numerator)}) / ({_poly_str(self.denominator)})"


def _poly_str(p: Sequence[int]) -> str:
    if not p:
        return "0"
    terms = []
    for i, c in enumerate(p):
        if not c:
            continue
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            zp = "z" if i == 1 else f"z^{i}"
            body = zp if mag == 1 else f"{mag}*{zp}"
        terms.append(("-" if c < 0 else "+", body))
    first_sign, first = terms[0]
    s = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        s += f" {sign} {body}"
    return s


def series_of_rational(f: RationalFunctionQ, N: int) -> TruncatedSeriesQ:
    """Taylor coefficients of ``f`` at 0 through ``z^N`` by long division."""
    den = f.denominator
    if den[0] == 0:
        raise ZeroDivisionError("rational function has a pole at the origin")
    num = f.numerator
    out: list[Fraction] = []
    d0 = Fraction(den[0])
    for n in range(N + 1):
        acc = Fraction(num[n]) if n < len(num) else Fraction(0)
        for k in range(1, min(n, len(den) - 1) + 1):
            acc -= den[k] * out[n - k]
        out.append(acc / d0)
    return TruncatedSeriesQ(out)


def one_minus(c, d: int = 1) -> list[int | Fraction]:
    """Polynomial ``1 - c z^d``."""
    return [1] + [0] * (d - 1) + [-Fraction(c)]
