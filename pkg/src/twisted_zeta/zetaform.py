"""Zeta functions from fixed-point sequences: series, closed forms, recurrence certificates."""

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from .exactmath.poly import rational_roots
from .exactmath.ratfunc import RationalFunctionQ, one_minus
from .exactmath.recurrence import LinearRecurrence, berlekamp_massey
from .exactmath.series import TruncatedSeriesQ, exp_zeta_series


class _Infinite:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITE"

    __str__ = __repr__

    def __reduce__(self):
        return (_Infinite, ())


INFINITE = _Infinite()


class ZetaUndefined(ArithmeticError):
    """Some iterate has infinitely many twisted classes (or fixed points)."""

    def __init__(self, n: int, what: str = "R(phi^n)"):
        self.n = n
        super().__init__(
            f"{what} is infinite at n={n}, so the zeta function exp(sum R(phi^n) z^n / n) is undefined"
        )


@dataclass(frozen=True)
class ReidemeisterSequence:
    values: tuple

    @property
    def finite(self) -> bool:
        return all(v is not INFINITE for v in self.values)

    @property
    def first_infinite(self) -> int | None:
        return next((n for n, v in enumerate(self.values, start=1) if v is INFINITE), None)

    def require_finite(self) -> list[int]:
        n = self.first_infinite
        if n is not None:
            raise ZetaUndefined(n)
        return [int(v) for v in self.values]

    def to_json(self) -> list[str]:
        return [str(v) for v in self.values]


@dataclass(frozen=True)
class ZetaForm:
    """A zeta function known to order ``series.order``, plus whatever closed data we have.

    ``closed_form`` is set when the zeta function is a rational function we
    have certified against the series; otherwise ``recurrence`` (if any) is
    a linear recurrence satisfied by the counting sequence.
    """

    sequence: tuple[int, ...]
    series: TruncatedSeriesQ
    closed_form: RationalFunctionQ | None = None
    recurrence: LinearRecurrence | None = None
    exponents: tuple[tuple[Fraction, int], ...] = field(default=())

    def to_json(self) -> dict:
        out = {
            "sequence": [str(v) for v in self.sequence],
            "series": self.series.to_json(),
            "closed_form": None if self.closed_form is None else self.closed_form.to_json(),
            "recurrence": None if self.recurrence is None else self.recurrence.to_json(),
        }
        if self.exponents:
            out["factors"] = [
                {"root": _fs(w), "multiplicity": str(c)} for w, c in self.exponents
            ]
        return out


def _fs(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _solve(M: list[list[Fraction]], y: list[Fraction]) -> list[Fraction] | None:
    n = len(M)
    aug = [row[:] + [v] for row, v in zip(M, y)]
    for c in range(n):
        p = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if p is None:
            return None
        aug[c], aug[p] = aug[p], aug[c]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c] / aug[c][c]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[c])]
    return [aug[i][n] / aug[i][i] for i in range(n)]


def power_sum_decomposition(
    rec: LinearRecurrence, terms: Sequence[int]
) -> list[tuple[Fraction, int]] | None:
    """Write ``a_n = sum c_i w_i^n`` with rational ``w_i`` and integer ``c_i``.

    Returns ``None`` unless the characteristic polynomial splits over Q into
    distinct nonzero roots and every ``c_i`` is an integer.
    """
    roots = rational_roots(rec.characteristic_polynomial())
    if sum(roots.values()) != rec.order or any(m > 1 for m in roots.values()):
        return None
    if Fraction(0) in roots:
        return None
    ws = sorted(roots)
    L = len(ws)
    if L == 0:
        return [] if all(t == 0 for t in terms) else None
    M = [[w**n for w in ws] for n in range(1, L + 1)]
    cs = _solve(M, [Fraction(t) for t in terms[:L]])
    if cs is None or any(c.denominator != 1 for c in cs):
        return None
    for n, t in enumerate(terms, start=1):
        if sum(c * w**n for c, w in zip(cs, ws)) != t:
            return None
    return [(w, int(c)) for w, c in zip(ws, cs) if c]


def closed_form_from_power_sums(parts: Sequence[tuple[Fraction, int]]) -> RationalFunctionQ:
    """``exp(sum_n (sum c_i w_i^n) z^n / n) = prod (1 - w_i z)^{-c_i}``."""
    f = RationalFunctionQ.one()
    for w, c in parts:
        f = f * RationalFunctionQ(one_minus(w), [1]) ** (-c)
    return f


def reconstruct_zeta(
    value: Callable[[int], int],
    order: int,
    *,
    start_window: int = 8,
    max_window: int = 256,
    extra: int = 10,
) -> ZetaForm:
    """Series of ``exp(sum a_n z^n/n)`` plus a closed form when one can be certified.

    The window grows until Berlekamp-Massey on ``2w`` terms gives a recurrence
    that also reproduces ``extra`` further terms; the closed form, when the
    roots are rational, is then checked against the exact series to twice
    the number of terms used for reconstruction (and at least ``order``).
    """
    cache: dict[int, int] = {}

    def a(n: int) -> int:
        if n not in cache:
            cache[n] = int(value(n))
        return cache[n]

    rec = None
    w = start_window
    while w <= max_window:
        terms = [a(n) for n in range(1, 2 * w + extra + 1)]
        cand = berlekamp_massey(terms[: 2 * w])
        if cand is not None and cand.reproduces(terms):
            rec = cand
            break
        w *= 2
    seq = [a(n) for n in range(1, order + 1)]
    series = exp_zeta_series(seq)
    if rec is None:
        return ZetaForm(tuple(seq), series)
    check_len = max(order, 2 * (2 * w + extra))
    check_terms = [a(n) for n in range(1, check_len + 1)]
    parts = power_sum_decomposition(rec, check_terms)
    if parts is None:
        return ZetaForm(tuple(seq), series, recurrence=rec)
    closed = closed_form_from_power_sums(parts)
    if closed.series(check_len) != exp_zeta_series(check_terms):
        raise ArithmeticError("closed form disagrees with the exact zeta series")
    return ZetaForm(tuple(seq), series, closed, rec, tuple(parts))
