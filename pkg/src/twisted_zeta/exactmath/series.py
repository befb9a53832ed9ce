"""Truncated formal power series with exact rational coefficients."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction

from .._limits import check_bits


@dataclass(frozen=True)
class TruncatedSeriesQ:
    """``c_0 + c_1 z + ... + c_N z^N + O(z^{N+1})``."""

    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coefficients:
            raise ValueError("a truncated series needs at least c_0")
        object.__setattr__(
            self, "coefficients", tuple(Fraction(c) for c in self.coefficients)
        )

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, k: int) -> Fraction:
        return self.coefficients[k]

    def __len__(self) -> int:
        return len(self.coefficients)

    def truncate(self, N: int) -> TruncatedSeriesQ:
        if N > self.order:
            raise ValueError(f"cannot extend order {self.order} to {N}")
        return TruncatedSeriesQ(self.coefficients[: N + 1])

    def __mul__(self, other: TruncatedSeriesQ) -> TruncatedSeriesQ:
        N = min(self.order, other.order)
        return TruncatedSeriesQ(_mul(self.coefficients, other.coefficients, N))

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coefficients)

    def to_json(self) -> list[str]:
        return [_frac_str(c) for c in self.coefficients]


def _frac_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _mul(a: Sequence, b: Sequence, N: int) -> list[Fraction]:
    out = [Fraction(0)] * (N + 1)
    for i in range(min(N, len(a) - 1) + 1):
        ai = a[i]
        if ai:
            for j in range(min(N - i, len(b) - 1) + 1):
                out[i + j] += ai * b[j]
    return out


def exp_zeta_series(values: Sequence) -> TruncatedSeriesQ:
    """Coefficients of ``exp(sum_n a_n z^n / n)`` through ``z^N`` with ``N = len(values)``.

    Uses ``n c_n = sum_{k=1}^n a_k c_{n-k}``, which is exact over Q.
    """
    a = [Fraction(v) for v in values]
    N = len(a)
    if N < 1:
        raise ValueError("need at least one term")
    c = [Fraction(1)]
    for n in range(1, N + 1):
        c.append(sum((a[k - 1] * c[n - k] for k in range(1, n + 1)), Fraction(0)) / n)
    check_bits((c[-1],), "exp_zeta_series")
    return TruncatedSeriesQ(c)


def log_coefficients(s: TruncatedSeriesQ) -> list[Fraction]:
    """Recover ``a_1..a_N`` with ``s = exp(sum a_n z^n / n)``; needs ``c_0 = 1``."""
    c = s.coefficients
    if c[0] != 1:
        raise ValueError("formal log needs constant term 1")
    a: list[Fraction] = []
    for n in range(1, len(c)):
        # n c_n = sum_{k=1}^{n} a_k c_{n-k}
        acc = n * c[n] - sum((a[k - 1] * c[n - k] for k in range(1, n)), Fraction(0))
        a.append(acc)
    return a


def series_exp(log_terms: Sequence, N: int) -> TruncatedSeriesQ:
    """``exp(g)`` for ``g = sum_{n>=1} g_n z^n`` given as ``log_terms[n-1] = g_n``."""
    a = [Fraction(n + 1) * Fraction(g) for n, g in enumerate(log_terms[:N])]
    a += [Fraction(0)] * (N - len(a))
    return exp_zeta_series(a)


def series_inverse(s: TruncatedSeriesQ) -> TruncatedSeriesQ:
    c = s.coefficients
    if c[0] == 0:
        raise ZeroDivisionError("series with zero constant term is not invertible")
    inv = [1 / c[0]]
    for n in range(1, len(c)):
        inv.append(-sum((c[k] * inv[n - k] for k in range(1, n + 1)), Fraction(0)) / c[0])
    return TruncatedSeriesQ(inv)


def series_power(s: TruncatedSeriesQ, e) -> TruncatedSeriesQ:
    """``s ** e`` for rational ``e`` and ``c_0 = 1`` (J.C.P. Miller recurrence)."""
    e = Fraction(e)
    c = s.coefficients
    if c[0] != 1:
        raise ValueError("rational powers need constant term 1")
    out = [Fraction(1)]
    for n in range(1, len(c)):
        acc = sum(((e * k - (n - k)) * c[k] * out[n - k] for k in range(1, n + 1)), Fraction(0))
        out.append(acc / n)
    return TruncatedSeriesQ(out)


def binomial_series(c, d: int, e, N: int) -> TruncatedSeriesQ:
    """``(1 - c z^d)^e`` through ``z^N`` via generalised binomial coefficients."""
    c, e = Fraction(c), Fraction(e)
    if d < 1:
        raise ValueError("d must be >= 1")
    out = [Fraction(0)] * (N + 1)
    coeff = Fraction(1)
    k = 0
    while k * d <= N:
        out[k * d] = coeff * (-c) ** k
        coeff = coeff * (e - k) / (k + 1)
        k += 1
    return TruncatedSeriesQ(out)


def product(series: Iterable[TruncatedSeriesQ], N: int) -> TruncatedSeriesQ:
    acc = [Fraction(1)] + [Fraction(0)] * N
    for s in series:
        acc = _mul(acc, s.coefficients, N)
    return TruncatedSeriesQ(acc)
