"""Linear recurrence reconstruction (Berlekamp-Massey over Q)."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class LinearRecurrence:
    """``a_n = q_1 a_{n-1} + ... + q_L a_{n-L}`` for ``n > L``, seeded by ``a_1..a_L``.

    ``q_L`` is zero only when the input has a transient prefix that the
    minimal recurrence skips over.
    """

    coefficients: tuple[Fraction, ...]
    seed: tuple[Fraction, ...]

    @property
    def order(self) -> int:
        return len(self.coefficients)

    def terms(self, count: int) -> list[Fraction]:
        out = list(self.seed[:count])
        q = self.coefficients
        while len(out) < count:
            out.append(sum((q[i] * out[-1 - i] for i in range(self.order)), Fraction(0)))
        return out

    def reproduces(self, seq: Sequence) -> bool:
        return self.terms(len(seq)) == [Fraction(x) for x in seq]

    def characteristic_polynomial(self) -> list[Fraction]:
        """Ascending coefficients of ``x^L - q_1 x^{L-1} - ... - q_L``."""
        return [-c for c in reversed(self.coefficients)] + [Fraction(1)]

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "coefficients": [_fs(c) for c in self.coefficients],
            "seed": [_fs(c) for c in self.seed],
        }


def _fs(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def berlekamp_massey(sequence: Sequence) -> LinearRecurrence | None:
    """Minimal linear recurrence for ``sequence``, or ``None``.

    ``None`` means no recurrence of order at most ``len(sequence) // 2``
    exists, i.e. the data are too short to certify one.
    """
    s = [Fraction(x) for x in sequence]
    if len(s) < 2:
        raise ValueError("need at least 2 terms")
    C = [Fraction(1)]
    B = [Fraction(1)]
    L, m, b = 0, 1, Fraction(1)
    for i, si in enumerate(s):
        d = si + sum((C[j] * s[i - j] for j in range(1, min(L, len(C) - 1) + 1)), Fraction(0))
        if d == 0:
            m += 1
            continue
        coef = d / b
        T = list(C)
        need = len(B) + m
        if len(C) < need:
            C += [Fraction(0)] * (need - len(C))
        for j, bj in enumerate(B):
            C[j + m] -= coef * bj
        if 2 * L <= i:
            L = i + 1 - L
            B, b, m = T, d, 1
        else:
            m += 1
    if L > len(s) // 2:
        return None
    C += [Fraction(0)] * (L + 1 - len(C))
    q = tuple(-C[j] for j in range(1, L + 1))
    return LinearRecurrence(q, tuple(s[:L]))
