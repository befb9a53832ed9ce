"""Optional cap on intermediate integer size.

Set ``TWISTED_ZETA_MAX_BITS`` to a positive integer to make long-running
computations abort with :class:`BitLimitExceeded` instead of growing without
bound. Unset (or empty) means unlimited.
"""

from __future__ import annotations

import os
from fractions import Fraction

ENV_VAR = "TWISTED_ZETA_MAX_BITS"


class BitLimitExceeded(ArithmeticError):
    """An intermediate integer exceeded the configured bit budget."""


def max_bits() -> int | None:
    raw = os.environ.get(ENV_VAR, "").strip()
    if not raw:
        return None
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{ENV_VAR} must be an integer, got {raw!r}") from None
    return value if value > 0 else None


def check_bits(values, where: str = "") -> None:
    """Raise if any int/Fraction in ``values`` is wider than the cap."""
    cap = max_bits()
    if cap is None:
        return
    for v in values:
        if isinstance(v, Fraction):
            width = max(v.numerator.bit_length(), v.denominator.bit_length())
        else:
            width = int(v).bit_length()
        if width > cap:
            suffix = f" in {where}" if where else ""
            raise BitLimitExceeded(
                f"intermediate value of {width} bits exceeds {ENV_VAR}={cap}{suffix}"
            )
