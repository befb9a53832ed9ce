"""Gauss congruences and orbit counts for fixed-point-type integer sequences."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

from .exactmath.numtheory import divisors, mobius


@dataclass(frozen=True)
class CongruenceEntry:
    n: int
    mobius_sum: int
    residue: int
    orbit_count: int | None
    passed: bool


@dataclass(frozen=True)
class CongruenceReport:
    entries: tuple[CongruenceEntry, ...]

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    @property
    def first_failure(self) -> int | None:
        return next((e.n for e in self.entries if not e.passed), None)

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "entries": [
                {
                    "n": e.n,
                    "mobius_sum": str(e.mobius_sum),
                    "residue": str(e.residue),
                    "orbit_count": None if e.orbit_count is None else str(e.orbit_count),
                    "passed": e.passed,
                }
                for e in self.entries
            ],
        }


def mobius_sums(values: Sequence[int]) -> list[int]:
    """``P_n = sum_{d | n} mu(d) a_{n/d}`` for ``n = 1..len(values)``."""
    a = [int(v) for v in values]
    return [sum(mobius(d) * a[n // d - 1] for d in divisors(n)) for n in range(1, len(a) + 1)]


def gauss_check(values: Sequence[int]) -> CongruenceReport:
    """Test ``P_n = 0 (mod n)`` for every ``n``. Failures are reported, never raised."""
    if len(values) < 1:
        raise ValueError("need at least one term")
    entries = []
    for n, Pn in enumerate(mobius_sums(values), start=1):
        r = Pn % n
        entries.append(CongruenceEntry(n, Pn, r, Pn // n if r == 0 else None, r == 0))
    return CongruenceReport(tuple(entries))


@dataclass(frozen=True)
class OrbitCounts:
    counts: tuple[int, ...]

    @property
    def negative(self) -> tuple[int, ...]:
        """Indices n with a negative orbit count (the input is not realisable)."""
        return tuple(n for n, c in enumerate(self.counts, start=1) if c < 0)


def orbit_counts(values: Sequence[int]) -> OrbitCounts:
    """Number of orbits of each exact length, ``P_n / n``."""
    report = gauss_check(values)
    if not report.passed:
        raise ValueError(
            f"Gauss congruence fails at n={report.first_failure}; orbit counts are undefined"
        )
    return OrbitCounts(tuple(e.orbit_count for e in report.entries))


def realizable(values: Sequence[int]) -> bool:
    """Gauss congruences hold and no orbit count is negative."""
    report = gauss_check(values)
    return report.passed and all(e.orbit_count >= 0 for e in report.entries)
