"""Brute-force oracles on finite groups.

Twisted conjugacy classes are counted straight from a Cayley table; fixed
characters of an endomorphism of a finite abelian group are counted from the
dual action. For abelian groups the two counts agree (the twisted
Burnside-Frobenius coincidence), and :func:`tbft_check` tabulates that.
"""

from __future__ import annotations

import itertools
from collections.abc import Sequence
from dataclasses import dataclass, field
from math import gcd, prod

import numpy as np

from . import _kernels
from .exactmath.matrix import column_lattice_basis, det, integer_kernel, mat_pow


class MalformedGroupError(ValueError):
    """A Cayley or endomorphism table violates the group axioms."""


@dataclass(frozen=True, eq=False)
class FiniteGroupEndo:
    """A finite group as a Cayley table plus an endomorphism table."""

    table: np.ndarray
    identity: int
    endomorphism: np.ndarray
    inverse: np.ndarray = field(repr=False)

    @property
    def order(self) -> int:
        return int(self.table.shape[0])

    @classmethod
    def from_tables(
        cls,
        table: Sequence[Sequence[int]],
        endomorphism: Sequence[int],
        identity: int | None = None,
    ) -> FiniteGroupEndo:
        mul = np.asarray(table, dtype=np.int64)
        e = np.asarray(endomorphism, dtype=np.int64)
        n = mul.shape[0] if mul.ndim == 2 else 0
        if mul.ndim != 2 or mul.shape != (n, n) or n == 0:
            raise MalformedGroupError("Cayley table must be a non-empty square array")
        if mul.min() < 0 or mul.max() >= n:
            raise MalformedGroupError("Cayley table entries out of range")
        if e.shape != (n,) or e.min() < 0 or e.max() >= n:
            raise MalformedGroupError("endomorphism table must map 0..n-1 into 0..n-1")
        ident = _find_identity(mul) if identity is None else int(identity)
        if not (0 <= ident < n) or not (
            np.array_equal(mul[ident], np.arange(n)) and np.array_equal(mul[:, ident], np.arange(n))
        ):
            raise MalformedGroupError(f"{ident} is not a two-sided identity")
        # (ab)c == a(bc) for all triples, a few rows of a at a time
        step = max(1, (1 << 22) // (n * n))
        for start in range(0, n, step):
            rows = mul[start : start + step]
            if not np.array_equal(mul[rows], rows[:, mul]):
                raise MalformedGroupError("Cayley table is not associative")
        where = np.argwhere(mul == ident)
        inv = np.full(n, -1, dtype=np.int64)
        for a, b in where:
            if mul[b, a] == ident:
                inv[a] = b
        if (inv < 0).any():
            raise MalformedGroupError("some element has no two-sided inverse")
        if not np.array_equal(e[mul], mul[e[:, None], e[None, :]]):
            raise MalformedGroupError("endomorphism table is not multiplicative")
        return cls(mul, ident, e, inv)

    def power(self, n: int) -> FiniteGroupEndo:
        """Same group with the endomorphism replaced by its n-th iterate."""
        return FiniteGroupEndo(self.table, self.identity, _kernels.compose_power(self.endomorphism, n), self.inverse)


def _find_identity(mul: np.ndarray) -> int:
    n = mul.shape[0]
    for i in range(n):
        if np.array_equal(mul[i], np.arange(n)):
            return i
    raise MalformedGroupError("no left identity in Cayley table")


def twisted_classes(g: FiniteGroupEndo, n: int = 1) -> int:
    """Reidemeister number ``R(phi^n)``: orbits of ``x -> h x phi^n(h)^-1``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    phi_n = _kernels.compose_power(g.endomorphism, n)
    return _kernels.twisted_class_count(g.table, g.inverse, phi_n)


def conjugacy_class_count(g: FiniteGroupEndo) -> int:
    """Ordinary class number by direct enumeration of ``h x h^-1``."""
    n = g.order
    seen: set[frozenset] = set()
    for x in range(n):
        seen.add(frozenset(int(g.table[g.table[h, x], g.inverse[h]]) for h in range(n)))
    return len(seen)


# ----------------------------------------------------------------- abelian


@dataclass(frozen=True)
class AbelianCharEndo:
    """Endomorphism of ``Z/n_1 + ... + Z/n_s`` acting on column vectors by ``C``."""

    invariants: tuple[int, ...]
    C: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        inv = tuple(int(n) for n in self.invariants)
        s = len(inv)
        if any(n < 1 for n in inv):
            raise ValueError("cyclic factor orders must be >= 1")
        C = tuple(tuple(int(x) for x in row) for row in self.C)
        if len(C) != s or any(len(row) != s for row in C):
            raise ValueError(f"C must be {s}x{s}")
        for i in range(s):
            for j in range(s):
                if (inv[j] * C[i][j]) % inv[i]:
                    raise ValueError(
                        f"C[{i}][{j}]={C[i][j]} does not define a homomorphism "
                        f"Z/{inv[j]} -> Z/{inv[i]}"
                    )
        C = tuple(tuple(C[i][j] % inv[i] for j in range(s)) for i in range(s))
        object.__setattr__(self, "invariants", inv)
        object.__setattr__(self, "C", C)

    @property
    def order(self) -> int:
        return prod(self.invariants)

    def power_matrix(self, n: int) -> list[list[int]]:
        Cn = mat_pow([list(r) for r in self.C], n)
        return [[x % m for x in row] for row, m in zip(Cn, self.invariants)]

    def elements(self) -> list[tuple[int, ...]]:
        return list(itertools.product(*(range(m) for m in self.invariants)))

    def apply(self, M: list[list[int]], x: Sequence[int]) -> tuple[int, ...]:
        return tuple(
            sum(M[i][j] * x[j] for j in range(len(x))) % m for i, m in enumerate(self.invariants)
        )

    def to_group(self) -> FiniteGroupEndo:
        """Cayley table of the group (elements in mixed-radix order) and the map."""
        elems = self.elements()
        index = {x: k for k, x in enumerate(elems)}
        inv = self.invariants
        table = [
            [index[tuple((a + b) % m for a, b, m in zip(x, y, inv))] for y in elems]
            for x in elems
        ]
        M = [list(r) for r in self.C]
        endo = [index[self.apply(M, x)] for x in elems]
        return FiniteGroupEndo.from_tables(table, endo, identity=0)


def dual_matrix(a: AbelianCharEndo, n: int = 1) -> list[list[int]]:
    """Action of ``phi^n`` on characters.

    Character ``chi`` is the vector with ``chi(x) = sum chi_i x_i / n_i``; then
    ``chi o phi^n`` has coordinates ``D chi`` with ``D[j][i] = C[i][j] n_j / n_i``.
    """
    Cn = a.power_matrix(n)
    inv = a.invariants
    s = len(inv)
    return [[Cn[i][j] * inv[j] // inv[i] for i in range(s)] for j in range(s)]


def fixed_characters(a: AbelianCharEndo, n: int = 1) -> int:
    """``RT(phi^n)``: characters ``chi`` with ``chi o phi^n = chi``.

    Solves ``(D - I) chi = diag(n_j) k`` over Z; the solution lattice projected
    to ``chi`` has index ``|det|`` in Z^s, and dividing ``prod n_i`` by that
    index counts solutions modulo the invariants.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    inv = a.invariants
    s = len(inv)
    if s == 0:
        return 1
    D = dual_matrix(a, n)
    system = [
        [D[j][i] - int(i == j) for i in range(s)] + [-inv[j] * int(k == j) for k in range(s)]
        for j in range(s)
    ]
    K = integer_kernel(system, 2 * s)
    chi_rows = K[:s]
    # Rank of the projection is s because diag(n) * Z^s lies inside it.
    basis = column_lattice_basis(chi_rows, s)
    index = abs(det(basis))
    total = prod(inv)
    if total % index:
        raise ArithmeticError("solution lattice index does not divide the group order")
    return total // index


def fixed_characters_bruteforce(a: AbelianCharEndo, n: int = 1) -> int:
    """Enumerate every character; only for small groups."""
    D = dual_matrix(a, n)
    inv = a.invariants
    count = 0
    for chi in a.elements():
        image = tuple(sum(D[j][i] * chi[i] for i in range(len(chi))) % inv[j] for j in range(len(chi)))
        count += image == chi
    return count


@dataclass(frozen=True)
class TBFTRow:
    n: int
    reidemeister: int
    fixed_characters: int

    @property
    def equal(self) -> bool:
        return self.reidemeister == self.fixed_characters


def tbft_check(a: AbelianCharEndo, N: int) -> list[TBFTRow]:
    """``(R(phi^n), RT(phi^n))`` for ``n = 1..N`` from the two independent counters."""
    if N < 1:
        raise ValueError("N must be >= 1")
    g = a.to_group()
    return [TBFTRow(n, twisted_classes(g, n), fixed_characters(a, n)) for n in range(1, N + 1)]


def abelian_endomorphisms(invariants: Sequence[int]):
    """Every endomorphism of ``Z/n_1 + ... + Z/n_s`` as an AbelianCharEndo."""
    inv = tuple(invariants)
    s = len(inv)
    choices = []
    for i in range(s):
        for j in range(s):
            step = inv[i] // gcd(inv[i], inv[j])
            choices.append(range(0, inv[i], step))
    for flat in itertools.product(*choices):
        C = tuple(tuple(flat[i * s : (i + 1) * s]) for i in range(s))
        yield AbelianCharEndo(inv, C)


def is_automorphism(a: AbelianCharEndo) -> bool:
    M = [list(r) for r in a.C]
    return len({a.apply(M, x) for x in a.elements()}) == a.order


def automorphism_order(a: AbelianCharEndo) -> int:
    """Least ``m >= 1`` with ``phi^m = id``."""
    if not is_automorphism(a):
        raise ValueError("not an automorphism")
    s = len(a.invariants)
    ident = [[int(i == j) % m for j in range(s)] for i, m in enumerate(a.invariants)]
    m = 1
    while a.power_matrix(m) != ident:
        m += 1
    return m


__all__ = [
    "AbelianCharEndo",
    "FiniteGroupEndo",
    "MalformedGroupError",
    "TBFTRow",
    "abelian_endomorphisms",
    "automorphism_order",
    "conjugacy_class_count",
    "dual_matrix",
    "fixed_characters",
    "fixed_characters_bruteforce",
    "is_automorphism",
    "tbft_check",
    "twisted_classes",
]
