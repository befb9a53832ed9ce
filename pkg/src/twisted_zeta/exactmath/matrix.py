"""Exact integer matrix algebra.

Matrices are plain lists of row lists holding Python ints. Nothing here uses
floating point. Smith forms without transforms of full-row-rank matrices run
modulo a maximal minor to keep entries small; everything else relies on
Python's arbitrary-precision ints (and the optional bit cap in
:mod:`twisted_zeta._limits`).
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .._limits import check_bits

IntMatrix = list[list[int]]


def as_int_matrix(M: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
    """Copy ``M`` into a fresh rectangular list-of-lists of ints."""
    rows = [[int(x) for x in row] for row in M]
    width = len(rows[0]) if rows else (cols or 0)
    if cols is not None and rows and width != cols:
        raise ValueError(f"expected {cols} columns, got {width}")
    for row in rows:
        if len(row) != width:
            raise ValueError("matrix is not rectangular")
    return rows


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int) -> IntMatrix:
    return [[0] * cols for _ in range(rows)]


def transpose(M: IntMatrix) -> IntMatrix:
    return [list(col) for col in zip(*M)] if M else []


def mat_mul(A: IntMatrix, B: IntMatrix) -> IntMatrix:
    if not A or not B:
        return [[] for _ in A]
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def mat_sub(A: IntMatrix, B: IntMatrix) -> IntMatrix:
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_pow(A: IntMatrix, n: int) -> IntMatrix:
    if n < 0:
        raise ValueError("negative matrix power")
    result = identity(len(A))
    base = A
    while n:
        if n & 1:
            result = mat_mul(result, base)
        n >>= 1
        if n:
            base = mat_mul(base, base)
    return result


def trace(A: IntMatrix) -> int:
    return sum(A[i][i] for i in range(len(A)))


def det(A: IntMatrix) -> int:
    """Fraction-free (Bareiss) determinant."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(row) for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def charpoly(A: IntMatrix) -> list[int]:
    """Ascending coefficients of ``det(x I - A)`` (Faddeev-LeVerrier)."""
    n = len(A)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    Mk = zeros(n, n)
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        Mk = mat_mul(A, Mk)
        for i in range(n):
            Mk[i][i] += coeffs[n - k + 1]
        t = trace(mat_mul(A, Mk))
        if t % k:
            raise ArithmeticError("non-integral Faddeev-LeVerrier step")
        coeffs[n - k] = -t // k
    return coeffs


def det_one_minus_zA(A: IntMatrix) -> list[int]:
    """Ascending coefficients of the polynomial ``det(I - z A)``."""
    return list(reversed(charpoly(A)))


def exterior_power(M: IntMatrix, k: int) -> IntMatrix:
    """k-th exterior power: k x k minors on lexicographically ordered subsets."""
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("exterior_power needs a square matrix")
    if not 0 <= k <= n:
        raise ValueError(f"k={k} outside 0..{n}")
    subsets = list(combinations(range(n), k))
    return [
        [det([[M[i][j] for j in cols] for i in rows]) for cols in subsets]
        for rows in subsets
    ]


@dataclass(frozen=True)
class SmithForm:
    """Result of :func:`smith_normal_form`: ``U @ M @ V == diag(invariants)``."""

    invariants: tuple[int, ...]
    rank: int
    U: IntMatrix | None = None
    V: IntMatrix | None = None


def _swap_rows(A, i, j):
    A[i], A[j] = A[j], A[i]


def _swap_cols(A, i, j):
    for row in A:
        row[i], row[j] = row[j], row[i]


def _add_row(A, dst, src, q):
    """row[dst] += q * row[src]"""
    rs, rd = A[src], A[dst]
    for c in range(len(rd)):
        rd[c] += q * rs[c]


def _add_col(A, dst, src, q):
    for row in A:
        row[dst] += q * row[src]


def smith_normal_form(M: Sequence[Sequence[int]], transforms: bool = False) -> SmithForm:
    """Smith normal form over Z.

    Returns the ``min(rows, cols)`` diagonal entries ``d_1 | d_2 | ...`` (zeros
    last) and the rank. With ``transforms=True`` also returns unimodular
    ``U`` (rows x rows) and ``V`` (cols x cols) with ``U M V = D``.
    """
    A = [list(map(int, row)) for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    if not transforms and m and n >= m:
        R = _full_rank_minor(A)
        if R:
            return _smith_mod(A, R)
    U = identity(m) if transforms else None
    V = identity(n) if transforms else None

    def row_swap(i, j):
        _swap_rows(A, i, j)
        if U is not None:
            _swap_rows(U, i, j)

    def col_swap(i, j):
        _swap_cols(A, i, j)
        if V is not None:
            _swap_cols(V, i, j)

    def row_add(dst, src, q):
        _add_row(A, dst, src, q)
        if U is not None:
            _add_row(U, dst, src, q)

    def col_add(dst, src, q):
        _add_col(A, dst, src, q)
        if V is not None:
            _add_col(V, dst, src, q)

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        row_swap(t, best[0])
        col_swap(t, best[1])
        while True:
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    row_add(i, t, -(A[i][t] // A[t][t]))
                    if A[i][t]:
                        row_swap(t, i)
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    col_add(j, t, -(A[t][j] // A[t][t]))
                    if A[t][j]:
                        col_swap(t, j)
                        dirty = True
            if dirty:
                continue
            piv = A[t][t]
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % piv),
                None,
            )
            if bad is None:
                break
            row_add(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            if U is not None:
                U[t] = [-x for x in U[t]]
        check_bits((A[t][t],), "smith_normal_form")
        t += 1

    diag = tuple(A[i][i] for i in range(min(m, n)))
    rank = sum(1 for d in diag if d)
    return SmithForm(diag, rank, U, V)


def _full_rank_minor(A: IntMatrix) -> int:
    """``|det|`` of some nonsingular maximal square column-submatrix, or 0 if rows are dependent."""
    m, n = len(A), len(A[0])
    work = [[Fraction(x) for x in row] for row in A]
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if work[i][c]), None)
        if p is None:
            continue
        work[r], work[p] = work[p], work[r]
        for i in range(r + 1, m):
            if work[i][c]:
                f = work[i][c] / work[r][c]
                work[i] = [a - f * b for a, b in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    if r < m:
        return 0
    return abs(det([[row[c] for c in pivots] for row in A]))


def _smith_mod(A: IntMatrix, R: int) -> SmithForm:
    """Invariants of a full-row-rank matrix whose column lattice contains ``R Z^m``.

    Every entry may then be reduced modulo ``R`` (adding multiples of ``R e_i``
    does not change the lattice), which keeps the Euclidean steps small. A
    cleared pivot ``d`` contributes ``gcd(d, R)``; a block that vanishes
    modulo ``R`` contributes ``R`` per remaining row.
    """
    m, n = len(A), len(A[0])
    A = [[x % R for x in row] for row in A]
    diag: list[int] = []
    t = 0
    while t < m:
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or A[i][j] < A[best[0]][best[1]]):
                    best = (i, j)
        if best is None:
            diag.extend([R] * (m - t))
            break
        A[t], A[best[0]] = A[best[0]], A[t]
        for row in A:
            row[t], row[best[1]] = row[best[1]], row[t]
        while True:
            dirty = False
            piv = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // piv
                    A[i] = [(a - q * b) % R for a, b in zip(A[i], A[t])]
                    if A[i][t]:
                        A[t], A[i] = A[i], A[t]
                        piv = A[t][t]
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // piv
                    for row in A:
                        row[j] = (row[j] - q * row[t]) % R
                    if A[t][j]:
                        for row in A:
                            row[t], row[j] = row[j], row[t]
                        piv = A[t][t]
                        dirty = True
            if not dirty:
                break
        diag.append(math.gcd(A[t][t], R))
        t += 1
    # restore the divisibility chain
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            g = math.gcd(diag[i], diag[j])
            diag[i], diag[j] = g, diag[i] * diag[j] // g
    check_bits(diag, "smith_normal_form")
    return SmithForm(tuple(diag), m)


def inverse_unimodular(U: IntMatrix) -> IntMatrix:
    """Exact inverse of a unimodular integer matrix (Gauss-Jordan over Q)."""
    n = len(U)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(U)]
    for c in range(n):
        p = next(r for r in range(c, n) if aug[r][c] != 0)
        aug[c], aug[p] = aug[p], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    out = [[x for x in row[n:]] for row in aug]
    if any(x.denominator != 1 for row in out for x in row):
        raise ArithmeticError("matrix is not unimodular")
    return [[int(x) for x in row] for row in out]


def column_lattice_basis(W: IntMatrix, dim: int) -> IntMatrix:
    """Basis (as columns of a ``dim x t`` matrix) of the Z-span of W's columns."""
    if not W or not W[0]:
        return [[] for _ in range(dim)]
    snf = smith_normal_form(W, transforms=True)
    Uinv = inverse_unimodular(snf.U)
    cols = [
        [Uinv[i][k] * d for i in range(dim)]
        for k, d in enumerate(snf.invariants)
        if d
    ]
    return transpose(cols) if cols else [[] for _ in range(dim)]


def integer_kernel(M: IntMatrix, ncols: int) -> IntMatrix:
    """Basis columns (``ncols x k`` matrix) of ``{x in Z^ncols : M x = 0}``."""
    if not M:
        return identity(ncols)
    snf = smith_normal_form(M, transforms=True)
    V = snf.V
    cols = [[V[i][k] for i in range(ncols)] for k in range(snf.rank, ncols)]
    return transpose(cols) if cols else [[] for _ in range(ncols)]


def solve_integer(B: IntMatrix, Y: IntMatrix) -> IntMatrix | None:
    """Integer ``X`` with ``B X = Y``, or ``None`` if there is none.

    ``B`` must have full column rank (it is a lattice basis).
    """
    k = len(B)
    t = len(B[0]) if B and B[0] else 0
    ycols = len(Y[0]) if Y and Y[0] else 0
    if t == 0:
        return [] if all(v == 0 for row in Y for v in row) else None
    snf = smith_normal_form(B, transforms=True)
    if snf.rank != t:
        raise ValueError("basis matrix must have full column rank")
    UY = mat_mul(snf.U, Y) if ycols else [[] for _ in range(k)]
    Z = zeros(t, ycols)
    for i in range(k):
        for c in range(ycols):
            v = UY[i][c]
            if i < t:
                d = snf.invariants[i]
                if v % d:
                    return None
                Z[i][c] = v // d
            elif v:
                return None
    return mat_mul(snf.V, Z)
