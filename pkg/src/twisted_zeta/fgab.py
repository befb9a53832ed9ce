"""Reidemeister numbers and zeta functions of endomorphisms of f.g. abelian groups.

A group ``Z^r + Z/n_1 + ... + Z/n_s`` is handled through its lift to
``Z^(r+s)`` together with the relation lattice spanned by ``n_i e_(r+i)``.
An endomorphism acts on column vectors by the block matrix::

    [[A, 0],
     [B, C]]

``A`` is the action on the free quotient, ``B`` sends free generators into
the torsion part and ``C`` is the action on the torsion subgroup.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .exactmath import poly as P
from .exactmath.matrix import (
    IntMatrix,
    as_int_matrix,
    charpoly,
    column_lattice_basis,
    det_one_minus_zA,
    exterior_power,
    identity,
    integer_kernel,
    inverse_unimodular,
    mat_mul,
    mat_pow,
    smith_normal_form,
    solve_integer,
    trace,
)
from .exactmath.ratfunc import RationalFunctionQ
from .exactmath.series import exp_zeta_series
from .zetaform import (
    INFINITE,
    ReidemeisterSequence,
    ZetaForm,
    ZetaUndefined,
    reconstruct_zeta,
)


@dataclass(frozen=True)
class FgAbGroup:
    rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        tors = tuple(int(n) for n in self.torsion)
        if self.rank < 0:
            raise ValueError("rank must be >= 0")
        if any(n < 2 for n in tors):
            raise ValueError("torsion invariants must be >= 2")
        if any(b % a for a, b in itertools.pairwise(tors)):
            raise ValueError(f"torsion invariants {tors} do not form a divisibility chain")
        object.__setattr__(self, "torsion", tors)

    @property
    def ngens(self) -> int:
        return self.rank + len(self.torsion)


@dataclass(frozen=True)
class FgAbEndo:
    group: FgAbGroup
    A: tuple[tuple[int, ...], ...]
    B: tuple[tuple[int, ...], ...] = ()
    C: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        r, tors = self.group.rank, self.group.torsion
        s = len(tors)
        A = as_int_matrix(self.A) if r else []
        if len(A) != r or any(len(row) != r for row in A):
            raise ValueError(f"A must be {r}x{r}")
        B = as_int_matrix(self.B) if s and r else [[0] * r for _ in range(s)]
        if len(B) != s or any(len(row) != r for row in B):
            raise ValueError(f"B must be {s}x{r}")
        C = as_int_matrix(self.C) if s else []
        if len(C) != s or any(len(row) != s for row in C):
            raise ValueError(f"C must be {s}x{s}")
        for i in range(s):
            for j in range(s):
                if (tors[j] * C[i][j]) % tors[i]:
                    raise ValueError(
                        f"C[{i}][{j}]={C[i][j]} is not a homomorphism Z/{tors[j]} -> Z/{tors[i]}"
                    )
        object.__setattr__(self, "A", tuple(tuple(row) for row in A))
        object.__setattr__(self, "B", tuple(tuple(x % tors[i] for x in row) for i, row in enumerate(B)))
        object.__setattr__(self, "C", tuple(tuple(x % tors[i] for x in row) for i, row in enumerate(C)))

    @classmethod
    def free(cls, A: Sequence[Sequence[int]]) -> FgAbEndo:
        return cls(FgAbGroup(len(A)), tuple(map(tuple, A)))

    @classmethod
    def finite(cls, torsion: Sequence[int], C: Sequence[Sequence[int]]) -> FgAbEndo:
        return cls(FgAbGroup(0, tuple(torsion)), (), (), tuple(map(tuple, C)))

    @property
    def is_torsion_free(self) -> bool:
        return not self.group.torsion

    def lifted(self) -> IntMatrix:
        """Block matrix on ``Z^(r+s)``."""
        r, s = self.group.rank, len(self.group.torsion)
        M = [[0] * (r + s) for _ in range(r + s)]
        for i in range(r):
            M[i][:r] = self.A[i]
        for i in range(s):
            M[r + i][:r] = self.B[i]
            M[r + i][r:] = self.C[i]
        return M

    def relations(self) -> IntMatrix:
        """``(r+s) x s`` matrix whose columns span the relation lattice."""
        r, tors = self.group.rank, self.group.torsion
        k = r + len(tors)
        return [[tors[j] if i == r + j else 0 for j in range(len(tors))] for i in range(k)]

    def _reduce(self, M: IntMatrix) -> IntMatrix:
        r = self.group.rank
        return [row if i < r else [x % self.group.torsion[i - r] for x in row] for i, row in enumerate(M)]

    def lifted_power(self, n: int) -> IntMatrix:
        k = self.group.ngens
        result = identity(k)
        base = self.lifted()
        while n:
            if n & 1:
                result = self._reduce(mat_mul(result, base))
            n >>= 1
            if n:
                base = self._reduce(mat_mul(base, base))
        return result

    def power(self, n: int) -> FgAbEndo:
        return _from_lifted(self.lifted_power(n), self.group)


def _from_lifted(M: IntMatrix, group: FgAbGroup) -> FgAbEndo:
    r = group.rank
    A = tuple(tuple(row[:r]) for row in M[:r])
    B = tuple(tuple(row[:r]) for row in M[r:])
    C = tuple(tuple(row[r:]) for row in M[r:])
    return FgAbEndo(group, A, B, C)


# ------------------------------------------------------------ Reidemeister


def reidemeister_number(e: FgAbEndo, n: int = 1):
    """``R(phi^n) = |coker(phi^n - id)|``, or ``INFINITE``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    k = e.group.ngens
    if k == 0:
        return 1
    M = e.lifted_power(n)
    for i in range(k):
        M[i][i] -= 1
    rel = e.relations()
    W = [M[i] + rel[i] for i in range(k)]
    snf = smith_normal_form(W)
    if snf.rank < k:
        return INFINITE
    return math.prod(snf.invariants[:k])


def reidemeister_sequence(e: FgAbEndo, N: int) -> ReidemeisterSequence:
    return ReidemeisterSequence(tuple(reidemeister_number(e, n) for n in range(1, N + 1)))


# --------------------------------------------------------- Lefschetz side


def lefschetz_zeta(A: Sequence[Sequence[int]]) -> RationalFunctionQ:
    """``prod_k det(I - Lambda^k(A) z)^((-1)^(k+1))`` for the torus action ``A``."""
    A = as_int_matrix(A) if A else []
    num: list = [1]
    den: list = [1]
    for k in range(len(A) + 1):
        f = det_one_minus_zA(exterior_power(A, k)) if A else [1, -1]
        if k % 2:
            num = P.pmul(num, f)
        else:
            den = P.pmul(den, f)
    return RationalFunctionQ(num, den)


def lefschetz_number(A: Sequence[Sequence[int]], n: int) -> int:
    """``L(phi^n) = sum_k (-1)^k tr(Lambda^k(A)^n) = det(I - A^n)``."""
    A = as_int_matrix(A) if A else []
    total = 0
    for k in range(len(A) + 1):
        Ek = exterior_power(A, k) if A else [[1]]
        total += (-1) ** k * trace(mat_pow(Ek, n))
    return total


class NonHyperbolicError(ValueError):
    """The free-part matrix has an eigenvalue at +1 or -1."""


def sigma_r_p(A: Sequence[Sequence[int]]) -> tuple[int, int, int]:
    """``(sigma, r, p)``: ``p`` real eigenvalues below -1, ``r`` real eigenvalues with ``|l| > 1``."""
    A = as_int_matrix(A) if A else []
    cp = charpoly(A)
    for x in (1, -1):
        if P.peval(cp, x) == 0:
            raise NonHyperbolicError(
                f"eigenvalue {x} on the unit circle: det(A^n - I) vanishes for some n"
            )
    p = P.count_real_roots(cp, -math.inf, -1)
    r = p + P.count_real_roots(cp, 1, math.inf)
    return (-1) ** p, r, p


def root_of_unity_order(A: Sequence[Sequence[int]]) -> int | None:
    """Smallest ``k`` with a primitive k-th root of unity among eigenvalues, if any."""
    cp = charpoly(as_int_matrix(A)) if A else [1]
    deg = len(cp) - 1
    k = 1
    # phi(k) <= deg forces k <= 2 deg^2 + 2 comfortably.
    while k <= max(2, 2 * deg * deg + 2):
        if _totient(k) <= deg and P.divides(P.cyclotomic(k), cp):
            return k
        k += 1
    return None


def _totient(k: int) -> int:
    return sum(1 for j in range(1, k + 1) if math.gcd(j, k) == 1)


def reidemeister_zeta(e: FgAbEndo, N_max: int = 12) -> ZetaForm:
    """Zeta function ``exp(sum R(phi^n) z^n / n)`` as a series plus closed data.

    Torsion-free groups get ``L(sigma z)^((-1)^r)``, checked against the series.
    Groups with torsion go through recurrence reconstruction.
    """
    if N_max < 1:
        raise ValueError("N_max must be >= 1")
    seq = reidemeister_sequence(e, N_max).require_finite()
    if e.is_torsion_free:
        if e.group.rank:
            k = root_of_unity_order(e.A)
            if k is not None:
                raise ZetaUndefined(k)
        sigma, r, _ = sigma_r_p(e.A) if e.group.rank else (1, 0, 0)
        closed = lefschetz_zeta(e.A).scale_argument(sigma) ** ((-1) ** r)
        series = exp_zeta_series(seq)
        if closed.series(N_max) != series:
            raise ArithmeticError("Lefschetz closed form disagrees with the Reidemeister series")
        return ZetaForm(tuple(seq), series, closed)

    def value(n: int) -> int:
        v = reidemeister_number(e, n)
        if v is INFINITE:
            raise ZetaUndefined(n)
        return v

    return reconstruct_zeta(value, N_max)


def verify_functional_equation(f: RationalFunctionQ, d: int, m: int, r: int) -> Fraction | None:
    """Solve ``f(1/(d z)) = f(z)^((-1)^m) eps^((-1)^r)`` for the constant ``eps``.

    Returns ``None`` when the quotient is not constant.
    """
    if d == 0:
        raise ValueError("degree d must be nonzero")
    q = f.substitute_reciprocal(d) / f ** ((-1) ** m)
    c = q.constant_value()
    if c is None or c == 0:
        return None
    return c if r % 2 == 0 else 1 / c


# ------------------------------------------------------------ reductions


@dataclass(frozen=True)
class Reduction:
    """A reduced endomorphism plus how its generators sit in the original lift.

    ``generators`` has one column per generator of the new group (free first,
    then torsion), written in the original ``Z^(r+s)`` coordinates. For an
    image subgroup these are the embedded generators; for a quotient they are
    lifts of the quotient generators.
    """

    endo: FgAbEndo
    generators: IntMatrix


def _package(M: IntMatrix, diag: Sequence[int], gens: IntMatrix) -> Reduction:
    """Build an FgAbEndo from a map written in SNF-adapted coordinates.

    ``diag[i]`` is 0 for a free coordinate, 1 for a coordinate that vanishes
    in the group, and ``d > 1`` for a ``Z/d`` coordinate.
    """
    free = [i for i, d in enumerate(diag) if d == 0]
    tors = [i for i, d in enumerate(diag) if d > 1]
    tors.sort(key=lambda i: diag[i])
    for i in free:
        for j in tors:
            if M[i][j]:
                raise ArithmeticError("torsion generator mapped to a free coordinate")
    A = tuple(tuple(M[i][j] for j in free) for i in free)
    B = tuple(tuple(M[i][j] for j in free) for i in tors)
    C = tuple(tuple(M[i][j] for j in tors) for i in tors)
    group = FgAbGroup(len(free), tuple(diag[i] for i in tors))
    order = free + tors
    cols = [[gens[row][i] for row in range(len(gens))] for i in order]
    gen_matrix = [list(col) for col in zip(*cols)] if cols else [[] for _ in gens]
    return Reduction(FgAbEndo(group, A, B, C), gen_matrix)


def _subgroup(e: FgAbEndo, basis: IntMatrix) -> Reduction:
    """Restriction of ``e`` to the subgroup whose lift is the lattice ``basis``."""
    k = e.group.ngens
    t = len(basis[0]) if basis and basis[0] else 0
    if t == 0:
        return Reduction(FgAbEndo(FgAbGroup(0), ()), [[] for _ in range(k)])
    rel = e.relations()
    Q = solve_integer(basis, rel) if rel and rel[0] else [[] for _ in range(t)]
    if Q is None:
        raise ArithmeticError("relation lattice is not contained in the subgroup lattice")
    s = len(Q[0]) if Q and Q[0] else 0
    if s:
        snf = smith_normal_form(Q, transforms=True)
        U = snf.U
        diag = [snf.invariants[i] if i < len(snf.invariants) else 0 for i in range(t)]
    else:
        U = identity(t)
        diag = [0] * t
    Uinv = inverse_unimodular(U)
    image = mat_mul(e.lifted(), basis)
    Mb = solve_integer(basis, image)
    if Mb is None:
        raise ArithmeticError("lattice is not invariant under the endomorphism")
    M = mat_mul(mat_mul(U, Mb), Uinv)
    gens = mat_mul(basis, Uinv)
    return _package(M, diag, gens)


def _signature(red: Reduction) -> tuple[int, tuple[int, ...]]:
    return red.endo.group.rank, red.endo.group.torsion


def eventual_image(e: FgAbEndo, max_steps: int = 64) -> Reduction:
    """Restriction of ``e`` to ``H = phi^j(G)`` once the isomorphism type of ``phi^j(G)`` stops changing."""
    k = e.group.ngens
    rel = e.relations()
    basis = identity(k)
    prev = (e.group.rank, e.group.torsion)
    Phi = e.lifted()
    for _ in range(max_steps):
        img = mat_mul(Phi, basis) if basis and basis[0] else [[] for _ in range(k)]
        W = [img[i] + rel[i] for i in range(k)]
        basis = column_lattice_basis(W, k)
        red = _subgroup(e, basis)
        if _signature(red) == prev:
            return red
        prev = _signature(red)
    raise ArithmeticError("image chain did not stabilise")


def _kernel_lattice(e: FgAbEndo, j: int) -> IntMatrix:
    """Lift of ``ker(phi^j)``: ``{x in Z^(r+s) : Phi^j x in relation lattice}``."""
    k = e.group.ngens
    Mj = e.lifted_power(j)
    rel = e.relations()
    s = len(rel[0]) if rel and rel[0] else 0
    system = [Mj[i] + [-x for x in rel[i]] for i in range(k)]
    K = integer_kernel(system, k + s)
    proj = K[:k]
    W = [proj[i] + rel[i] for i in range(k)]
    return column_lattice_basis(W, k)


def _same_lattice(B1: IntMatrix, B2: IntMatrix) -> bool:
    t1 = len(B1[0]) if B1 and B1[0] else 0
    t2 = len(B2[0]) if B2 and B2[0] else 0
    if t1 != t2:
        return False
    if t1 == 0:
        return True
    return solve_integer(B1, B2) is not None and solve_integer(B2, B1) is not None


def nilpotent_radical(e: FgAbEndo, max_steps: int = 256) -> IntMatrix:
    """Lattice basis of the lift of ``N = union_j ker(phi^j)``."""
    prev = _kernel_lattice(e, 1)
    for j in range(2, max_steps + 1):
        cur = _kernel_lattice(e, j)
        if _same_lattice(prev, cur):
            return cur
        prev = cur
    raise ArithmeticError("kernel chain did not stabilise")


def nilpotent_radical_quotient(e: FgAbEndo) -> Reduction:
    """Induced endomorphism on ``G / N`` with ``N`` the union of the kernels of ``phi^j``."""
    k = e.group.ngens
    if k == 0:
        return Reduction(e, [])
    N = nilpotent_radical(e)
    t = len(N[0]) if N and N[0] else 0
    if t:
        snf = smith_normal_form(N, transforms=True)
        U = snf.U
        diag = [snf.invariants[i] if i < len(snf.invariants) else 0 for i in range(k)]
    else:
        U = identity(k)
        diag = [0] * k
    Uinv = inverse_unimodular(U)
    M = mat_mul(mat_mul(U, e.lifted()), Uinv)
    return _package(M, diag, Uinv)


# ---------------------------------------------------------------- torsion


@dataclass(frozen=True)
class TorsionValue:
    """``tau = |L(lambda)|^-1``; ``kind`` is ``"value"``, ``"POLE"`` or ``"ZERO_DIVISOR"``."""

    kind: str
    value: mpmath.mpf | None = None
    lower: mpmath.mpf | None = None
    upper: mpmath.mpf | None = None
    digits: int = 30

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        if self.value is not None:
            out["value"] = mpmath.nstr(self.value, self.digits, strip_zeros=False)
        return out


def _iv_poly_abs2(coeffs: Sequence[int], c, s):
    iv = mpmath.iv
    re, im = iv.mpf(0), iv.mpf(0)
    pr, pi = iv.mpf(1), iv.mpf(0)
    for a in coeffs:
        re += a * pr
        im += a * pi
        pr, pi = pr * c - pi * s, pr * s + pi * c
    return re * re + im * im


def torsion_tau(L: RationalFunctionQ, a: int, b: int, digits: int = 30) -> TorsionValue:
    """Evaluate ``|L(exp(2 pi i a / b))|^-1`` with ``digits`` certified digits.

    Vanishing of numerator or denominator at the root of unity is decided
    exactly through cyclotomic divisibility; otherwise an interval
    evaluation is refined until its width is below ``10^-digits`` relative
    to the value.
    """
    if b < 1:
        raise ValueError("angle denominator must be >= 1")
    order = b // math.gcd(a, b)
    cyc = P.cyclotomic(order)
    if P.divides(cyc, L.numerator):
        return TorsionValue("POLE", digits=digits)
    if P.divides(cyc, L.denominator):
        return TorsionValue("ZERO_DIVISOR", digits=digits)
    iv = mpmath.iv
    saved = iv.prec
    prec = int(digits * 3.33) + 40
    try:
        while True:
            iv.prec = prec
            with mpmath.workprec(prec):
                theta = 2 * iv.pi * iv.mpf(a) / b
                c, s = iv.cos(theta), iv.sin(theta)
                ratio = _iv_poly_abs2(L.denominator, c, s) / _iv_poly_abs2(L.numerator, c, s)
                tau = iv.sqrt(ratio)
                lo, hi = mpmath.mpf(tau.a), mpmath.mpf(tau.b)
                tol = max(mpmath.mpf(1), abs(hi)) * mpmath.mpf(10) ** (-(digits + 2))
                if hi - lo <= tol:
                    return TorsionValue("value", (lo + hi) / 2, lo, hi, digits)
            prec *= 2
    finally:
        iv.prec = saved
