import random
from fractions import Fraction

import mpmath
import pytest
from support import random_fgab, random_hyperbolic

from twisted_zeta.exactmath.matrix import (
    det,
    exterior_power,
    identity,
    mat_pow,
    mat_sub,
    trace,
)
from twisted_zeta.exactmath.ratfunc import RationalFunctionQ
from twisted_zeta.fgab import (
    FgAbEndo,
    FgAbGroup,
    NonHyperbolicError,
    eventual_image,
    lefschetz_number,
    lefschetz_zeta,
    nilpotent_radical,
    nilpotent_radical_quotient,
    reidemeister_number,
    reidemeister_sequence,
    reidemeister_zeta,
    root_of_unity_order,
    sigma_r_p,
    torsion_tau,
    verify_functional_equation,
)
from twisted_zeta.grouporacle import AbelianCharEndo, twisted_classes
from twisted_zeta.zetaform import INFINITE, ZetaUndefined

CAT = [[2, 1], [1, 1]]


def test_group_validation():
    with pytest.raises(ValueError):
        FgAbGroup(0, (4, 2))
    with pytest.raises(ValueError):
        FgAbGroup(0, (1,))
    with pytest.raises(ValueError):
        FgAbEndo.finite((2, 4), [[1, 0], [1, 1]])  # Z/2 -> Z/4 by 1 is not a homomorphism
    e = FgAbEndo(FgAbGroup(1, (4,)), ((2,),), ((7,),), ((5,),))
    assert e.B == ((3,),) and e.C == ((1,),)


@pytest.mark.parametrize(
    "endo, n, value",
    [
        (FgAbEndo.free(CAT), 1, 1),
        (FgAbEndo.free(CAT), 2, 5),
        (FgAbEndo.free([[1]]), 1, INFINITE),
        (FgAbEndo.finite((4,), [[3]]), 1, 2),
        (FgAbEndo(FgAbGroup(0), ()), 3, 1),
    ],
)
def test_reidemeister_examples(endo, n, value):
    assert reidemeister_number(endo, n) == value


def test_reidemeister_is_abs_det_on_free_groups():
    rng = random.Random(3)
    for _ in range(25):
        A = random_hyperbolic(rng, rng.randint(1, 4))
        e = FgAbEndo.free(A)
        for n in range(1, 7):
            assert reidemeister_number(e, n) == abs(det(mat_sub(mat_pow(A, n), identity(len(A)))))


def test_reidemeister_matches_bruteforce_on_finite_groups():
    rng = random.Random(5)
    for _ in range(20):
        e = random_fgab(rng, max_rank=0)
        if not e.group.torsion:
            continue
        g = AbelianCharEndo(e.group.torsion, e.C).to_group()
        for n in range(1, 5):
            assert reidemeister_number(e, n) == twisted_classes(g, n)


def test_lefschetz_examples():
    assert lefschetz_zeta([[2]]) == RationalFunctionQ([1, -2], [1, -1])
    assert lefschetz_zeta([[0, -1], [1, 0]]) == RationalFunctionQ([1, 0, 1], [1, -2, 1])
    assert lefschetz_zeta([[1]]) == RationalFunctionQ.one()


def test_lefschetz_number_sign_identity():
    rng = random.Random(8)
    for _ in range(20):
        A = random_hyperbolic(rng, rng.randint(1, 4))
        _, r, p = sigma_r_p(A)
        e = FgAbEndo.free(A)
        for n in range(1, 8):
            L = sum((-1) ** k * trace(mat_pow(exterior_power(A, k), n)) for k in range(len(A) + 1))
            assert L == lefschetz_number(A, n)
            assert reidemeister_number(e, n) == (-1) ** (r + p * n) * L


@pytest.mark.parametrize("A, expected", [([[2]], (1, 1, 0)), ([[-2]], (-1, 1, 1)), (CAT, (1, 1, 0))])
def test_sigma_r_p_examples(A, expected):
    assert sigma_r_p(A) == expected


def test_sigma_r_p_rejects_unit_eigenvalues():
    with pytest.raises(NonHyperbolicError):
        sigma_r_p([[1, 1], [0, 2]])
    with pytest.raises(NonHyperbolicError):
        sigma_r_p([[-1]])


def test_zeta_examples():
    z = reidemeister_zeta(FgAbEndo.free([[2]]), 12)
    assert z.closed_form == RationalFunctionQ([1, -1], [1, -2])
    z = reidemeister_zeta(FgAbEndo.finite((5,), [[4]]), 12)
    expected = RationalFunctionQ([1], [1, -1]) * RationalFunctionQ([1], [1, 0, -1]) ** 2
    assert z.closed_form == expected
    assert dict(z.exponents) == {Fraction(-1): 2, Fraction(1): 3}
    with pytest.raises(ZetaUndefined):
        reidemeister_zeta(FgAbEndo.free([[1, 0], [0, 2]]), 6)
    trivial = reidemeister_zeta(FgAbEndo(FgAbGroup(0), ()), 6)
    assert trivial.closed_form == RationalFunctionQ([1], [1, -1])


def test_zeta_rotation_is_undefined():
    # eigenvalues +-i: R(phi^4) is infinite
    with pytest.raises(ZetaUndefined) as info:
        reidemeister_zeta(FgAbEndo.free([[0, -1], [1, 0]]), 12)
    assert info.value.n == 4
    assert root_of_unity_order([[0, -1], [1, 0]]) == 4


def test_zeta_mixed_group_closed_form_matches_series():
    rng = random.Random(21)
    seen = 0
    for _ in range(60):
        e = random_fgab(rng, max_rank=1, force_singular=0)
        if not reidemeister_sequence(e, 24).finite:
            continue
        z = reidemeister_zeta(e, 24)
        seen += 1
        if z.closed_form is not None:
            from twisted_zeta.exactmath.ratfunc import series_of_rational

            assert series_of_rational(z.closed_form, 24) == z.series
        else:
            assert z.recurrence is not None and z.recurrence.reproduces(list(z.sequence))
    assert seen > 10


@pytest.mark.parametrize(
    "f, d, m, r, eps",
    [
        (RationalFunctionQ([1, -1], [1, -2]), 2, 1, 1, 2),
        (RationalFunctionQ.one(), 5, 2, 1, 1),
        (RationalFunctionQ([1, -1], [1, -3]), 3, 1, 1, 3),
    ],
)
def test_functional_equation_examples(f, d, m, r, eps):
    assert verify_functional_equation(f, d, m, r) == eps


def test_functional_equation_rejects_zero_degree_and_detects_failure():
    with pytest.raises(ValueError):
        verify_functional_equation(RationalFunctionQ.one(), 0, 1, 1)
    assert verify_functional_equation(RationalFunctionQ([1, -1], [1, -2]), 3, 1, 1) is None


def test_eventual_image_examples():
    red = eventual_image(FgAbEndo.finite((4,), [[2]]))
    assert red.endo.group == FgAbGroup(0)
    red = eventual_image(FgAbEndo.free([[2, 0], [0, 1]]))
    assert red.endo.group == FgAbGroup(2)
    assert sorted(abs(x) for x in (red.endo.A[0][0], red.endo.A[1][1])) == [1, 2]
    # generators span 2Z + Z
    assert abs(det(red.generators)) == 2
    e = FgAbEndo.free(CAT)
    assert eventual_image(e).endo.group == e.group


def test_nilpotent_radical_examples():
    q = nilpotent_radical_quotient(FgAbEndo.free([[0, 0], [0, 2]]))
    assert q.endo.group == FgAbGroup(1)
    assert abs(q.endo.A[0][0]) == 2
    e = FgAbEndo.free(CAT)
    assert nilpotent_radical_quotient(e).endo.group == e.group
    q = nilpotent_radical_quotient(FgAbEndo.finite((8,), [[2]]))
    assert q.endo.group == FgAbGroup(0)
    assert nilpotent_radical(FgAbEndo.finite((8,), [[2]]))


def test_reductions_preserve_sequences():
    rng = random.Random(99)
    for _ in range(60):
        e = random_fgab(rng)
        seq = reidemeister_sequence(e, 8).values
        assert reidemeister_sequence(eventual_image(e).endo, 8).values == seq
        assert reidemeister_sequence(nilpotent_radical_quotient(e).endo, 8).values == seq


def test_torsion_examples():
    L = RationalFunctionQ([1, -2], [1, -1])
    t = torsion_tau(L, 1, 2)
    with mpmath.workdps(60):
        assert t.kind == "value" and abs(t.value - mpmath.mpf(2) / 3) < mpmath.mpf(10) ** -28
    assert torsion_tau(L, 0, 1).kind == "ZERO_DIVISOR"
    assert torsion_tau(RationalFunctionQ([1, 1]), 1, 2).kind == "POLE"
    t = torsion_tau(L, 1, 4, digits=40)
    with mpmath.workdps(60):
        assert abs(t.value - mpmath.sqrt(mpmath.mpf(2) / 5)) < mpmath.mpf(10) ** -38
    assert t.lower <= t.value <= t.upper
    with pytest.raises(ValueError):
        torsion_tau(L, 1, 0)
