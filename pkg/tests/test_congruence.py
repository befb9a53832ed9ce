import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twisted_zeta.congruence import gauss_check, mobius_sums, orbit_counts, realizable
from twisted_zeta.exactmath.numtheory import divisors


def test_mersenne_orbit_counts():
    values = [2**n - 1 for n in range(1, 7)]
    assert orbit_counts(values).counts == (1, 1, 2, 3, 6, 9)
    assert realizable(values)


def test_failure_is_reported_not_raised():
    report = gauss_check([1, 2])
    assert not report.passed and report.first_failure == 2
    assert report.entries[1].residue == 1 and report.entries[1].orbit_count is None
    with pytest.raises(ValueError, match="n=2"):
        orbit_counts([1, 2])


def test_constant_sequence():
    report = gauss_check([3, 3, 3, 3])
    assert report.passed
    assert [e.mobius_sum for e in report.entries] == [3, 0, 0, 0]


def test_negative_orbit_counts_flagged():
    oc = orbit_counts([3, 1])
    assert oc.counts == (3, -1) and oc.negative == (2,)
    assert not realizable([3, 1])


def test_empty_input_rejected():
    with pytest.raises(ValueError):
        gauss_check([])


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(-50, 50), min_size=1, max_size=30))
def test_mobius_round_trip(orbits):
    # build a sequence from arbitrary orbit counts, then recover them
    values = [sum(d * orbits[d - 1] for d in divisors(n)) for n in range(1, len(orbits) + 1)]
    assert orbit_counts(values).counts == tuple(orbits)
    assert mobius_sums(values) == [n * c for n, c in enumerate(orbits, start=1)]


def test_json_uses_strings_for_integers():
    data = gauss_check([1, 3]).to_json()
    assert data["passed"] is True
    assert data["entries"][1] == {"n": 2, "mobius_sum": "2", "residue": "0", "orbit_count": "1", "passed": True}
