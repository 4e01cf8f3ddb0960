import pytest
from hypothesis import given, settings, strategies as st

from qpw.partitions import (
    Constraint,
    Overpartition,
    arithmetic,
    count,
    count_smallest_parts,
    enumerate_overpartitions,
    enumerated_sequence,
    gf_series,
    normalize_id,
    sequence,
    sigma,
)
from qpw.qfunctions import lambert_series
from qpw.series import QSeries


def test_pbar_of_three():
    found = sorted(str(x) for x in enumerate_overpartitions(3, Constraint.PBAR))
    assert found == sorted(["3̄", "2+1̄", "2̄+1̄", "1+1+1̄"])
    assert count(3) == 4


def test_single_omega_overpartition_of_one():
    found = list(enumerate_overpartitions(1, Constraint.PBAR_OMEGA))
    assert found == [Overpartition((1,), {1})]


def test_smallest_part_counts():
    assert count_smallest_parts(1, Constraint.PBAR_OMEGA) == 1
    assert count_smallest_parts(2, Constraint.PBAR_OMEGA) == 3
    assert count_smallest_parts(3, Constraint.PBAR) == sequence("sptbar", 3)[3]


def test_enumeration_lists_each_object_once():
    for n in range(1, 13):
        for c in Constraint:
            objs = list(enumerate_overpartitions(n, c))
            assert len(objs) == len(set(objs))
            assert all(o.size == n for o in objs)
            assert len(objs) == count(n, c)


def test_constraints_hold_on_enumerated_objects():
    for n in range(1, 15):
        for o in enumerate_overpartitions(n, Constraint.PBAR_OMEGA):
            s = o.smallest
            assert s in o.overlined
            assert all(j % 2 == 0 or j < 2 * s for j in o.parts)
        for o in enumerate_overpartitions(n, Constraint.PBAR_EVEN):
            assert o.smallest % 2 == 0


def test_overline_must_be_a_part():
    with pytest.raises(ValueError):
        Overpartition((2, 1), {3})


@pytest.mark.parametrize("sid", ["pbar", "pbar_omega", "sptbar_omega", "sptbar", "sptbar2", "p_omega"])
def test_series_match_enumeration_to_40(sid):
    assert sequence(sid, 40)[1:] == enumerated_sequence(sid, 40)[1:]


def test_p_omega_matches_q_omega_to_30():
    assert sequence("q_omega", 30)[1:] == enumerated_sequence("p_omega", 30)[1:]


def test_full_overpartitions_are_twice_pbar():
    for n in range(1, 26):
        assert count(n, Constraint.OVERPARTITION) == 2 * count(n, Constraint.PBAR)


def test_arithmetic_examples():
    assert arithmetic("sigma", 6) == 12
    assert arithmetic("d_odd", 12) == 2
    assert arithmetic("r2", 25) == 12
    assert arithmetic("sum_odd_div", 12) == 4
    with pytest.raises(ValueError):
        arithmetic("sigma", 0)


@given(st.integers(1, 60), st.integers(1, 60))
@settings(max_examples=100)
def test_sigma_is_multiplicative(a, b):
    from math import gcd
    if gcd(a, b) == 1:
        assert sigma(a * b) == sigma(a) * sigma(b)


def test_jacobi_two_squares():
    for n in range(1, 200):
        d1 = sum(1 for d in range(1, n + 1) if n % d == 0 and d % 4 == 1)
        d3 = sum(1 for d in range(1, n + 1) if n % d == 0 and d % 4 == 3)
        assert arithmetic("r2", n) == 4 * (d1 - d3)


def test_odd_divisor_lambert_series():
    lam = lambert_series(lambda n: 1, lambda n: (n + 1, 2 * n + 2), 60, start=0)
    table = QSeries([0] + [arithmetic("d_odd", n) for n in range(1, 60)], 0, 60)
    assert lam == table


def test_divisor_series_mod_2_is_squares():
    d = lambert_series(lambda n: 1, lambda n: (n, n), 200)
    squares = {k * k for k in range(1, 15)}
    assert [c % 2 for c in d.coefficients(0, 200)] == [1 if n in squares else 0 for n in range(200)]


def test_Y_listed_coefficients():
    Y = gf_series("GF_Y", 16)
    assert [Y.coeff(e) for e in range(3, 16, 2)] == [-1, -2, -3, -5, -4, -7, -9]


def test_A_vanishes_at_zero():
    assert gf_series("GF_AQ", 10).coeff(0) == 0


def test_series_id_normalization():
    assert normalize_id("GF_PBAR_OMEGA") == "pbar_omega"
    assert normalize_id("gf_aq") == "A"
    with pytest.raises(KeyError):
        normalize_id("nope")
    with pytest.raises(ValueError):
        gf_series("pbar", 0)
