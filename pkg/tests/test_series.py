from fractions import Fraction

import pytest

from qpw.errors import FractionalSignSubstitution, InsufficientPrecision, NonIntegralCoefficient, ZeroLeadingTerm
from qpw.series import Monomial, Q, QSeries, first_difference, format_rational, mul_coeffs

from kernel_properties import check_fast_multiplication, check_substitute_round_trip


def geometric(n):
    return QSeries([1] * n, 0, n)


def test_construction_normalizes_leading_zeros():
    f = QSeries([0, 0, 3, 1], 0, 4)
    assert f.min_exp == 2
    assert f.valuation == 2
    assert f.coeff(0) == 0 and f.coeff(2) == 3
    assert f.order == 4


def test_integral_fractions_are_stored_as_int():
    f = QSeries([Fraction(4, 2), Fraction(1, 3)], 0, 2)
    assert type(f.coeff(0)) is int
    assert f.coeff(1) == Fraction(1, 3)


def test_floats_are_rejected():
    with pytest.raises(TypeError):
        QSeries([0.5], 0, 1)


def test_scale_reduces_to_smallest_denominator():
    f = QSeries([1, 0, 2], 0, 4, 2)  # 1 + 2q, known below q^2
    assert f.scale == 1
    assert f.coefficients(0, 2) == [1, 2]


def test_scale_kept_when_precision_is_fractional():
    # 1 + O(q^(1/2)) must not be read as 1 + O(q)
    f = QSeries([1], 0, 1, 2)
    assert f.order == Fraction(1, 2)


def test_zero_series_keeps_fractional_precision():
    f = QSeries([1], 1, 2, 2)  # q^(1/2) + O(q)
    z = QSeries.zero(0)
    assert (f * z).order == Fraction(1, 2)


def test_coefficient_past_precision_raises():
    with pytest.raises(InsufficientPrecision):
        geometric(5).coeff(5)


def test_geometric_inverse_is_one_minus_q():
    g = geometric(10).invert()
    assert g.coefficients(0, 10) == [1, -1] + [0] * 8


def test_invert_of_zero_raises():
    with pytest.raises(ZeroLeadingTerm):
        QSeries.zero(5).invert()


def test_laurent_inverse_tracks_precision():
    f = QSeries([1, 1], 1, 6)  # q + q^2 + O(q^6)
    g = f.invert()
    assert g.valuation == -1
    assert g.order == 4
    assert (f * g).coefficients(0, 5) == [1, 0, 0, 0, 0]


def test_product_precision_rule():
    f = QSeries([1], 2, 10)  # q^2 + O(q^10)
    g = QSeries([1], 0, 5)   # 1 + O(q^5)
    assert (f * g).order == 7


def test_fractional_exponent_arithmetic():
    x = Monomial(1, 1, 5).series(10, 5)  # q^(1/5) to order 2
    y = x * x * x * x * x
    assert y.scale == 1 or y.coeff(1) == 1
    assert y.coeff(1) == 1


def test_shift_and_monomial_algebra():
    m = Monomial(Fraction(1, 2), 3, 2)
    assert m.exponent == Fraction(3, 2)
    assert (m * m).exponent == 3
    assert m.inverse().exponent == Fraction(-3, 2)
    assert (Q ** -2).exponent == -2
    f = geometric(4).shift(m)
    assert f.valuation == Fraction(3, 2)
    assert f.coeff(Fraction(3, 2)) == Fraction(1, 2)


def test_mul_and_div_one_minus_are_inverse():
    f = geometric(12)
    for m in (Monomial(2, 3), Monomial(Fraction(-1, 3), 1, 2), Monomial(5, -2)):
        assert f.mul_one_minus(m).div_one_minus(m).agrees(f)


def test_substitute_sign_and_powers():
    f = QSeries([1, 2, 3], 0, 3)
    g = f.substitute(-1, 2, 1)  # 1 - 2q^2 + 3q^4
    assert g.coefficients(0, 5) == [1, 0, -2, 0, 3]
    assert g.order == 6
    h = f.substitute(1, 1, 3)
    assert h.coeff(Fraction(2, 3)) == 3


def test_sign_substitution_rejects_fractional_powers():
    with pytest.raises(FractionalSignSubstitution):
        Monomial(1, 1, 2).series(4, 2).substitute(-1)


def test_dissect_keeps_residue_class():
    f = geometric(12)
    d = f.dissect(2, 3)
    assert [x for x, _ in d.terms()] == [2, 5, 8, 11]


def test_integer_part_drops_fractional_terms():
    f = QSeries([1, 1, 1, 1], 0, 4, 2)
    assert [x for x, _ in f.integer_part().terms()] == [0, 1]


def test_reduce_mod_and_integrality():
    f = QSeries([3, -7, 10], 0, 3)
    assert f.reduce_mod(5) == [3, 3, 0]
    with pytest.raises(NonIntegralCoefficient):
        QSeries([1, Fraction(1, 2)], 0, 2).reduce_mod(2)


def test_truncate_to_fractional_order_is_exact():
    f = geometric(6)
    t = f.truncate(Fraction(7, 2))
    assert t.order == Fraction(7, 2)
    assert t.coefficients(0, 4) == [1, 1, 1, 1]


def test_first_difference_and_format():
    f = geometric(6)
    g = f + Monomial(Fraction(-2, 3), 4)
    assert first_difference(f, g) == (4, 1, Fraction(1, 3))
    assert format_rational(Fraction(6, 3)) == "2"
    assert format_rational(Fraction(-1, 3)) == "-1/3"


def test_series_are_immutable():
    f = geometric(3)
    with pytest.raises(AttributeError):
        f.prec = 10


def test_kronecker_product_matches_schoolbook_at_order_200():
    a = [(-1) ** i * (i * i % 17) for i in range(200)]
    b = [Fraction(i % 5 - 2, 1 + i % 3) for i in range(200)]
    assert mul_coeffs(a, b, 200) == mul_coeffs(a, b, 200, schoolbook=True)
    assert mul_coeffs(a, a, 200) == mul_coeffs(a, a, 200, schoolbook=True)


def test_substitute_round_trip_property():
    check_substitute_round_trip()


def test_fast_multiplication_property():
    check_fast_multiplication()
