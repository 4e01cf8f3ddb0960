"""Smallest-parts generating functions: representations and congruence chains."""

from __future__ import annotations


from ..partitions import (
    _prefactor_even,
    divisor_lambert,
    excess_1_2_mod_6,
    gf_M1,
    gf_pbar_omega,
    gf_s22,
    gf_sptbar,
    gf_sptbar2,
    gf_Y,
    odd_weighted_lambert,
    sigma,
)
from ..qfunctions import (
    T as theta_T,
    W as theta_W,
    euler,
    lambert_series,
    phi_minus,
    pochhammer_quotient,
    quadratic_sum,
    scaled,
    theta_progression,
)
from ..series import Monomial, Q, QSeries
from .core import register

M = Monomial


def _n(order) -> int:
    return scaled(order, 1)


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


def _pre(n) -> QSeries:
    """(-q;q)_oo / (q;q)_oo."""
    return pochhammer_quotient([M(-1, 1)], [Q], n)


def _alt_square_lambert(n, num, den, weight=_sign) -> QSeries:
    return lambert_series(weight, lambda k: (num(k), den(k)), n, power=2)


def _from_coeffs(fn, n) -> QSeries:
    return QSeries.from_terms([(k, fn(k)) for k in range(1, n)], n)


def _sptomega(n) -> QSeries:
    return gf_pbar_omega(n, True)


# ---------------------------------------------------------------------------
# representations


@register("barspt_rep", "spt-bar generating function as divisor and theta-type Lambert series",
          group="spt", default_prec=200)
def _barspt_rep(order, p):
    n = _n(order)
    pre = _pre(n)
    rhs = pre * divisor_lambert(n) + 2 * pre * _alt_square_lambert(n, lambda k: k * k + k, lambda k: k)
    return gf_sptbar(n), rhs


@register("barspt2_rep", "spt-bar-2 generating function as Lambert series", group="spt", default_prec=200)
def _barspt2_rep(order, p):
    n = _n(order)
    pre = _pre(n)
    inner = _alt_square_lambert(n, lambda k: k, lambda k: k) + _alt_square_lambert(n, lambda k: k + k * k, lambda k: k)
    return gf_sptbar2(n), pre * divisor_lambert(n) + pre * inner


@register("barsptomega_rep", "spt-bar-omega generating function as Lambert series", group="spt",
          default_prec=200)
def _barsptomega_rep(order, p):
    n = _n(order)
    pre2 = _prefactor_even(n)
    D = _alt_square_lambert(n, lambda k: 2 * k * (k + 1), lambda k: 2 * k)
    return _sptomega(n), pre2 * divisor_lambert(n) + 2 * pre2 * D


@register("sptomega_bailey_form", "spt-bar-omega as the prefactor times the derivative sum",
          group="spt", default_prec=150)
def _sptomega_bailey_form(order, p):
    n = _n(order)
    total = QSeries.zero(n)
    t = QSeries.one(n)
    k = 0
    while k + 1 < n:
        t = t.mul_one_minus(Q ** (k + 1)).mul_one_minus(M(-1, 2 * k + 1))
        t = t.div_one_minus(M(-1, k + 1)).div_one_minus(M(1, 2 * k + 1))
        k += 1
        total = total + t.shift(Q ** k).div_one_minus(Q ** k).div_one_minus(Q ** k).truncate(n)
    return _sptomega(n), _prefactor_even(n) * total


def _odd_lambert(n) -> QSeries:
    """sum (2n-1) q^(2n-1) / (1 - q^(2n-1))."""
    return odd_weighted_lambert(n)


@register("lem1_oddsum", "alternating squared Lambert series against odd divisor sums", group="spt",
          default_prec=200)
def _lem1(order, p):
    n = _n(order)
    lhs = _alt_square_lambert(n, lambda k: k, lambda k: k)
    plus = QSeries.zero(n)
    for k in range(1, n):
        plus = plus + QSeries.monomial(k, k, 1, n).div_one_minus(M(-1, k))
    from ..partitions import odd_divisor_sum
    return [("odd Lambert", lhs, -_odd_lambert(n)),
            ("k q^k/(1+q^k)", lhs, -plus),
            ("odd divisor sums", lhs, -_from_coeffs(odd_divisor_sum, n))]


@register("cor_4", "spt-bar-omega through spt-bar at q^2", group="spt", default_prec=200)
def _cor_4(order, p):
    n = _n(order)
    inner = _odd_lambert(n) + divisor_lambert(n, 2)
    return _sptomega(n), _prefactor_even(n) * inner + gf_sptbar(n).substitute(1, 2, 1).truncate(n)


@register("cor_40", "spt-bar-omega through spt-bar-2 at q^2", group="spt", default_prec=200)
def _cor_40(order, p):
    n = _n(order)
    return _sptomega(n), gf_s22(n) + 2 * gf_sptbar2(n).substitute(1, 2, 1).truncate(n)


# ---------------------------------------------------------------------------
# modulo 3


def _odd_over_double(n, weight_scale=1) -> QSeries:
    """sum (2k-1) q^(2k-1) / (1 - q^(4k-2))."""
    return lambert_series(lambda k: (2 * k - 1) * weight_scale, lambda k: (2 * k - 1, 4 * k - 2), n)


def fine_3231_product(n) -> QSeries:
    """q (q^4;q^4)^8 / (q^2;q^2)^4."""
    return (euler(4, n) ** 8 / euler(2, n) ** 4).shift(Q).truncate(n)


@register("fine_3231", "odd-weighted Lambert series over 1-q^(4n-2) as an eta quotient", group="spt",
          default_prec=200)
def _fine_3231(order, p):
    n = _n(order)
    return _odd_over_double(n), fine_3231_product(n)


@register("s22_split", "the c_n series split into odd part q E1(q^2) and 3 E2(q^2)", group="spt",
          default_prec=200)
def _s22_split(order, p):
    n = _n(order)
    inner = _odd_over_double(n) + 3 * odd_weighted_lambert(n, 2)
    S = gf_s22(n)
    E2 = _pre(n) * _odd_lambert(n)
    return [("split", S, _prefactor_even(n) * inner),
            ("even part", S.dissect(0, 2), 3 * E2.substitute(1, 2, 1).truncate(n))]


@register("s22_mod3", "the c_n series modulo 3 as an eta quotient supported off 3n", modulus=3, group="spt",
          default_prec=300)
def _s22_mod3(order, p):
    n = _n(order)
    pre2 = _prefactor_even(n)
    S = gf_s22(n)
    b2, b6 = M(1, 2), M(1, 6)
    nine = pochhammer_quotient([M(-1, 2)] * 9 + [b2] * 3, [], n, 2).shift(Q).truncate(n)
    six = pochhammer_quotient([M(-1, 6)] * 3 + [b6], [], n, 6).shift(Q).truncate(n)
    return [("minus the doubled sum", S, pre2 * (_odd_lambert(n) - odd_weighted_lambert(n, 2))),
            ("cube reduction", S, six),
            ("ninth power", nine, six)]


@register("s22_exact_steps", "exact steps between the c_n series and its eta quotient", group="spt",
          default_prec=200)
def _s22_exact(order, p):
    n = _n(order)
    pre2 = _prefactor_even(n)
    b2 = M(1, 2)
    nine = pochhammer_quotient([M(-1, 2)] * 9 + [b2] * 3, [], n, 2).shift(Q).truncate(n)
    return [("combine", _odd_lambert(n) - odd_weighted_lambert(n, 2), _odd_over_double(n)),
            ("eta quotient", pre2 * fine_3231_product(n), nine)]


def fine_3239_product(n) -> QSeries:
    """(q^2;q^2)(q^3;q^3)^6 / ((q;q)^2 (q^6;q^6)^3)."""
    return euler(2, n) * euler(3, n) ** 6 / (euler(1, n) ** 2 * euler(6, n) ** 3)


def _e12(n) -> QSeries:
    return _from_coeffs(excess_1_2_mod_6, n)


@register("fine_3239", "divisor excess modulo 6 as an eta quotient", group="spt", default_prec=200)
def _fine_3239(order, p):
    n = _n(order)
    pm = phi_minus(n)
    R = fine_3239_product(n)
    return [("eta quotient", 1 + 2 * _e12(n), R),
            ("theta quotient", R, pm.substitute(1, 3, 1) ** 3 / pm)]


@register("phi_dissect9", "3-dissection of phi(-q)", group="spt", default_prec=300)
def _phi_dissect9(order, p):
    n = _n(order)
    return phi_minus(n), phi_minus(n).dissect(0, 9) - 2 * theta_W(n).substitute(1, 3, 1).shift(Q).truncate(n)


def _chi6(k: int) -> int:
    r = k % 6
    return 1 if r in (1, 2) else -1 if r in (4, 5) else 0


@register("chi6_lambert", "character Lambert series counts divisor excess modulo 6", group="spt",
          default_prec=200)
def _chi6_lambert(order, p):
    n = _n(order)
    return lambert_series(_chi6, lambda k: (k, k), n), _e12(n)


@register("theta_2n2_minus_n", "(q^4;q^4)(q;q^2) as a theta series", group="spt", default_prec=300)
def _theta_2n2(order, p):
    n = _n(order)
    lhs = euler(4, n) * pochhammer_quotient([Q], [], n, 2)
    return lhs, quadratic_sum(_sign, lambda k: 2 * k * k - k, n)


@register("M1_mod3", "the d_n series modulo 3 down to a form without multiples of 3", modulus=3, group="spt",
          default_prec=300)
def _M1_mod3(order, p):
    n = _n(order)
    M1 = gf_M1(n)
    pre2 = _prefactor_even(n)
    inv_phi2 = 1 / phi_minus(n).substitute(1, 2, 1).truncate(n)
    pm = phi_minus(n)
    alt = lambert_series(lambda k: k * _sign(k - 1), lambda k: (k, k), n)
    Wq = theta_W(n).substitute(1, 3, 1).truncate(n)
    tail = (Wq / euler(3, n)).shift(Q).truncate(n)
    return [("alternating divisor sum", M1, pre2 * alt),
            ("character", M1, pre2 * lambert_series(_chi6, lambda k: (k, k), n)),
            ("eta quotient", M1, inv_phi2 * (1 - fine_3239_product(n))),
            ("theta difference", M1, (pm - pm.dissect(0, 9)) / (phi_minus(n).substitute(1, 2, 1).truncate(n) * pm)),
            ("product form", M1, tail * euler(4, n) * pochhammer_quotient([Q], [], n, 2)),
            ("theta form", M1, tail * quadratic_sum(_sign, lambda k: 2 * k * k - k, n))]


@register("M1_exact_steps", "exact steps of the d_n chain", group="spt", default_prec=200)
def _M1_exact(order, p):
    n = _n(order)
    pm = phi_minus(n)
    pm2 = pm.substitute(1, 2, 1).truncate(n)
    return [("prefactor", _prefactor_even(n), 1 / pm2),
            ("theta quotient", fine_3239_product(n) * pm, pm.substitute(1, 3, 1) ** 3),
            ("alternating divisor sum", lambert_series(lambda k: k * _sign(k - 1), lambda k: (k, k), n),
             _odd_lambert(n) - 2 * divisor_lambert(n, 2))]


# ---------------------------------------------------------------------------
# modulo 2 and 4


@register("sigma_lambert", "sum q^n/(1-q^n)^2 is the divisor-sum series", group="spt", default_prec=200)
def _sigma_lambert(order, p):
    n = _n(order)
    return lambert_series(lambda k: 1, lambda k: (k, k), n, power=2), _from_coeffs(sigma, n)


@register("sigma_mod2", "spt-bar-omega is the divisor-sum series modulo 2", modulus=2, group="spt",
          default_prec=300)
def _sigma_mod2(order, p):
    n = _n(order)
    return _sptomega(n), lambert_series(lambda k: 1, lambda k: (k, k), n, power=2)


def _squares(n) -> QSeries:
    return theta_T(n)


@register("sq1", "triangular Lambert series equals the odd Lambert series", group="spt", default_prec=200)
def _sq1(order, p):
    n = _n(order)
    lhs = lambert_series(lambda k: 1, lambda k: (k * (k + 1) // 2, k), n)
    return lhs, lambert_series(lambda k: 1, lambda k: (2 * k - 1, 2 * k - 1), n)


@register("sq2", "odd Lambert series is squares plus doubled squares modulo 2", modulus=2, group="spt",
          default_prec=300)
def _sq2(order, p):
    n = _n(order)
    rhs = _squares(n) + _squares(n).substitute(1, 2, 1).truncate(n)
    return lambert_series(lambda k: 1, lambda k: (2 * k - 1, 2 * k - 1), n), rhs


@register("thm2_parity", "both spt series are squares plus doubled squares modulo 2", modulus=2, group="spt",
          default_prec=300)
def _thm2_parity(order, p):
    n = _n(order)
    sq = _squares(n) + _squares(n).substitute(1, 2, 1).truncate(n)
    return [("spt-bar against spt-bar-omega", gf_sptbar(n), _sptomega(n)),
            ("divisor Lambert", gf_sptbar(n), divisor_lambert(n)),
            ("odd Lambert", divisor_lambert(n), lambert_series(lambda k: 1, lambda k: (2 * k - 1, 2 * k - 1), n)),
            ("squares", gf_sptbar(n), sq)]


@register("equ_phi_prod", "1 + 2T(-q) as a product", group="spt", default_prec=300)
def _equ_phi_prod(order, p):
    n = _n(order)
    return 1 + 2 * _squares(n).substitute(-1), pochhammer_quotient([Q], [M(-1, 1)], n)


@register("equ_psi_prod", "triangular theta series as products", group="spt", default_prec=300)
def _equ_psi_prod(order, p):
    from ..qfunctions import psi
    n = _n(order)
    return [("odd base", psi(n), pochhammer_quotient([M(1, 2)], [Q], n, 2)),
            ("eta quotient", psi(n), euler(2, n) ** 2 / euler(1, n))]


@register("equ_two_squares", "T + T^2 as an alternating odd Lambert series", group="spt", default_prec=300)
def _equ_two_squares(order, p):
    n = _n(order)
    Tq = _squares(n)
    return Tq + Tq * Tq, lambert_series(_sign, lambda k: (2 * k + 1, 2 * k + 1), n, start=0)


def _poly(T, coeffs) -> QSeries:
    """sum c_i T^i for a dict {i: c_i}."""
    out = QSeries.zero(T.prec, T.scale)
    power = QSeries.one(T.prec, T.scale)
    for i in range(max(coeffs) + 1):
        if i:
            power = power * T
        if coeffs.get(i):
            out = out + coeffs[i] * power
    return out


SPT_POLY = {1: 1, 2: 3, 3: 2}
SPT_OMEGA_POLY = {1: 1, 2: 3, 3: 2, 4: 2, 8: 2}


@register("thm3_T_poly", "spt-bar modulo 4 as a cubic in T", modulus=4, group="spt", default_prec=300)
def _thm3_T(order, p):
    n = _n(order)
    pre = _pre(n)
    alt_odd = lambert_series(_sign, lambda k: (2 * k + 1, 2 * k + 1), n, start=0)
    step1 = pre * (alt_odd + 2 * lambert_series(lambda k: 1, lambda k: (4 * k + 2, 4 * k + 2), n, start=0)
                   + 2 * lambert_series(lambda k: 1, lambda k: (k * (k + 1), 2 * k), n))
    Tq = _squares(n)
    return [("Lambert form", gf_sptbar(n), step1),
            ("alternating odd", gf_sptbar(n), pre * alt_odd),
            ("cubic", gf_sptbar(n), _poly(Tq, SPT_POLY))]


@register("thm3_Tw_poly", "spt-bar-omega modulo 4 as a polynomial in T", modulus=4, group="spt",
          default_prec=300)
def _thm3_Tw(order, p):
    n = _n(order)
    pre2 = _prefactor_even(n)
    alt_odd = lambert_series(_sign, lambda k: (2 * k + 1, 2 * k + 1), n, start=0)
    alt_even = lambert_series(_sign, lambda k: (4 * k + 2, 4 * k + 2), n, start=0)
    tri = lambert_series(lambda k: 1, lambda k: (k * (k + 1) // 2, k), n)
    Tq = _squares(n)
    T2 = Tq.substitute(1, 2, 1).truncate(n)
    inner = Tq + Tq * Tq + 2 * T2 + 2 * T2 * T2 + 2 * (Tq + Tq * Tq) ** 4
    return [("Lambert form", _sptomega(n), pre2 * (alt_odd + 2 * alt_even + 2 * tri ** 4)),
            ("theta form", _sptomega(n), inner / (1 + 2 * T2.substitute(-1))),
            ("octic", _sptomega(n), _poly(Tq, SPT_OMEGA_POLY))]


def seventh_thetas(n):
    """t, a, b, c with T(q^(1/7)) = t + a + b + c; a, b, c live in q^(1/7)."""
    t = _squares(n).substitute(1, 7, 1).truncate(n)
    a, b, c = (theta_progression(False, 7, j, 7, True, n) for j in (1, 2, 3))
    return t, a, b, c


@register("thm3_dissect7", "7-dissection of the spt polynomials in T(q^(1/7))", scale=7, group="spt",
          default_prec=7 * 60)
def _thm3_dissect7(order, p):
    n = _n(order)
    t, a, b, c = seventh_thetas(n)
    T7 = _squares(7 * n).substitute(1, 1, 7)
    full = _poly(T7, SPT_POLY)
    return [("sum of pieces", T7, t + a + b + c),
            ("integral part, cubic", full.integer_part(), 12 * a * b * c + _poly(t, SPT_POLY))]


@register("thm3_hecke_poly", "7n-coefficients of the T polynomials vanish off 49n and repeat at 49n", modulus=4,
          group="spt", default_prec=420)
def _thm3_hecke_poly(order, p):
    n = _n(order)
    Tq = _squares(n)
    small = _squares(n // 49 + 1)
    out = []
    for label, poly in (("cubic", SPT_POLY), ("octic", SPT_OMEGA_POLY)):
        out.append((label, _poly(Tq, poly).dissect(0, 7), _poly(small, poly).substitute(1, 49, 1).truncate(n)))
    return out


# ---------------------------------------------------------------------------
# the odd-function candidate


def y_by_series(n) -> QSeries:
    """Y(q) built from series operations: sum_m (-1)^m q^m/(1-q^(2m-1)) sum_k q^(2km)/(1+q^k)."""
    total = QSeries.zero(n)
    m = 1
    while 3 * m < n:
        inner = QSeries.zero(n)
        k = 1
        while 2 * k * m + m < n:
            inner = inner + QSeries.monomial(1, 2 * k * m, 1, n).div_one_minus(M(-1, k))
            k += 1
        term = inner.shift(M(_sign(m), m)).div_one_minus(M(1, 2 * m - 1)).truncate(n)
        total = total + term
        m += 1
    return total


@register("y_series", "the double sum Y(q) by two independent expansions", group="spt", default_prec=200)
def _y_series(order, p):
    n = _n(order)
    return gf_Y(n), y_by_series(n)
