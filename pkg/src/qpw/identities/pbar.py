"""Identities and congruences around the overpartition count p̄_ω(n)."""

from __future__ import annotations

import time
from fractions import Fraction

from ..partitions import _g, _smallest_part_sum, gf_A, gf_pbar_omega, gf_repre, gf_S
from ..qfunctions import (
    euler,
    lambert_series,
    little_q_jacobi,
    pochhammer,
    pochhammer_quotient,
    pochhammer_ratio,
    quadratic_sum,
    scaled,
    term_sum,
)
from ..series import Monomial, Q, QSeries
from .core import FAIL, PASS, VerificationReport, register

M = Monomial


def _n(order) -> int:
    return scaled(order, 1)


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


def _half(x, n) -> QSeries:
    return QSeries.constant(Fraction(x), n)


# ---------------------------------------------------------------------------
# building blocks of the main identity


def mainn_lhs(order) -> QSeries:
    """sum q^n (-q^3;q^2)_n (q)_n / ((q^3;q^2)_n (-q^2)_n)."""
    def step(n, t):
        t = t.mul_one_minus(M(-1, 2 * n + 3)).mul_one_minus(M(1, n + 1))
        t = t.div_one_minus(M(1, 2 * n + 3)).div_one_minus(M(-1, n + 2))
        return t.shift(Q)
    return term_sum(step, order)


def first_sum(order) -> QSeries:
    """sum (-1)_n (-q;q^2)_n q^n / ((q;q^2)_n (q)_n)."""
    def step(n, t):
        t = t.mul_one_minus(M(-1, n)).mul_one_minus(M(-1, 2 * n + 1))
        t = t.div_one_minus(M(1, 2 * n + 1)).div_one_minus(M(1, n + 1))
        return t.shift(Q)
    return term_sum(step, order)


def jacobi_sum(order) -> QSeries:
    """sum (q;q^2)_n (-q)^n p_{2n}(-1; q^(-2n-1), -1 : q) / ((-q;q^2)_n (1+q^(2n)))."""
    N = _n(order) + 2
    total = QSeries.zero(N)
    t = QSeries.one(N)
    n = 0
    while n < N:
        term = t.div_one_minus(M(-1, 2 * n)) * little_q_jacobi(2 * n, -1, M(1, -2 * n - 1), -1, N)
        total = total + term.truncate(N)
        t = t.mul_one_minus(M(1, 2 * n + 1)).div_one_minus(M(-1, 2 * n + 1)).shift(M(-1, 1))
        n += 1
    return total


def jacobi_term(order) -> QSeries:
    """q^-1 (-q;q^2)_oo / (q^3;q^2)_oo times the little q-Jacobi sum."""
    pre = pochhammer_quotient([M(-1, 1)], [M(1, 3)], order + 2, 2)
    return (pre * jacobi_sum(order + 2)).shift(M(1, -1)).truncate(order)


@register("mt1_mainn", "q-series for the overpartition sum as a product sum plus a little q-Jacobi sum",
          group="pbar", default_prec=80)
def _mt1_mainn(order, p):
    S1 = first_sum(order + 2)
    lead = pochhammer_quotient([Q, Q], [M(-1, 1), M(-1, 1)], order + 2) * S1 * Fraction(1, 2)
    rhs = lead - lead.shift(M(1, -1)) + jacobi_term(order)
    return mainn_lhs(order), rhs.truncate(order)


@register("mt1_fgf", "generating function of p̄_ω(n) through the little q-Jacobi sum",
          group="pbar", default_prec=80)
def _mt1_fgf(order, p):
    n = _n(order)
    pre1 = pochhammer_quotient([Q], [M(-1, 1)], order) * pochhammer_quotient([Q], [M(-1, 1)], order, 2)
    rhs = pre1 * first_sum(order) * Fraction(-1, 2) + pochhammer_quotient([M(-1, 1)], [Q], order) * jacobi_sum(order)
    return gf_pbar_omega(n), rhs.truncate(order)


@register("gf_repre", "p̄_ω generating function as a single product times a 4phi3-type sum",
          group="pbar", default_prec=120)
def _gf_repre(order, p):
    n = _n(order)
    return gf_pbar_omega(n), gf_repre(n)


@register("congmod4", "the little q-Jacobi term is 1/(2q) - 1/2 modulo 4",
          modulus=4, group="pbar", default_prec=120)
def _congmod4(order, p):
    X = jacobi_term(order)
    target = QSeries.monomial(Fraction(1, 2), -1, 1, _n(order)) - Fraction(1, 2)
    return X, target


def _x_sum(order) -> QSeries:
    """sum_{n >= 1} (-1)^n q^(n^2)."""
    return quadratic_sum(lambda k: _sign(k), lambda k: k * k, order, bilateral=False) - 1


@register("congmod4_b", "reduced form of the Jacobi-term congruence", modulus=4, group="pbar", default_prec=120)
def _congmod4_b(order, p):
    N = _n(order) + 2

    def step(n, t):
        # ratio of (-q;q^2)_{n+1} (q)_n^2 q^n / (q^2;q)_{2n+1}
        t = t.mul_one_minus(M(-1, 2 * n + 3)).mul_one_minus(M(1, n + 1)).mul_one_minus(M(1, n + 1))
        t = t.div_one_minus(M(1, 2 * n + 3)).div_one_minus(M(1, 2 * n + 4))
        return t.shift(Q)
    first = QSeries.one(N).mul_one_minus(M(-1, 1)).div_one_minus(M(1, 2))
    lhs = term_sum(step, N) * first * 2
    x = _x_sum(N)
    rhs = ((x + x * x) * -2).mul_one_minus(Q).shift(M(1, -1))
    return lhs.truncate(order), rhs.truncate(order)


@register("congmod4_c", "odd-divisor form of the reduced congruence, modulo 2", modulus=2, group="pbar",
          default_prec=200)
def _congmod4_c(order, p):
    N = _n(order)

    def step(n, t):
        # (q^3;q^2)_n (q^2;q^2)_n q^n / ((q^2;q^2)_{n+1} (q^3;q^2)_n), kept uncancelled
        t = t.mul_one_minus(M(1, 2 * n + 3)).mul_one_minus(M(1, 2 * n + 2))
        t = t.div_one_minus(M(1, 2 * n + 4)).div_one_minus(M(1, 2 * n + 3))
        return t.shift(Q)
    lhs = (term_sum(step, N) * QSeries.one(N).div_one_minus(M(1, 2))).shift(Q).truncate(N)
    x = _x_sum(N)
    pos = _squares(N)
    return [("printed sum", lhs, -(x + x * x)),
            ("a(N) parity", pos + pos * pos, _odd_divisor_series(N))]


def _squares(order) -> QSeries:
    """sum_{n >= 1} q^(n^2)."""
    return quadratic_sum(lambda k: 1, lambda k: k * k, order, bilateral=False) - 1


def _odd_divisor_series(N) -> QSeries:
    from ..partitions import odd_divisor_count
    return QSeries.from_terms([(k, odd_divisor_count(k)) for k in range(1, N)], N)


@register("odd_divisor_lambert", "sum q^(n+1)/(1-q^(2n+2)) counts odd divisors", group="pbar", default_prec=200)
def _odd_divisor_lambert(order, p):
    N = _n(order)
    return lambert_series(lambda n: 1, lambda n: (n, 2 * n), N), _odd_divisor_series(N)


@register("two_positive_squares", "representations by two positive squares against d1 - d3", group="pbar",
          default_prec=200)
def _two_positive_squares(order, p):
    from ..partitions import jacobi_d1_minus_d3
    N = _n(order)
    pos = _squares(N)
    # ordered pairs of positive squares, plus one for each square N (the pair with a zero)
    lhs = pos * pos + pos
    return lhs, QSeries.from_terms([(k, jacobi_d1_minus_d3(k)) for k in range(1, N)], N)


# ---------------------------------------------------------------------------
# S(q), A(q) and the mod 4 chain


def _theta_even_alt(order) -> QSeries:
    """sum_{n >= 1} (-1)^n q^(2n^2)."""
    return quadratic_sum(lambda k: _sign(k), lambda k: 2 * k * k, order, bilateral=False) - 1


@register("S_identity", "S(q) as a theta series plus A(q)", group="pbar", default_prec=120)
def _S_identity(order, p):
    n = _n(order)
    return gf_S(n), -_theta_even_alt(n) + gf_A(n)


def bilateral_A(order) -> QSeries:
    """sum over all integers k of q^k (q;q^2)_k / ((-q;q^2)_k (1 + q^(2k)))."""
    N = _n(order) + 4
    b2 = M(1, 2)
    total = QSeries.constant(Fraction(1, 2), N)
    # positive and negative k from running products
    pos = QSeries.one(N)
    k = 0
    while k + 1 < N:
        pos = pos.mul_one_minus(M(1, 2 * k + 1)).div_one_minus(M(-1, 2 * k + 1)).shift(Q)
        k += 1
        total = total + pos.div_one_minus(M(-1, 2 * k)).truncate(N)
    k = 1
    while k < N:
        r = pochhammer_ratio([Q], [M(-1, 1)], -k, N + 3 * k, b2)
        term = r.shift(M(1, -k)).div_one_minus(M(-1, -2 * k)).truncate(N)
        total = total + term
        k += 1
    return total.truncate(order)


@register("A_bilateral", "the A(q) sum over all integers is 1/2 + A(q) + A(-q)", group="pbar", default_prec=80)
def _A_bilateral(order, p):
    n = _n(order)
    A = gf_A(n)
    neg = QSeries.zero(n)
    t = QSeries.one(n)
    k = 0
    while k + 1 < n:
        t = t.mul_one_minus(M(-1, 2 * k + 1)).div_one_minus(M(1, 2 * k + 1)).shift(M(-1, 1))
        k += 1
        neg = neg + t.div_one_minus(M(-1, 2 * k)).truncate(n)
    return [("bilateral", bilateral_A(order), _half(Fraction(1, 2), n) + A + A.substitute(-1)),
            ("negative indices", neg, A.substitute(-1))]


def _phi_minus_sq2(order) -> QSeries:
    """(q^2;q^2)^2 / (-q^2;q^2)^2."""
    b2 = M(1, 2)
    return pochhammer_quotient([b2, b2], [M(-1, 2), M(-1, 2)], order, 2)


@register("A_even", "A(q) + A(-q) as a product", group="pbar", default_prec=120)
def _A_even(order, p):
    n = _n(order)
    A = gf_A(n)
    return A + A.substitute(-1), _phi_minus_sq2(n) * Fraction(1, 2) - Fraction(1, 2)


def fine_product(order) -> QSeries:
    """q (q^8;q^8)^4 / (q^4;q^4)^2."""
    N = _n(order)
    return (euler(8, N) ** 4 / euler(4, N) ** 2).shift(Q).truncate(N)


def odd_reciprocal_sum(order) -> QSeries:
    """sum_{k >= 1} q^(2k-1) / (1 + q^(4k-2)), expanded directly."""
    N = _n(order)
    terms = []
    k = 1
    while 2 * k - 1 < N:
        a, b = 2 * k - 1, 4 * k - 2
        j = 0
        while a + j * b < N:
            terms.append((a + j * b, (-1) ** j))
            j += 1
        k += 1
    return QSeries.from_terms(terms, N)


@register("A_odd_mod4", "half the odd part of A(q) modulo 4", modulus=4, group="pbar", default_prec=120)
def _A_odd_mod4(order, p):
    n = _n(order)
    A = gf_A(n)
    return (A - A.substitute(-1)) * Fraction(1, 2), fine_product(n)


@register("fine_3226", "odd reciprocal Lambert series as an eta quotient", group="pbar", default_prec=200)
def _fine_3226(order, p):
    return odd_reciprocal_sum(order), fine_product(order)


@register("alladi", "finite expansion of (q;q^2)_k/(-q;q^2)_k", params={"k_max": 8}, group="pbar",
          default_prec=60)
def _alladi(order, p):
    out = []
    N = _n(order)
    for k in range(p["k_max"] + 1):
        lhs = pochhammer_ratio([Q], [M(-1, 1)], k, N, M(1, 2))
        rhs = QSeries.one(N)
        for j in range(1, k + 1):
            t = pochhammer_ratio([Q], [M(-1, 1)], j - 1, N, M(1, 2)).div_one_minus(M(-1, 2 * j - 1))
            rhs = rhs - t.shift(M(2, 2 * j - 1))
        out.append((f"k={k}", lhs, rhs.truncate(N)))
    return out


def _recip_plus(order, k) -> QSeries:
    """q^k / (1 + q^(2k))."""
    return QSeries.monomial(1, k, 1, _n(order)).div_one_minus(M(-1, 2 * k))


def _nested_sum(order) -> QSeries:
    """sum_k q^k/(1+q^(2k)) sum_{j <= k} q^(2j-1)/(1+q^(2j-1))."""
    N = _n(order)
    total = QSeries.zero(N)
    inner = QSeries.zero(N)
    k = 1
    while k < N:
        inner = inner + QSeries.monomial(1, 2 * k - 1, 1, N).div_one_minus(M(-1, 2 * k - 1))
        total = total + (_recip_plus(N, k) * inner).truncate(N)
        k += 1
    return total


def _lambert_sq(order, num, den) -> QSeries:
    return lambert_series(lambda k: 1, lambda k: (num(k), den(k)), order, power=2)


@register("A_alladi_mod4", "A(q) after the finite expansion, modulo 4", modulus=4, group="pbar", default_prec=100)
def _A_alladi_mod4(order, p):
    n = _n(order)
    plain = QSeries.zero(n)
    for k in range(1, n):
        plain = plain + _recip_plus(n, k)
    return gf_A(n), plain + 2 * _nested_sum(n)


@register("A_nested_mod2", "the nested reciprocal sum modulo 2", modulus=2, group="pbar", default_prec=100)
def _A_nested_mod2(order, p):
    n = _n(order)
    rhs = _lambert_sq(n, lambda k: 2 * k, lambda k: 2 * k) + _lambert_sq(n, lambda k: 2 * k * k + 2 * k, lambda k: 2 * k)
    return _nested_sum(n), rhs


@register("A_mod4", "A(q) modulo 4 through two-dimensional theta series", modulus=4, group="pbar",
          default_prec=120)
def _A_mod4(order, p):
    n = _n(order)
    phi_m = quadratic_sum(lambda k: _sign(k), lambda k: 2 * k * k, n)
    psi_ = quadratic_sum(lambda k: 1, lambda k: 2 * k * (k + 1), n, bilateral=False)
    rhs = (phi_m * phi_m - 1) * Fraction(1, 4) + (psi_ * psi_).shift(Q).truncate(n)
    return gf_A(n), rhs


def _flip_sum(order) -> QSeries:
    """The p̄_ω sum with every (1+x)/(1-x) factor flipped."""
    def update(P, n):
        P = _g(P, n + 1, inverse=True) if n + 1 < order else P
        return _g(P, 2 * n + 1) if 2 * n + 1 < order else P
    return _smallest_part_sum(order, update, 1, lambda n: n, sign=1)


def _twice_squares(order) -> QSeries:
    """2 sum_{n >= 1} q^(2n^2)."""
    return (quadratic_sum(lambda k: 1, lambda k: 2 * k * k, order, bilateral=False) - 1) * 2


@register("pbar_omega_flip_mod4", "flipping (1+x)/(1-x) factors in the p̄_ω sum, modulo 4",
          modulus=4, group="pbar", default_prec=120)
def _flip_mod4(order, p):
    n = _n(order)
    return gf_pbar_omega(n), _flip_sum(n)


@register("flip_to_S_mod4", "the flipped sum is S(q) plus twice the even squares, modulo 4",
          modulus=4, group="pbar", default_prec=120)
def _flip_to_S(order, p):
    n = _n(order)
    return _flip_sum(n), gf_S(n) + _twice_squares(n)


@register("thm4_4", "p̄_ω generating function is S(q) plus twice the even squares, modulo 4",
          modulus=4, group="pbar", default_prec=200)
def _thm4_4(order, p):
    n = _n(order)
    return gf_pbar_omega(n), gf_S(n) + _twice_squares(n)


@register("clausen", "divisor-count series as a sum over squares", group="pbar", default_prec=200)
def _clausen(order, p):
    n = _n(order)
    lhs = lambert_series(lambda k: 1, lambda k: (k, k), n)
    rhs = QSeries.zero(n)
    k = 1
    while k * k < n:
        rhs = rhs + QSeries.monomial(1, k * k, 1, n).mul_one_minus(M(-1, k)).div_one_minus(M(1, k))
        k += 1
    return lhs, rhs


@register("eq44", "divisor-count series is the sum of squares modulo 2", modulus=2, group="pbar",
          default_prec=200)
def _eq44(order, p):
    n = _n(order)
    return lambert_series(lambda k: 1, lambda k: (k, k), n), _squares(n)


@register("conj_mod4", "p̄_ω modulo 4 through two-dimensional theta series", modulus=4, group="pbar",
          default_prec=200)
def _conj_mod4(order, p):
    n = _n(order)
    half = quadratic_sum(lambda k: _sign(k), lambda k: 2 * k * k, n, bilateral=False)
    psi_ = quadratic_sum(lambda k: 1, lambda k: 2 * k * (k + 1), n, bilateral=False)
    rhs = half * half - 1 + (psi_ * psi_).shift(Q).truncate(n)
    return gf_pbar_omega(n), rhs


# ---------------------------------------------------------------------------
# the finite Gaussian-binomial evaluation


def andsim_sides(m: int, a, order) -> tuple[QSeries, QSeries]:
    """Both sides of the alternating Gaussian sum of (-a)_j (-a)_{m-j} at a rational a."""
    from ..qfunctions import gaussian_binomial
    a = Fraction(a)
    N = _n(order)
    lhs = QSeries.zero(N)
    for j in range(m + 1):
        t = gaussian_binomial(m, j, Q, N) * pochhammer(M(-a), j, N) * pochhammer(M(-a), m - j, N)
        lhs = lhs + (t if j % 2 == 0 else -t)
    if m % 2:
        return lhs.truncate(N), QSeries.zero(N)
    n = m // 2
    rhs = pochhammer(Q, n, N, M(1, 2)) * pochhammer(M(a * a), n, N, M(1, 2))
    return lhs.truncate(N), rhs.truncate(N)


@register("andsim", "alternating Gaussian sum of two Pochhammer symbols", params={"m_max": 6, "a": 2},
          group="pbar", default_prec=40)
def _andsim(order, p):
    return [(f"m={m}",) + andsim_sides(m, p["a"], order) for m in range(1, p["m_max"] + 1)]


def verify_andsim_by_interpolation(m_max: int = 6, prec: int = 40) -> VerificationReport:
    """Check the evaluation at m + 1 rational points for every m <= m_max.

    Both sides are polynomials of degree at most m in a, so agreement at m + 1
    points gives agreement for every a, complex values included.
    """
    from .core import compare
    if m_max < 2:
        raise ValueError("m_max must be at least 2")
    start = time.perf_counter()
    points = 0
    for m in range(1, m_max + 1):
        for i in range(m + 1):
            a = Fraction(i + 1, 1 + i % 2)
            lhs, rhs = andsim_sides(m, a, prec)
            bad = compare(lhs, rhs, prec)
            points += 1
            if bad is not None:
                x, l, r, reason = bad
                return VerificationReport("andsim", prec, FAIL, x, l, r, trials=points,
                                          elapsed_ms=(time.perf_counter() - start) * 1000,
                                          detail=f"{reason} at m={m}, a={a}")
    return VerificationReport("andsim", prec, PASS, trials=points,
                              elapsed_ms=(time.perf_counter() - start) * 1000,
                              detail=f"degrees 1..{m_max}, {points} interpolation points")
