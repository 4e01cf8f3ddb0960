"""Rogers-Ramanujan continued fraction machinery behind the modulo 5 congruence.

Throughout, ``r = r(q)``, ``R = r(q^2)`` and ``A5, B5`` are the fifth powers
of the quotients A(q), B(q) whose ratio is r(q).  Records live over q^(1/5).
"""

from __future__ import annotations

import time

from ..partitions import divisor_lambert, odd_weighted_lambert
from ..qfunctions import (
    euler,
    lambert_series,
    pochhammer_inf,
    pochhammer_quotient,
    qpoch_residues,
    quadratic_sum,
    rr_objects,
    scaled,
)
from ..series import Monomial, Q, QSeries
from .core import FAIL, PASS, VerificationReport, check_pairs, lookup, register

M = Monomial
FIFTH = M(1, 1, 5)


def _n(order) -> int:
    return scaled(order, 1)


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


def _rr(order):
    o = rr_objects(order)
    return o["r"], o["r2"], o["A5"], o["B5"], o["A5_fifth"]


def _euler_fifth(n, k=1) -> QSeries:
    """(q^(k/5); q^(k/5))_oo to q-order n."""
    return pochhammer_inf(M(1, k, 5), n, M(1, k, 5))


def E2(order) -> QSeries:
    """E2(q) = (-q;q)/(q;q) * sum (2n-1) q^(2n-1)/(1-q^(2n-1))."""
    return pochhammer_quotient([M(-1, 1)], [Q], order) * odd_weighted_lambert(order)


CHI5 = {0: 0, 1: 1, 2: -3, 3: 3, 4: -1}


# ---------------------------------------------------------------------------
# the lemma


def lemma_rhs(n) -> QSeries:
    r, R, _, _, _ = _rr(n)
    pref = (euler(1, n) ** 2 * euler(10, n) / (qpoch_residues([2, 3], 5, n, 5) * euler(5, n) ** 2)).shift(Q)
    ri = r.invert()
    return pref * (R * ri * ri + ri * ri / R + 3 * ri ** 3 + R * ri ** 3)


@register("mod5_lemma", "E2(q^(1/5)) modulo 5 through the continued fraction r(q)", scale=5, modulus=5,
          group="mod5", default_prec=250)
def _mod5_lemma(order, p):
    n = _n(order)
    return E2(5 * n).substitute(1, 1, 5), lemma_rhs(n + 1).truncate(n)


@register("E2_dissection", "E2 from the even part of the c_n series; its 5n+3 coefficients vanish mod 5",
          modulus=5, group="mod5", default_prec=250)
def _E2_dissection(order, p):
    from ..partitions import gf_s22
    n = _n(order)
    e = E2(n)
    even = gf_s22(2 * n).dissect(0, 2)
    return [("even part is 3 E2(q^2)", even.substitute(1, 1, 2).truncate(n), 3 * e),
            ("5n+3 coefficients", e.dissect(3, 5), QSeries.zero(n))]


@register("E2_chain", "E2(q^(1/5)) through divisor Lambert series and A(q^(1/5))^5", scale=5, modulus=5,
          group="mod5", default_prec=250)
def _E2_chain(order, p):
    n = _n(order)
    _, _, _, _, A5f = _rr(n)
    P1, P2 = _euler_fifth(n), _euler_fifth(n, 2)
    lam = divisor_lambert(5 * n).substitute(1, 1, 5)
    lam2 = divisor_lambert(5 * n, 2).substitute(1, 1, 5)
    first = P2 / P1 ** 2 * (lam - 2 * lam2)
    big = P2 * P1 ** 3 / euler(1, n)
    A5f2 = _rr(2 * n)[4].substitute(1, 2, 1).truncate(n)
    lhs = E2(5 * n).substitute(1, 1, 5)
    return [("Lambert form", lhs, first),
            ("fifth-power reduction", lhs, big * (lam - 2 * lam2)),
            ("A form", lhs, big * (A5f - 2 * A5f2))]


@register("equ_rAB", "r(q)^5 is A5/B5", group="mod5", default_prec=100)
def _equ_rAB(order, p):
    r, _, A5, B5, _ = _rr(_n(order))
    return r ** 5, A5 / B5


@register("equ_ABqp", "A5 B5 as an eta quotient", group="mod5", default_prec=100)
def _equ_ABqp(order, p):
    n = _n(order)
    _, _, A5, B5, _ = _rr(n)
    return A5 * B5, (euler(5, n) ** 5 / euler(1, n)).shift(Q)


@register("equ_A5B5", "2 A5 + B5 is 1 modulo 5", modulus=5, group="mod5", default_prec=100)
def _equ_A5B5(order, p):
    n = _n(order)
    _, _, A5, B5, _ = _rr(n)
    integral = qpoch_residues([2, 3, 5], 5, n, 5) + 2 * qpoch_residues([1, 4, 5], 5, n, 5).shift(Q)
    thetas = (quadratic_sum(_sign, lambda k: 5 * k * (5 * k - 1) // 2, n)
              + 2 * quadratic_sum(_sign, lambda k: 5 * k * (5 * k - 3) // 2, n).shift(Q).truncate(n))
    jacobi = quadratic_sum(lambda k: (2 * k + 1) * _sign(k), lambda k: k * (k + 1) // 2, n, bilateral=False)
    return [("integral form", integral, euler(1, n) ** 3),
            ("theta form", thetas, jacobi),
            ("Jacobi cube", euler(1, n) ** 3, jacobi),
            ("direct", 2 * A5 + B5, QSeries.one(n))]


@register("equ_tim33", "A(q^(1/5))^5 as a quintic in r times B5", scale=5, group="mod5", default_prec=250)
def _equ_tim33(order, p):
    r, _, _, B5, A5f = _rr(_n(order))
    return A5f, B5 * r * (1 - 2 * r + 4 * r ** 2 - 3 * r ** 3 + r ** 4)


@register("equ_dis5", "A(q^(1/5))^5 is r/(1+2r) modulo 5", scale=5, modulus=5, group="mod5",
          default_prec=250)
def _equ_dis5(order, p):
    r, _, _, _, A5f = _rr(_n(order))
    return A5f, r / (1 + 2 * r)


@register("equ_recip", "5-dissection of (q^(1/5);q^(1/5))", scale=5, group="mod5", default_prec=250)
def _equ_recip(order, p):
    n = _n(order)
    r = _rr(n + 1)[0]
    return _euler_fifth(n), (euler(5, n + 1) * (r.invert() - r - 1)).shift(FIFTH).truncate(n)


@register("equ_eisen1", "A5 as a character-weighted Lambert series", group="mod5", default_prec=100)
def _equ_eisen1(order, p):
    n = _n(order)
    return _rr(n)[2], lambert_series(lambda k: CHI5[k % 5], lambda k: (k, k), n)


@register("divisor_lambert_mod5", "the divisor Lambert series is A5 modulo 5", modulus=5, group="mod5",
          default_prec=100)
def _divisor_lambert_mod5(order, p):
    n = _n(order)
    return divisor_lambert(n), _rr(n)[2]


# ---------------------------------------------------------------------------
# the k-parameterization and the odd Lambert identity


def _k(r, R) -> QSeries:
    return r * R * R


@register("remark_k_param", "fifth powers of r(q) and r(q^2) through k = r(q) r(q^2)^2", scale=5,
          group="mod5", default_prec=200)
def _remark_k_param(order, p):
    r, R, _, _, _ = _rr(_n(order))
    k = _k(r, R)
    return [("r^5", r ** 5, k * ((1 - k) / (1 + k)) ** 2),
            ("R^5", R ** 5, k * k * (1 + k) / (1 - k))]


@register("k_param_as_printed", "r(q^2)^5 with the printed factor (1-k)/(1+k)", scale=5,
          group="mod5", default_prec=200, known_false=True)
def _k_param_printed(order, p):
    r, R, _, _, _ = _rr(_n(order))
    k = _k(r, R)
    return R ** 5, k * k * (1 - k) / (1 + k)


def _dissection_rhs(n) -> QSeries:
    r, R, _, B5, _ = _rr(n)
    k = _k(r, R)
    base = (R * B5 * B5.substitute(1, 2, 1).truncate(n) / euler(10, n)).shift(M(1, -2, 5))
    return base * (2 + k) ** 3 / (1 + k) ** 2 * (4 * k + 2 * r * (1 + k) + R)


@register("divisor_dissection5", "5-dissection of the divisor Lambert series over (q^(2/5);q^(2/5))",
          scale=5, modulus=5, group="mod5", default_prec=200)
def _divisor_dissection5(order, p):
    n = _n(order)
    lhs = divisor_lambert(5 * n).substitute(1, 1, 5) / _euler_fifth(n, 2)
    return lhs, _dissection_rhs(n + 1).truncate(n)


@register("divisor_dissection5_as_printed", "5-dissection with the printed (q^(1/5);q^(1/5)) denominator",
          scale=5, modulus=5, group="mod5", default_prec=200, known_false=True)
def _divisor_dissection5_printed(order, p):
    n = _n(order)
    lhs = divisor_lambert(5 * n).substitute(1, 1, 5) / _euler_fifth(n)
    return lhs, _dissection_rhs(n + 1).truncate(n)


def _odd_lambert_rhs(n) -> QSeries:
    return (euler(4, n) ** 8 / euler(2, n) ** 4).shift(Q).truncate(n)


@register("ady1_fix", "sum (2n+1) q^(2n+1)/(1-q^(4n+2)) as an eta quotient", group="mod5", default_prec=100)
def _ady1_fix(order, p):
    n = _n(order)
    return lambert_series(lambda k: 2 * k + 1, lambda k: (2 * k + 1, 4 * k + 2), n, start=0), _odd_lambert_rhs(n)


@register("ady1_original", "sum (2n+1) q^(2n+1)/(1-q^(2n+1)) against the same eta quotient",
          group="mod5", default_prec=100, known_false=True)
def _ady1_original(order, p):
    n = _n(order)
    return lambert_series(lambda k: 2 * k + 1, lambda k: (2 * k + 1, 2 * k + 1), n, start=0), _odd_lambert_rhs(n)


# ---------------------------------------------------------------------------
# grouped verifiers


def _verify_group(name: str, ids, prec: int | None) -> VerificationReport:
    start = time.perf_counter()
    checked = []
    for id_ in ids:
        record = lookup(id_)
        p = record.default_prec if prec is None else prec
        if record.scale == 1 and prec is not None:
            p = max(2, prec // 5)
        bad = check_pairs(record, p, record.pairs(p))
        checked.append(id_)
        if bad is not None:
            x, a, b, reason = bad
            return VerificationReport(name, p, FAIL, x, a, b, elapsed_ms=(time.perf_counter() - start) * 1000,
                                      detail=f"{id_}: {reason}")
    return VerificationReport(name, prec or 250, PASS, elapsed_ms=(time.perf_counter() - start) * 1000,
                              detail="checked " + ", ".join(checked))


MOD5_PARTS = ("equ_rAB", "equ_ABqp", "equ_A5B5", "equ_tim33", "equ_dis5", "equ_recip", "equ_eisen1",
              "divisor_lambert_mod5", "E2_dissection", "E2_chain", "mod5_lemma")
K_PARAM_PARTS = ("remark_k_param", "divisor_dissection5", "ady1_fix")


def verify_mod5_lemma(prec: int = 250) -> VerificationReport:
    """The mod 5 lemma with its supporting identities; ``prec`` is scaled by 5."""
    if prec < 50:
        raise ValueError("prec must be at least 50 (in units of q^(1/5))")
    return _verify_group("mod5_lemma", MOD5_PARTS, prec)


def verify_remark_k_param(prec: int = 200) -> VerificationReport:
    """The k-parameterization, the divisor-series dissection and the corrected odd Lambert identity."""
    return _verify_group("remark_k_param", K_PARAM_PARTS, prec)


__all__ = ["E2", "lemma_rhs", "verify_mod5_lemma", "verify_remark_k_param"]
