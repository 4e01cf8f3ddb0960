"""Classical transformations and the seven-parameter three-term expansions.

The multi-parameter identities take monomial parameters ``c * q**k``.  The
right-hand sides are summed term by term from their displayed forms; no
side is derived from the other.
"""

from __future__ import annotations

import random
import time
from fractions import Fraction
from typing import Mapping

from ..errors import DivisionByZeroFactor, NonConvergentSum
from ..qfunctions import (
    as_param,
    over_one_minus,
    phi_series,
    pochhammer_quotient,
    pochhammer_ratio,
    psi_bilateral,
    scaled,
    term_sum,
    times_difference,
    times_one_minus,
)
from ..series import Monomial, Q, QSeries
from .core import FAIL, PASS, Specialization, VerificationReport, register, side_condition

M = Monomial

# ---------------------------------------------------------------------------
# helpers


def _mono(x) -> Monomial:
    x = as_param(x)
    if not isinstance(x, Monomial):
        raise TypeError("parameters must be monomials c*q^k")
    return x


def _q_power_at_most_zero(x: Monomial) -> bool:
    """True when ``x = q**(-j)`` for some integer ``j >= 0``."""
    return x.coeff == 1 and x.exponent.denominator == 1 and x.exponent <= 0


def _with_padding(compute, order, first_pad: int = 8, tries: int = 5) -> QSeries:
    """Run ``compute(work)`` at growing working orders until the result reaches ``order``."""
    order = Fraction(order)
    pad = Fraction(first_pad)
    for _ in range(tries):
        res = compute(order + pad)
        if res.order >= order:
            return res.truncate(order)
        pad *= 2
    raise NonConvergentSum(f"could not reach order {order}")


def _quiet(term: QSeries, work) -> bool:
    return term.is_zero or term.valuation >= work


def _series_sum(step, order, scale=1, stall=20):
    return term_sum(step, order, scale, stall_limit=stall)


# ---------------------------------------------------------------------------
# q-binomial theorem and Heine


@register("qbin", "q-binomial theorem", params={"a": M(1, 3), "z": M(1, 2)}, group="transforms")
def _qbin(order, p):
    a, z = _mono(p["a"]), _mono(p["z"])
    if z.coeff == 0:
        one = QSeries.one(scaled(order, 1))
        return one, one
    lhs = phi_series([a], [], z, order)
    rhs = pochhammer_quotient([a * z], [z], order)
    return lhs, rhs


@register("heine", "Heine transformation of a 2phi1",
          params={"a": Q, "b": M(1, 2), "c": M(1, 3), "z": Q}, group="transforms")
def _heine(order, p):
    a, b, c, z = (_mono(p[k]) for k in "abcz")
    lhs = phi_series([a, b], [c], z, order)
    rhs = pochhammer_quotient([b, a * z], [c, z], order) * phi_series([c / b, z], [a * z], b, order)
    return lhs, rhs


# ---------------------------------------------------------------------------
# Agarwal's expansions


def _phi21_tail(alpha, beta, t, order) -> QSeries:
    """``2phi1(q, q/t; beta q/(alpha t); q, q/alpha)``."""
    return phi_series([Q, Q / t], [beta * Q / (alpha * t)], Q / alpha, order)


@register("agarwal_2phi1", "two-term expansion of a 2phi1 with argument t",
          params={"alpha": M(2), "beta": M(-1, 1), "t": Q}, group="transforms")
def _agarwal_2phi1(order, p):
    al, be, t = _mono(p["alpha"]), _mono(p["beta"]), _mono(p["t"])
    lhs = _series_sum(lambda n, s: times_one_minus(over_one_minus(s, be * Q ** n), al * Q ** n) * t, order)
    first = pochhammer_quotient([be / al, Q, al * t, Q / (al * t)], [Q / al, be, t, be / (al * t)], order)
    second = (_phi21_tail(al, be, t, order + 4).mul_one_minus(Q / be).div_one_minus(al * t / be))
    return lhs, (first + second).truncate(order)


def _lhs_ratio_sum(upper, lower, t, order) -> QSeries:
    def step(n, s):
        for x in upper:
            s = times_one_minus(s, x * Q ** n)
        for x in lower:
            s = over_one_minus(s, x * Q ** n)
        return s * t
    return _series_sum(step, order, 1, stall=40)


def agarwal_me_rhs(al, be, ga, de, t, order) -> QSeries:
    """Right side of Agarwal's three-term expansion of sum (al, ga)_n/(be, de)_n t^n."""
    qb = Q / be
    atb = al * t / be

    def compute(work):
        pre1 = pochhammer_quotient([Q / (al * t), ga, al * t, be / al, Q], [be / (al * t), de, t, Q / al, be], work)

        def step(n, s):
            s = times_difference(s, ga, de * Q ** n)  # gamma^n (de/ga)_n
            s = times_one_minus(s, t * Q ** n)
            s = over_one_minus(s, Q ** (n + 1))
            s = over_one_minus(s, Q * atb * Q ** n)
            return s * qb
        phi_a = term_sum(step, work, 1, stall_limit=40)
        T1 = pre1 * phi_a
        pre = pochhammer_quotient([ga], [de], work).mul_one_minus(qb)
        # second block: sum_m (de/ga)_m (t)_m/((q)_m (atb)_{m+1}) (q ga/be)^m, times (2phi1 - 1)
        s = QSeries.one(scaled(work, 1)).div_one_minus(atb)
        total = s
        quiet = 0
        m = 0
        while quiet < 5:
            s = times_difference(s, ga, de * Q ** m)
            s = times_one_minus(s, t * Q ** m)
            s = over_one_minus(s, Q ** (m + 1))
            s = over_one_minus(s, atb * Q ** (m + 1)) * qb
            m += 1
            total = total + s
            quiet = quiet + 1 if _quiet(s, work) else 0
        T2 = pre * total * (_phi21_tail(al, be, t, work) - 1)
        # third block: sum_p ga^p (de/ga)_p/(q)_p sum_m (de q^p/ga)_m (t q^p)_m/((q^{1+p})_m (atb q^p)_{m+1}) (q ga/be)^m
        outer = QSeries.one(scaled(work, 1))
        total3 = QSeries.zero(scaled(work, 1))
        p = 0
        quiet_p = 0
        while quiet_p < 5:
            s = outer.div_one_minus(atb * Q ** p)
            inner = s
            quiet = 0
            m = 0
            while quiet < 5:
                s = times_difference(s, ga, de * Q ** (p + m))
                s = times_one_minus(s, t * Q ** (p + m))
                s = over_one_minus(s, Q ** (1 + p + m))
                s = over_one_minus(s, atb * Q ** (p + m + 1)) * qb
                m += 1
                inner = inner + s
                quiet = quiet + 1 if _quiet(s, work) else 0
            total3 = total3 + inner
            quiet_p = quiet_p + 1 if _quiet(inner, work) else 0
            outer = over_one_minus(times_difference(outer, ga, de * Q ** p), Q ** (p + 1))
            p += 1
        T3 = pre * total3
        return T1 + T2 + T3

    return _with_padding(compute, order)


def _check_agarwal(p):
    for name in ("beta", "delta", "t"):
        side_condition(not _q_power_at_most_zero(_mono(p[name])), f"{name} may not be q^-j with j >= 0")
    _check_denominators(p)


@register("agarwal_me", "Agarwal three-term expansion of a two-over-two series",
          params={"alpha": M(2), "beta": M(-1, 1), "gamma": M(Fraction(1, 2), 1), "delta": M(3, 2), "t": Q},
          check_params=_check_agarwal, group="transforms", default_prec=40)
def _agarwal_me(order, p):
    al, be, ga, de, t = (_mono(p[k]) for k in ("alpha", "beta", "gamma", "delta", "t"))
    lhs = _lhs_ratio_sum([al, ga], [be, de], t, order)
    return lhs, agarwal_me_rhs(al, be, ga, de, t, order)


# ---------------------------------------------------------------------------
# the seven-parameter expansions

PARAMS = ("alpha", "beta", "gamma", "delta", "eps", "f", "t")


def _vals(p: Mapping):
    return tuple(_mono(p[k]) for k in PARAMS)


def _check_denominators(p: Mapping):
    al, be, t = _mono(p["alpha"]), _mono(p["beta"]), _mono(p["t"])
    side_condition(al.coeff != 0 and be.coeff != 0 and t.coeff != 0, "alpha, beta and t must be nonzero")
    for label, x in (("alpha t/beta", al * t / be), ("beta/(alpha t)", be / (al * t)),
                     ("alpha t q/beta", al * t * Q / be), ("beta q/(alpha t)", be * Q / (al * t)),
                     ("q/alpha", Q / al)):
        side_condition(not _q_power_at_most_zero(x), f"{label} = q^-j makes a denominator vanish")
    side_condition(t.exponent > 0, "t needs a positive exponent for the sums to converge formally")
    side_condition(al.exponent < 1, "q/alpha needs a positive exponent for the 2phi1 to converge formally")
    side_condition(be.exponent > 0, "beta needs a positive exponent")
    ga = _mono(p["gamma"])
    side_condition(ga.coeff == 0 or ga.exponent >= be.exponent,
                   "gamma needs an exponent at least that of beta")
    if "eps" in p:
        e = _mono(p["eps"])
        side_condition(e.coeff == 0 or e.exponent >= be.exponent,
                       "eps needs an exponent at least that of beta")


def check_seven(p: Mapping):
    """Side conditions of the seven-parameter identities."""
    missing = [k for k in PARAMS if k not in p]
    if missing:
        raise KeyError(f"missing parameters {missing}")
    for name in ("beta", "delta", "f", "t"):
        side_condition(not _q_power_at_most_zero(_mono(p[name])), f"{name} may not be q^-j with j >= 0")
    _check_denominators(p)


def seven_lhs(al, be, ga, de, ep, f, t, order) -> QSeries:
    return _lhs_ratio_sum([al, ga, ep], [be, de, f], t, order)


def _leading_blocks(al, be, ga, de, ep, f, t, work):
    """The 3phi2 block and the 2phi1-correction block shared by both expansions."""
    qb = Q / be
    phi32 = phi_series([al * qb, ga * qb, ep * qb], [de * qb, f * qb], t, work)
    T1 = pochhammer_quotient([ep, ga, be / al, Q, al * t, Q / (al * t), de * qb, f * qb],
                             [f, de, Q / al, be, be / (al * t), al * t * qb, ga * qb, ep * qb], work) * phi32
    T2 = (pochhammer_quotient([ep, ga, t, de * qb, f * qb], [f, de, al * t / be, ga * qb, ep * qb], work)
          * phi32 * (_phi21_tail(al, be, t, work) - 1)).mul_one_minus(qb)
    return T1, T2


def _extvar_triple(al, be, ga, de, ep, f, t, work) -> QSeries:
    """sum_n (t)_n/((q)_n (atb)_{n+1}) (q/be)^n sum_{p<=n} (atb)_p/(t)_p (be/q)^p sum_m [n,m] (f/ep)_m ep^m (de/ga)_{n-m} ga^(n-m).

    With P_m = (f/ep)_m ep^m/(q)_m and R_j = (de/ga)_j ga^j/(q)_j the Gaussian
    sum is (q)_n sum_m P_m R_{n-m}.  The factor (q/be)^n is split as
    c^n q^(s n) with s = 1 - k_beta.  Writing q^(s (n - p)) = q^(s n) q^(-s p),
    the q^(s n) is spread over P and R and the q^(-s p) kept in J, so no
    stored series has a large negative valuation.
    """
    atb = al * t / be
    s = 1 - be.exponent
    sq = M(1, s.numerator, s.denominator)
    inv_c = M(Fraction(1) / be.coeff)
    W = scaled(work, 1)
    one = QSeries.one(W)
    P = [one]      # P'_m = P_m q^(s m)
    R = [one]      # R'_j = R_j q^(s j)
    b = one.div_one_minus(atb)   # (t)_n / (atb)_{n+1}
    c = one                      # (atb)_p / (t)_p
    J = one                      # sum_{p<=n} c_p q^(s p) inv_c^(n-p)
    total = QSeries.zero(W)
    quiet = 0
    n = 0
    while quiet < 6:
        if n > 0:
            m = n - 1
            P.append(over_one_minus(times_difference(P[-1], ep, f * Q ** m), Q ** (m + 1)).shift(sq).truncate(work))
            R.append(over_one_minus(times_difference(R[-1], ga, de * Q ** m), Q ** (m + 1)).shift(sq).truncate(work))
            b = over_one_minus(times_one_minus(b, t * Q ** m), atb * Q ** n)
            c = over_one_minus(times_one_minus(c, atb * Q ** m), t * Q ** m)
            J = (J.shift(inv_c) + c.shift(M(1, -s.numerator * n, s.denominator))).truncate(work)
        lead = b * J
        H = QSeries.zero(W)
        for m in range(n + 1):
            x, y = P[m], R[n - m]
            if x.is_zero or y.is_zero:
                continue
            v = lead.valuation
            if v is None:
                break
            if x.valuation + y.valuation + v >= work:
                continue
            H = H + (x * y).truncate(work - v)
        term = (lead * H).truncate(work) if not H.is_zero else QSeries.zero(W)
        total = total + term
        quiet = quiet + 1 if _quiet(term, work) else 0
        n += 1
    return total


def extvar_rhs(al, be, ga, de, ep, f, t, order) -> QSeries:
    """Right side of the three-block expansion with the Gaussian triple sum."""
    qb = Q / be

    def compute(work):
        T1, T2 = _leading_blocks(al, be, ga, de, ep, f, t, work)
        pre = pochhammer_quotient([ep, ga], [f, de], work).mul_one_minus(qb)
        T3 = pre * _extvar_triple(al, be, ga, de, ep, f, t, work)
        return T1 + T2 + T3

    return _with_padding(compute, order)


def _ext_third(al, be, ga, de, ep, f, t, work) -> QSeries:
    """sum_p (de/ga)_p (atb)_p ga^p/((t)_p (q)_p) sum_k (de q^p/ga)_k (q ga/be)^k/(q^{1+p})_k 2phi1(al q/be, ep q/be; f q/be; t q^(k+p)).

    Terms are grouped by s = k + p so each 2phi1 is built and multiplied once.
    """
    qb = Q / be
    atb = al * t / be
    W = scaled(work, 1)
    one = QSeries.one(W)
    coeff: dict[int, QSeries] = {}
    outer = one
    p = 0
    quiet_p = 0
    while quiet_p < 6:
        r = outer
        quiet = 0
        k = 0
        row_live = False
        while quiet < 6:
            if not _quiet(r, work):
                coeff[p + k] = coeff[p + k] + r if (p + k) in coeff else r
                row_live = True
            r = over_one_minus(times_difference(r, ga, de * Q ** (p + k)), Q ** (1 + p + k)).shift(qb).truncate(work)
            quiet = quiet + 1 if _quiet(r, work) else 0
            k += 1
        quiet_p = 0 if row_live else quiet_p + 1
        outer = times_difference(outer, ga, de * Q ** p)
        outer = times_one_minus(outer, atb * Q ** p)
        outer = over_one_minus(over_one_minus(outer, t * Q ** p), Q ** (p + 1)).truncate(work)
        p += 1
    total = QSeries.zero(W)
    for s_, cs in sorted(coeff.items()):
        v = cs.valuation
        if v is None or v >= work:
            continue
        phi = phi_series([al * qb, ep * qb], [f * qb], t * Q ** s_, work - v)
        total = total + (cs * phi).truncate(work)
    return total


def _ext_fourth(al, be, ga, de, ep, f, t, work) -> QSeries:
    """sum_{p>=1} (f/ep)_p ep^p/(q)_p sum_k (de/ga)_k ga^k/(q)_k sum_m (f q^p/ep)_m (t q^(p+k))_m/((q^{1+p})_m (atb q^(p+k))_{m+1}) (ep q/be)^m."""
    qb = Q / be
    atb = al * t / be
    W = scaled(work, 1)
    total = QSeries.zero(W)
    A = QSeries.one(W)
    p = 0
    quiet_p = 0
    while quiet_p < 6:
        # A_p = (f/ep)_p ep^p/(q)_p, advanced before use since p starts at 1
        A = over_one_minus(times_difference(A, ep, f * Q ** p), Q ** (p + 1)).truncate(work)
        p += 1
        if _quiet(A, work):
            quiet_p += 1
            continue
        X = A
        block = QSeries.zero(W)
        k = 0
        quiet_k = 0
        while quiet_k < 6:
            u = p + k
            s = X.div_one_minus(atb * Q ** u)
            inner = s
            quiet = 0
            m = 0
            while quiet < 6:
                s = times_difference(s, ep, f * Q ** (p + m))
                s = times_one_minus(s, t * Q ** (u + m))
                s = over_one_minus(s, Q ** (1 + p + m))
                s = over_one_minus(s, atb * Q ** (u + m + 1)).shift(qb).truncate(work)
                m += 1
                inner = inner + s
                quiet = quiet + 1 if _quiet(s, work) else 0
            block = block + inner
            quiet_k = quiet_k + 1 if _quiet(inner, work) else 0
            X = over_one_minus(times_difference(X, ga, de * Q ** k), Q ** (k + 1)).truncate(work)
            k += 1
        total = total + block
        quiet_p = quiet_p + 1 if _quiet(block, work) else 0
    return total


def ext_rhs(al, be, ga, de, ep, f, t, order) -> QSeries:
    """Right side of the four-block expansion."""
    qb = Q / be
    atb = al * t / be

    def compute(work):
        T1, T2 = _leading_blocks(al, be, ga, de, ep, f, t, work)
        pre3 = pochhammer_quotient([ep, ga, t, f * qb], [f, de, atb, ep * qb], work).mul_one_minus(qb)
        T3 = pre3 * _ext_third(al, be, ga, de, ep, f, t, work)
        pre4 = pochhammer_quotient([ep, ga], [f, de], work).mul_one_minus(qb)
        T4 = pre4 * _ext_fourth(al, be, ga, de, ep, f, t, work)
        return T1 + T2 + T3 + T4

    return _with_padding(compute, order)


DEFAULT_SEVEN = {"alpha": M(-1), "beta": M(2, 1), "gamma": M(Fraction(1, 2), 1), "delta": M(3, 2),
                 "eps": M(-2, 2), "f": M(Fraction(-1, 3), 1), "t": M(2, 1)}


@register("extvar", "seven-parameter expansion with a Gaussian triple sum",
          params=DEFAULT_SEVEN, check_params=check_seven, group="transforms", default_prec=40)
def _extvar(order, p):
    vals = _vals(p)
    return seven_lhs(*vals, order), extvar_rhs(*vals, order)


@register("ext", "seven-parameter expansion in four blocks",
          params=DEFAULT_SEVEN, check_params=check_seven, group="transforms", default_prec=30)
def _ext(order, p):
    vals = _vals(p)
    return seven_lhs(*vals, order), ext_rhs(*vals, order)


@register("extvar_reduction", "vanishing eps and f turn the seven-parameter expansion into Agarwal's",
          params={k: v for k, v in DEFAULT_SEVEN.items() if k not in ("eps", "f")},
          check_params=_check_agarwal, group="transforms", default_prec=40)
def _extvar_reduction(order, p):
    al, be, ga, de, t = (_mono(p[k]) for k in ("alpha", "beta", "gamma", "delta", "t"))
    zero = M(0)
    return [("extvar", extvar_rhs(al, be, ga, de, zero, zero, t, order), agarwal_me_rhs(al, be, ga, de, t, order)),
            ("ext", ext_rhs(al, be, ga, de, zero, zero, t, order), agarwal_me_rhs(al, be, ga, de, t, order))]


# -- random specializations ---------------------------------------------------

COEFFS = (1, -1, 2, -2, Fraction(1, 2), Fraction(-1, 2), 3, -3, Fraction(1, 3), Fraction(-1, 3))
DEFAULT_SEED = 20240601


def draw_seven(rng: random.Random) -> dict:
    """One admissible specialization of the seven parameters.

    Exponents: beta in {1, 2}; gamma and eps at least beta's; delta, f, t in
    1..3; alpha in {0, -1} so that q/alpha has a positive exponent.
    """
    while True:
        ka = rng.choice([0, -1])
        kb = rng.choice([1, 1, 2])
        p = {
            "alpha": M(rng.choice([c for c in COEFFS if not (ka == 0 and c == 1)]), ka),
            "beta": M(rng.choice(COEFFS), kb),
            "gamma": M(rng.choice(COEFFS), rng.randint(kb, kb + 2)),
            "delta": M(rng.choice(COEFFS), rng.randint(1, 3)),
            "eps": M(rng.choice(COEFFS), rng.randint(kb, kb + 2)),
            "f": M(rng.choice(COEFFS), rng.randint(1, 3)),
            "t": M(rng.choice(COEFFS), rng.randint(1, 3)),
        }
        try:
            check_seven(p)
        except ValueError:
            continue
        return p


def _verify_seven(name, rhs_fn, trials, prec, seed, reduction=True) -> VerificationReport:
    from .core import compare
    if trials < 1:
        raise ValueError("trials must be at least 1")
    seed = DEFAULT_SEED if seed is None else seed
    rng = random.Random(seed)
    start = time.perf_counter()
    done = 0
    while done < trials:
        p = draw_seven(rng)
        vals = _vals(p)
        try:
            lhs = seven_lhs(*vals, prec)
            rhs = rhs_fn(*vals, prec)
        except DivisionByZeroFactor:
            continue
        spec = Specialization(p, seed)
        bad = compare(lhs, rhs, prec)
        if bad is None and reduction:
            zero = M(0)
            red = rhs_fn(vals[0], vals[1], vals[2], vals[3], zero, zero, vals[6], prec)
            ref = agarwal_me_rhs(vals[0], vals[1], vals[2], vals[3], vals[6], prec)
            bad = compare(red, ref, prec)
            if bad is not None:
                bad = bad[:3] + ("eps = f = 0 reduction disagrees with Agarwal's expansion",)
        if bad is not None:
            x, a, b, reason = bad
            return VerificationReport(name, prec, FAIL, x, a, b, trials=done + 1, seed=seed,
                                      elapsed_ms=(time.perf_counter() - start) * 1000,
                                      detail=f"{reason} at {spec}")
        done += 1
    return VerificationReport(name, prec, PASS, trials=trials, seed=seed,
                              elapsed_ms=(time.perf_counter() - start) * 1000,
                              detail="eps = f = 0 reduction checked at every point" if reduction else "")


def verify_extvar(trials: int = 20, prec: int = 60, seed: int | None = None, reduction: bool = True):
    """Seeded random specializations of the Gaussian-triple-sum expansion."""
    return _verify_seven("extvar", extvar_rhs, trials, prec, seed, reduction)


def verify_ext(trials: int = 10, prec: int = 50, seed: int | None = None, reduction: bool = True):
    """Seeded random specializations of the four-block expansion."""
    return _verify_seven("ext", ext_rhs, trials, prec, seed, reduction)


# ---------------------------------------------------------------------------
# bilateral sums


@register("ramanujan_1psi1", "bilateral 1psi1 summation in base q^4 at a=-q^-2, b=-q^2, z=q^2",
          group="transforms", default_prec=80)
def _ramanujan_1psi1(order, p):
    b4 = M(1, 4)
    a, b, z = M(-1, -2), M(-1, 2), M(1, 2)
    lhs = psi_bilateral([a], [b], z, order, b4)
    rhs = pochhammer_quotient([a * z, b4 / (a * z), b4, b / a], [z, b / (a * z), b, b4 / a], order, b4)
    odd = _odd_reciprocal_lambert(order + 2)
    link = (odd.shift(Q) + odd.shift(M(1, -1))) * 2
    return [("summation", lhs, rhs), ("odd Lambert form", lhs, link.truncate(order))]


def _odd_reciprocal_lambert(order) -> QSeries:
    """sum_{k >= 1} q^(2k-1) / (1 + q^(4k-2))."""
    from ..qfunctions import lambert_series
    return lambert_series(lambda n: 1, lambda n: (2 * n - 1, 4 * n - 2), order, power=1) \
        - 2 * lambert_series(lambda n: 1, lambda n: (6 * n - 3, 8 * n - 4), order)


@register("bailey_2psi2", "Bailey's 2psi2 transformation at base q^2, a=-1, c=q, d=1, e=q, f=-1",
          group="transforms", default_prec=80)
def _bailey_2psi2(order, p):
    b2 = M(1, 2)
    a, c, d, e, f = M(-1), Q, M(1), Q, M(-1)
    upper = [e, f]
    lower = [a * b2 / c, a * b2 / d]
    z = a * b2 / (e * f)
    lhs = psi_bilateral(upper, lower, z, order, b2)
    pre = pochhammer_quotient([b2 / c, b2 / d, a * b2 / e, a * b2 / f],
                              [a * b2, b2 / a, a * b2 / (c * d), a * b2 / (e * f)], order, b2)
    w = b2 * a ** 3 / (c * d * e * f)
    total = QSeries.zero(scaled(order, 1))
    n = 0
    quiet = 0
    while quiet < 5:
        for k in ((n, -n) if n else (0,)):
            r = pochhammer_ratio([c, d, e, f], [a * b2 / c, a * b2 / d, a * b2 / e, a * b2 / f], k, order, b2)
            if r.is_zero:
                continue
            if k == 0:
                # (1 - a q^{4n})/(1 - a) at n = 0
                term = r
            else:
                term = r.mul_one_minus(a * M(1, 4 * k)).shift(M(Fraction(1) / (1 - a.coeff)))
            term = term.shift(w ** k * M(1, 2 * k * k))
            total = total + term.truncate(order)
        n += 1
        quiet = quiet + 1 if 2 * n * n - 2 * n >= order else 0
    return lhs, (pre * total).truncate(order)


@register("bailey_10phi9", "limit of Bailey's 10phi9 transformation at a=1",
          params={"p1": M(2), "p2": M(Fraction(1, 2)), "f": M(-1)}, group="transforms", default_prec=60)
def _bailey_10phi9(order, p):
    p1, p2, f = _mono(p["p1"]), _mono(p["p2"]), _mono(p["f"])
    b2 = M(1, 2)

    def step(n, s):
        for x in (p1, p1 * Q, p2, p2 * Q, f):
            s = times_one_minus(s, x * b2 ** n)
        for x in (b2 / p1, Q / p1, b2 / p2, Q / p2, b2 / f):
            s = over_one_minus(s, x * b2 ** n)
        return s * (M(1, 4 * n + 4) / (p1 * p1 * p2 * p2 * f))

    # the well-poised factor tends to 1 + q^(2n) for n >= 1 and to 1 at n = 0
    lhs = _series_sum(step, order, 1, 40) + _series_sum(lambda n, s: step(n, s) * M(1, 2), order, 1, 40) - 1
    pre = pochhammer_quotient([Q, Q / (p1 * p2)], [Q / p1, Q / p2], order)

    def rstep(n, s):
        s = times_one_minus(times_one_minus(s, p1 * Q ** n), p2 * Q ** n)
        s = times_one_minus(s, (Q / f) * M(1, 2 * n))
        s = over_one_minus(over_one_minus(s, Q ** (n + 1)), M(1, 2 * n + 1))
        s = over_one_minus(s, (Q / f) * Q ** n)
        return s * (Q / (p1 * p2))
    rhs = pre * _series_sum(rstep, order, 1, 40)
    return lhs, rhs.truncate(order)


def _bailey_at(z: Monomial, order):
    zi = z.inverse()
    b2 = M(1, 2)

    def step(n, s):
        s = times_one_minus(times_one_minus(s, z * Q ** n), zi * Q ** n)
        s = times_one_minus(s, M(-1, 2 * n + 1))
        s = over_one_minus(over_one_minus(s, Q ** (n + 1)), M(1, 2 * n + 1))
        s = over_one_minus(s, M(-1, n + 1))
        return s * Q
    lhs = _series_sum(step, order, 1, 40)
    pre = pochhammer_quotient([z * Q, zi * Q], [Q, Q], order)
    k = (1 - z.coeff) * (1 - zi.coeff)
    inner = QSeries.one(scaled(order, 1))
    n = 1
    while 2 * n * (n + 1) < order:
        term = QSeries.monomial(2 * k * (-1) ** n, 2 * n * (n + 1), 1, scaled(order, 1))
        term = term.div_one_minus(z * b2 ** n).div_one_minus(zi * b2 ** n)
        inner = inner + term
        n += 1
    return lhs, (pre * inner).truncate(order)


@register("bailey_specialized", "Bailey's limit at p1=z=1/p2, f=-1 for several rational z",
          params={"z": (2, 3, Fraction(1, 2), -1)}, group="transforms", default_prec=60)
def _bailey_specialized(order, p):
    zs = p["z"] if isinstance(p["z"], (tuple, list)) else (p["z"],)
    out = []
    for z in zs:
        l, r = _bailey_at(_mono(z), order)
        out.append((f"z={z}", l, r))
    return out


@register("bailey_second_derivative", "second z-derivative of the specialized limit at z=1",
          group="transforms", default_prec=80)
def _bailey_second_derivative(order, p):
    from ..partitions import divisor_lambert
    from ..qfunctions import lambert_series
    N = scaled(order, 1)
    total = QSeries.zero(N)
    t = QSeries.one(N)   # (q)_n (-q;q^2)_n / ((-q)_n (q;q^2)_n)
    n = 0
    while n + 1 < N:
        t = t.mul_one_minus(Q ** (n + 1)).mul_one_minus(M(-1, 2 * n + 1))
        t = t.div_one_minus(M(-1, n + 1)).div_one_minus(M(1, 2 * n + 1))
        n += 1
        total = total + t.shift(Q ** n).div_one_minus(Q ** n).div_one_minus(Q ** n)
    rhs = divisor_lambert(order) + 2 * lambert_series(lambda k: (-1) ** k, lambda k: (2 * k * (k + 1), 2 * k), order, power=2)
    return total.truncate(order), rhs
