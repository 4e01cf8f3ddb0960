"""q-Pochhammer symbols, basic hypergeometric sums, theta and Lambert series.

Every builder takes an ``order``: a rational exponent below which the
result must be exact.  Parameters are :class:`~qpw.series.Monomial` values
(preferred, they allow sparse O(N) factor updates) or general
:class:`~qpw.series.QSeries`; plain rationals are promoted to constant
monomials.  The base of a Pochhammer symbol is a monomial ``q**k`` with
``k > 0``, given either as a Monomial or as the integer ``k``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, isqrt, lcm
from typing import Callable, Sequence, Union

from .errors import DivisionByZeroFactor, NonConvergentProduct, NonConvergentSum
from .series import Monomial, Q, QSeries, as_rational

Param = Union[Monomial, QSeries]

QUIET_WINDOW = 5
MAX_RETRIES = 6


def as_param(x) -> Param:
    if isinstance(x, (Monomial, QSeries)):
        return x
    return Monomial(as_rational(x))


def as_base(base) -> Monomial:
    if isinstance(base, int):
        base = Monomial(1, base)
    if not isinstance(base, Monomial) or base.exp <= 0:
        raise NonConvergentProduct(f"base {base!r} must be a monomial with positive exponent")
    return base


def scaled(order, scale: int) -> int:
    """Smallest scaled exponent at or above ``order``."""
    x = Fraction(order) * scale
    return -(-x.numerator // x.denominator)


def one(order, scale: int = 1) -> QSeries:
    return QSeries.one(scaled(order, scale), scale)


def _scale_of(*items) -> int:
    s = 1
    for x in items:
        if isinstance(x, (Monomial, QSeries)):
            s = lcm(s, x.scale)
    return s


def _negative_part(x: Param) -> Fraction:
    if isinstance(x, Monomial):
        return max(Fraction(0), -x.exponent) if x.coeff else Fraction(0)
    v = x.valuation
    return max(Fraction(0), -v) if v is not None else Fraction(0)


def times_one_minus(t: QSeries, x: Param) -> QSeries:
    """``t * (1 - x)``."""
    if isinstance(x, Monomial):
        return t.mul_one_minus(x)
    return t * (1 - x)


def over_one_minus(t: QSeries, x: Param) -> QSeries:
    """``t / (1 - x)``."""
    if isinstance(x, Monomial):
        return t.div_one_minus(x)
    return t / (1 - x)


# ---------------------------------------------------------------------------
# Pochhammer symbols


def pochhammer(a, n: int, order, base=Q) -> QSeries:
    """``(a; base)_n`` for any integer ``n``; negative ``n`` uses the finite reciprocal."""
    a = as_param(a)
    b = as_base(base)
    D = _scale_of(a, b)
    if n >= 0:
        factors = [a * b ** j for j in range(n)]
        pad = sum((_negative_part(x) for x in factors), Fraction(0))
        t = one(Fraction(order) + pad, D)
        for x in factors:
            t = times_one_minus(t, x)
        return t.truncate(order)
    t = one(order, D)
    for j in range(1, -n + 1):
        t = over_one_minus(t, a * b ** (-j))
    return t.truncate(order)


def pochhammer_inf(a, order, base=Q, inverse: bool = False) -> QSeries:
    """``(a; base)_oo``, or its reciprocal when ``inverse`` is set.

    Finitely many factors may carry non-positive exponents; the rest must
    tend to 1, which needs a positive base exponent and (for a general
    series ``a``) a known valuation.
    """
    return pochhammer_quotient([a] if not inverse else [], [a] if inverse else [], order, base)


def pochhammer_quotient(numer: Sequence, denom: Sequence, order, base=Q) -> QSeries:
    """``prod (x; base)_oo`` over ``numer`` divided by the same over ``denom``.

    Repeat an argument to raise its symbol to a power.
    """
    b = as_base(base)
    numer = [as_param(x) for x in numer]
    denom = [as_param(x) for x in denom]
    D = _scale_of(b, *numer, *denom)
    order = Fraction(order)
    num_factors: list[Param] = []
    den_factors: list[Param] = []
    for src, dst in ((numer, num_factors), (denom, den_factors)):
        for a in src:
            if isinstance(a, QSeries) and a.is_zero:
                continue
            if isinstance(a, Monomial) and a.coeff == 0:
                continue
            lead = a.exponent if isinstance(a, Monomial) else a.valuation
            j = 0
            while lead + j * b.exponent < order:
                dst.append(a * b ** j)
                j += 1
    pad = sum((_negative_part(x) for x in num_factors), Fraction(0))
    t = one(order + pad, D)
    for x in den_factors:
        t = over_one_minus(t, x)
    for x in num_factors:
        t = times_one_minus(t, x)
    return t.truncate(order)


def _is_unit(x: Param) -> bool:
    return isinstance(x, Monomial) and x.coeff == 1 and x.exp == 0


def pochhammer_ratio(numer: Sequence, denom: Sequence, n: int, order, base=Q) -> QSeries:
    """``prod (x; base)_n`` over ``numer`` divided by the same over ``denom``, for any integer n.

    For negative n, ``(x; base)_n = 1 / prod_{j=1}^{-n} (1 - x base^-j)``, so a
    vanishing factor in a denominator symbol makes the whole ratio zero, and
    one in a numerator symbol raises DivisionByZeroFactor.
    """
    b = as_base(base)
    numer = [as_param(x) for x in numer]
    denom = [as_param(x) for x in denom]
    D = _scale_of(b, *numer, *denom)
    if n >= 0:
        mult = [x * b ** j for x in numer for j in range(n)]
        div = [x * b ** j for x in denom for j in range(n)]
    else:
        mult = [x * b ** (-j) for x in denom for j in range(1, -n + 1)]
        div = [x * b ** (-j) for x in numer for j in range(1, -n + 1)]
    if any(_is_unit(x) for x in div):
        raise DivisionByZeroFactor(f"a factor of the denominator vanishes at index {n}")
    if any(_is_unit(x) for x in mult):
        return QSeries.zero(scaled(order, D), D)
    pad = sum((_negative_part(x) for x in mult), Fraction(0))
    t = one(Fraction(order) + pad, D)
    for x in div:
        t = over_one_minus(t, x)
    for x in mult:
        t = times_one_minus(t, x)
    return t.truncate(order)


def times_difference(t: QSeries, y: Monomial, x: Monomial) -> QSeries:
    """``t * (y - x)`` for monomials, by two sparse shifts."""
    if y.coeff == 0:
        return -t.shift(x)
    if x.coeff == 0:
        return t.shift(y)
    return t.shift(y) - t.shift(x)


def homogeneous_pochhammer(x, y, m: int, order, base=Q) -> QSeries:
    """``prod_{i<m} (y - x base^i)``, which is ``y^m (x/y; base)_m`` but also defined at y = 0."""
    x = as_param(x)
    y = as_param(y)
    b = as_base(base)
    D = _scale_of(b, x, y)
    pad = sum((max(_negative_part(y), _negative_part(x * b ** i)) for i in range(m)), Fraction(0))
    t = one(Fraction(order) + pad, D)
    for i in range(m):
        t = t * y - t * (x * b ** i)
    return t.truncate(order)


def qpoch_residues(residues: Sequence[int], modulus: int, order, power: int = 1) -> QSeries:
    """``prod_r (q^r; q^modulus)_oo ** power`` for integer residues; negative power divides."""
    args = [Monomial(1, r) for r in residues] * abs(power)
    if power >= 0:
        return pochhammer_quotient(args, [], order, modulus)
    return pochhammer_quotient([], args, order, modulus)


def euler(k: int, order) -> QSeries:
    """``(q^k; q^k)_oo``."""
    return pochhammer_inf(Monomial(1, k), order, k)


@lru_cache(maxsize=None)
def gaussian_coeffs(n: int, m: int) -> tuple:
    """Coefficients of the Gaussian binomial ``[n, m]`` as a polynomial in q."""
    if m < 0 or m > n:
        return ()
    if m == 0 or m == n:
        return (1,)
    # [n, m] = [n-1, m-1] + q^m [n-1, m]
    a = gaussian_coeffs(n - 1, m - 1)
    b = gaussian_coeffs(n - 1, m)
    out = [0] * (m * (n - m) + 1)
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i + m] += c
    return tuple(out)


def gaussian_binomial(n: int, m: int, base=Q, order=None) -> QSeries:
    """``[n, m]`` in the given base; exact up to ``order`` (default: past the degree)."""
    b = as_base(base)
    poly = gaussian_coeffs(n, m)
    if order is None:
        order = b.exponent * len(poly) if poly else 1
    P = scaled(order, b.scale)
    return QSeries.from_terms(((i * b.exp, c) for i, c in enumerate(poly)), P, b.scale)


# ---------------------------------------------------------------------------
# hypergeometric summation


class _Shortfall(Exception):
    """Working precision was exhausted before the sum settled."""


def _unit_index(params: Sequence[Param], b: Monomial, sign: int) -> int | None:
    """Smallest ``N >= 0`` such that ``x * b**(sign * N) == 1`` for a monomial parameter."""
    best = None
    for x in params:
        if not isinstance(x, Monomial) or x.coeff != 1:
            continue
        r = -sign * x.exponent / b.exponent
        if r.denominator == 1 and r >= 0:
            best = int(r) if best is None else min(best, int(r))
    return best


def _run(step: Callable[[int, QSeries], QSeries], work: Fraction, scale: int,
         stall_limit: int, stop_after: int | None) -> QSeries:
    """Sum ``t_0 = 1, t_{n+1} = step(n, t_n)`` until the terms fall silent."""
    t = one(work, scale)
    total = t
    quiet = 0
    best = Fraction(0)
    stalled = 0
    n = 0
    while quiet < QUIET_WINDOW:
        if stop_after is not None and n >= stop_after:
            break
        t = step(n, t)
        n += 1
        low = Fraction(t.min_exp, t.scale)
        if t.is_zero and t.order < work:
            raise _Shortfall
        total = total + t
        if low >= work:
            quiet += 1
        else:
            quiet = 0
        if low > best:
            best = low
            stalled = 0
        else:
            stalled += 1
            if stalled > stall_limit:
                raise NonConvergentSum(f"terms stopped rising after {n} steps (lowest exponent {low})")
    return total


def _stall_limit(params: Sequence[Param], b: Monomial) -> int:
    extra = 0
    for x in params:
        neg = _negative_part(x)
        extra += -(-neg.numerator // (neg.denominator * b.exponent)) if neg else 0
    return QUIET_WINDOW + int(extra)


def _with_retries(compute: Callable[[Fraction], QSeries], order) -> QSeries:
    order = Fraction(order)
    pad = Fraction(0)
    for _ in range(MAX_RETRIES):
        try:
            res = compute(order + pad)
        except _Shortfall:
            pad = max(2 * pad, Fraction(8))
            continue
        if res.order >= order:
            return res.truncate(order)
        pad = max(2 * pad, 2 * (order - res.order), Fraction(4))
    raise NonConvergentSum(f"could not reach order {order} within {MAX_RETRIES} precision increases")


def term_sum(step: Callable[[int, QSeries], QSeries], order, scale: int = 1,
             stall_limit: int = QUIET_WINDOW, stop_after: int | None = None) -> QSeries:
    """``sum_{n >= 0} t_n`` where ``t_0 = 1`` and ``t_{n+1} = step(n, t_n)``.

    Summation stops once ``QUIET_WINDOW`` consecutive terms vanish below the
    working order, or after ``stop_after`` steps.
    """
    return _with_retries(lambda work: _run(step, work, scale, stall_limit, stop_after), order)


def phi_series(upper: Sequence, lower: Sequence, z, order, base=Q) -> QSeries:
    """``_{r+1}phi_r(upper; lower; base, z)`` truncated at ``order``."""
    upper = [as_param(x) for x in upper]
    lower = [as_param(x) for x in lower]
    if len(upper) != len(lower) + 1:
        raise ValueError("an r+1 phi r series needs one more upper parameter than lower")
    z = as_param(z)
    b = as_base(base)
    D = _scale_of(b, z, *upper, *lower)
    if isinstance(z, Monomial) and z.coeff == 0:
        return one(order, D)
    stop = _unit_index(upper, b, 1)
    if stop is None:
        lead = z.exponent if isinstance(z, Monomial) else z.valuation
        if lead is not None and lead <= 0:
            raise NonConvergentSum(f"argument {z!r} does not push terms to higher order")
    limit = _stall_limit(upper + lower, b)

    def step(n, t):
        for a in upper:
            t = times_one_minus(t, a * b ** n)
        t = over_one_minus(t, b ** (n + 1))
        for c in lower:
            t = over_one_minus(t, c * b ** n)
        return t * z

    return _with_retries(lambda work: _run(step, work, D, limit, stop), order)


def psi_bilateral(upper: Sequence, lower: Sequence, z, order, base=Q) -> QSeries:
    """``_r psi_r(upper; lower; base, z)`` summed over all integers."""
    upper = [as_param(x) for x in upper]
    lower = [as_param(x) for x in lower]
    if len(upper) != len(lower):
        raise ValueError("a bilateral r psi r series needs equally many upper and lower parameters")
    z = as_param(z)
    b = as_base(base)
    D = _scale_of(b, z, *upper, *lower)
    zinv = z.inverse() if isinstance(z, Monomial) else None
    stop_pos = _unit_index(upper, b, 1)
    # the backward step k multiplies by (1 - c b^(-k-1)), which vanishes at k = N - 1
    stop_neg = _unit_index(lower, b, -1)
    if stop_neg is not None:
        stop_neg = max(stop_neg - 1, 0)
    limit = _stall_limit(upper + lower, b) + _stall_limit([z], b)

    def forward(n, t):
        for a in upper:
            t = times_one_minus(t, a * b ** n)
        for c in lower:
            t = over_one_minus(t, c * b ** n)
        return t * z

    def backward(k, t):
        # (x;q)_{-k-1} = (x;q)_{-k} / (1 - x q^{-k-1})
        for c in lower:
            t = times_one_minus(t, c * b ** (-k - 1))
        for a in upper:
            t = over_one_minus(t, a * b ** (-k - 1))
        return t * zinv if zinv is not None else t / z

    def compute(work):
        pos = _run(forward, work, D, limit, stop_pos)
        neg = _run(backward, work, D, limit, stop_neg)
        return pos + neg - 1

    return _with_retries(compute, order)


def little_q_jacobi(n: int, x, alpha, beta, order, base=Q) -> QSeries:
    """Little q-Jacobi polynomial ``p_n(x; alpha, beta : q)`` as a terminating 2phi1."""
    if n < 0:
        raise ValueError("degree must be non-negative")
    b = as_base(base)
    alpha = as_param(alpha)
    beta = as_param(beta)
    upper = [b ** (-n), alpha * beta * b ** (n + 1)]
    lower = [alpha * b]
    x = as_param(x)
    z = b * x if isinstance(x, Monomial) else x * b
    return phi_series(upper, lower, z, order, b)


# ---------------------------------------------------------------------------
# theta and Lambert series


def theta_progression(alternating: bool, a: int, b: int, c: int, bilateral: bool, order,
                      offset=0) -> QSeries:
    """``sum (+-1)^n q^((a n + b)^2 / c + offset)`` over n in Z or n >= 0."""
    offset = Fraction(offset)
    D = lcm(c, offset.denominator)
    P = scaled(order, D)
    # (a n + b)^2 / c + offset < order  <=>  |a n + b| < R
    bound = (Fraction(order) - offset) * c
    R = isqrt(max(0, bound.numerator // bound.denominator)) + 1
    lo = 0 if not bilateral else (-R - b) // a - 1
    hi = (R - b) // a + 1
    terms = []
    for n in range(lo, hi + 1):
        e = Fraction((a * n + b) ** 2, c) + offset
        if e < order:
            s = e * D
            terms.append((int(s), -1 if alternating and n % 2 else 1))
    return QSeries.from_terms(terms, P, D)


def quadratic_sum(weight: Callable[[int], object], exponent: Callable[[int], int], order,
                  bilateral: bool = True, search: int | None = None) -> QSeries:
    """``sum weight(n) q^exponent(n)`` for an integer exponent tending to infinity both ways."""
    P = scaled(order, 1)
    terms = []
    for sign in ((1, -1) if bilateral else (1,)):
        n = 0 if sign == 1 else -1
        misses = 0
        while misses < (search or 8):
            e = exponent(n)
            if e < P:
                terms.append((e, weight(n)))
                misses = 0
            else:
                misses += 1
            n += sign
    return QSeries.from_terms(terms, P, 1)


def lambert_series(weight: Callable[[int], object], exponent_map: Callable[[int], tuple], order,
                   start: int = 1, power: int = 1) -> QSeries:
    """``sum_n weight(n) q^num / (1 - q^den)^power`` with ``(num, den) = exponent_map(n)``.

    The sum over ``n`` runs while ``num`` is below the order; ``num`` must be
    increasing in ``n``.  Expansion is by the explicit double loop.
    """
    P = scaled(order, 1)
    acc = [0] * max(P, 0)
    n = start
    while True:
        num, den = exponent_map(n)
        if num >= P:
            break
        w = as_rational(weight(n))
        if w:
            k = 0
            e = num
            while e < P:
                if e >= 0:
                    acc[e] += w * comb(k + power - 1, power - 1)
                k += 1
                e += den
        n += 1
    return QSeries._make(acc, 0, P, 1)


# ---------------------------------------------------------------------------
# named theta functions


def phi(order) -> QSeries:
    """``sum_{n in Z} q^(n^2)``."""
    return theta_progression(False, 1, 0, 1, True, order)


def phi_minus(order) -> QSeries:
    """``sum_{n in Z} (-1)^n q^(n^2)``."""
    return theta_progression(True, 1, 0, 1, True, order)


def psi(order) -> QSeries:
    """``sum_{n >= 0} q^(n(n+1)/2)``."""
    return theta_progression(False, 2, 1, 8, False, order, Fraction(-1, 8))


def T(order) -> QSeries:
    """``sum_{n >= 1} q^(n^2)``."""
    return (phi(order) - 1) / 2


def W(order) -> QSeries:
    """``sum_{n in Z} (-1)^n q^(3n^2 + 2n)``, the series with phi(-q) = phi(-q^9) - 2q W(q^3)."""
    return quadratic_sum(lambda n: (-1) ** (n % 2), lambda n: 3 * n * n + 2 * n, order)


# ---------------------------------------------------------------------------
# Rogers-Ramanujan objects


def rr_objects(order) -> dict[str, QSeries]:
    """The continued fraction r(q), r(q^2) and the fifth powers A(q)^5, B(q)^5.

    ``A5_fifth`` is A(q^(1/5))^5, a series in q^(1/5).  Everything is exact
    below ``order`` (a q-exponent).
    """
    order = Fraction(order)
    core = pochhammer_quotient([Monomial(1, 1), Monomial(1, 4)], [Monomial(1, 2), Monomial(1, 3)], order, 5)
    r = core.shift(Monomial(1, 1, 5))
    core2 = pochhammer_quotient([Monomial(1, 2), Monomial(1, 8)], [Monomial(1, 4), Monomial(1, 6)], order, 10)
    r2 = core2.shift(Monomial(1, 2, 5))
    inv_cube = pochhammer_quotient([], [Q] * 3, order, 1)
    A5 = (qpoch_residues([1, 4, 5], 5, order, 5) * inv_cube).shift(Q)
    B5 = qpoch_residues([2, 3, 5], 5, order, 5) * inv_cube
    big = (qpoch_residues([1, 4, 5], 5, 5 * order, 5)
           * pochhammer_quotient([], [Q] * 3, 5 * order, 1)).shift(Q)
    A5_fifth = big.substitute(1, 1, 5)
    return {"r": r.truncate(order), "r2": r2.truncate(order), "A5": A5.truncate(order),
            "B5": B5.truncate(order), "A5_fifth": A5_fifth}
