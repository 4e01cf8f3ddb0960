"""Overpartition enumeration, counting tables and generating functions.

Three independent routes to the same numbers:

* :func:`enumerate_overpartitions` builds every object (small n only);
* :func:`count_table` / :func:`spt_table` count by dynamic programming over
  part sizes, grouped by the smallest part;
* :func:`gf_series` expands the generating functions as q-series.

An overpartition here always has its smallest part overlined, except under
the ``OVERPARTITION`` constraint where every first occurrence is free.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from math import isqrt
from typing import Iterator

from .qfunctions import lambert_series, pochhammer_quotient, term_sum
from .series import Monomial, Q, QSeries


class Constraint(str, Enum):
    PBAR = "pbar"                   # smallest part overlined
    PBAR_OMEGA = "pbar_omega"       # ... and odd parts below twice the smallest
    PBAR_EVEN = "pbar_even"         # ... and the smallest part even
    P_OMEGA = "p_omega"             # ordinary partitions, odd parts below twice the smallest
    OVERPARTITION = "overpartition"  # every first occurrence may be overlined

    @property
    def overlines(self) -> bool:
        return self is not Constraint.P_OMEGA

    def allows_smallest(self, s: int) -> bool:
        return s % 2 == 0 if self is Constraint.PBAR_EVEN else True

    def allows(self, j: int, s: int) -> bool:
        """May a part of size ``j > s`` appear when the smallest part is ``s``?"""
        if self in (Constraint.PBAR_OMEGA, Constraint.P_OMEGA):
            return j % 2 == 0 or j < 2 * s
        return True


@dataclass(frozen=True)
class Overpartition:
    parts: tuple[int, ...]
    overlined: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(sorted(self.parts, reverse=True)))
        object.__setattr__(self, "overlined", frozenset(self.overlined))
        if not self.overlined <= set(self.parts):
            raise ValueError("an overlined size must occur among the parts")

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def smallest(self) -> int:
        return self.parts[-1]

    def multiplicity(self, j: int) -> int:
        return self.parts.count(j)

    def __str__(self):
        out, seen = [], set()
        for p in reversed(self.parts):
            mark = p in self.overlined and p not in seen
            seen.add(p)
            out.append(f"{p}̄" if mark else str(p))
        return "+".join(reversed(out))


def _compositions(remaining: int, sizes: list[int], overlines: bool):
    """Multisets of parts from ``sizes`` (descending) summing to ``remaining``, with overline choices."""
    if remaining == 0:
        yield (), frozenset()
        return
    if not sizes:
        return
    j, rest = sizes[0], sizes[1:]
    yield from _compositions(remaining, rest, overlines)
    for k in range(1, remaining // j + 1):
        for parts, marks in _compositions(remaining - k * j, rest, overlines):
            yield (j,) * k + parts, marks
            if overlines:
                yield (j,) * k + parts, marks | {j}


def enumerate_overpartitions(n: int, constraint: Constraint = Constraint.PBAR) -> Iterator[Overpartition]:
    """Every overpartition of ``n`` satisfying ``constraint``, each exactly once."""
    constraint = Constraint(constraint)
    if n < 1:
        return
    for s in range(1, n + 1):
        if not constraint.allows_smallest(s):
            continue
        sizes = [j for j in range(n, s, -1) if constraint.allows(j, s)]
        for k in range(1, n // s + 1):
            for parts, marks in _compositions(n - k * s, sizes, constraint.overlines):
                if constraint is Constraint.P_OMEGA:
                    heads = [frozenset()]
                elif constraint is Constraint.OVERPARTITION:
                    heads = [frozenset(), frozenset({s})]
                else:
                    heads = [frozenset({s})]
                for head in heads:
                    yield Overpartition(parts + (s,) * k, marks | head)


def _rest_counts(s: int, limit: int, constraint: Constraint) -> list[int]:
    """Weighted counts of multisets of allowed parts ``> s`` summing to each m <= limit."""
    w = 2 if constraint.overlines else 1
    dp = [0] * (limit + 1)
    dp[0] = 1
    for j in range(s + 1, limit + 1):
        if not constraint.allows(j, s):
            continue
        # new[m] = dp[m] + w * sum_{k >= 1} dp[m - k j], with the sum kept as a running tail
        tail = [0] * (limit + 1)
        new = dp[:]
        for m in range(j, limit + 1):
            tail[m] = dp[m - j] + tail[m - j]
            new[m] += w * tail[m]
        dp = new
    return dp


@lru_cache(maxsize=None)
def _tables(n_max: int, constraint: Constraint) -> tuple[tuple[int, ...], tuple[int, ...]]:
    counts = [0] * (n_max + 1)
    spts = [0] * (n_max + 1)
    head = 2 if constraint is Constraint.OVERPARTITION else 1
    for s in range(1, n_max + 1):
        if not constraint.allows_smallest(s):
            continue
        rest = _rest_counts(s, n_max - s, constraint)
        for k in range(1, n_max // s + 1):
            base = k * s
            for m in range(0, n_max - base + 1):
                c = rest[m]
                if c:
                    counts[base + m] += head * c
                    spts[base + m] += head * k * c
    return tuple(counts), tuple(spts)


def count_table(n_max: int, constraint: Constraint = Constraint.PBAR) -> list[int]:
    """Number of qualifying overpartitions of each n in 0..n_max (index 0 is 0)."""
    return list(_tables(n_max, Constraint(constraint))[0])


def spt_table(n_max: int, constraint: Constraint = Constraint.PBAR) -> list[int]:
    """Total number of smallest parts over the qualifying overpartitions of each n."""
    return list(_tables(n_max, Constraint(constraint))[1])


def count(n: int, constraint: Constraint = Constraint.PBAR) -> int:
    return count_table(n, constraint)[n]


def count_smallest_parts(n: int, constraint: Constraint = Constraint.PBAR) -> int:
    return spt_table(n, constraint)[n]


# ---------------------------------------------------------------------------
# generating functions


def _g(t: QSeries, k: int, inverse: bool = False) -> QSeries:
    """Multiply by (1+q^k)/(1-q^k), or by its reciprocal."""
    if inverse:
        return t.mul_one_minus(Monomial(1, k)).div_one_minus(Monomial(-1, k))
    return t.mul_one_minus(Monomial(-1, k)).div_one_minus(Monomial(1, k))


def _smallest_part_sum(order: int, update, weight_power: int, smallest, sign: int = 1) -> QSeries:
    """``sum_n q^s / (1 - sign q^s)^weight_power * P_n`` with ``P_n`` built by descending updates.

    ``smallest(n)`` is the smallest part for index n, ``update(P, n)`` turns
    P_{n+1} into P_n.
    """
    N = order
    total = QSeries.zero(N)
    P = QSeries.one(N)
    n = N
    while n >= 1:
        P = update(P, n)
        s = smallest(n)
        if s < N:
            term = P.shift(Monomial(1, s))
            for _ in range(weight_power):
                term = term.div_one_minus(Monomial(sign, s))
            total = total + term.truncate(N)
        n -= 1
    return total


@lru_cache(maxsize=None)
def gf_pbar_omega(order: int, spt: bool = False) -> QSeries:
    def update(P, n):
        # P_n = P_{n+1} (1+q^{n+1})/(1-q^{n+1}) (1-q^{2n+1})/(1+q^{2n+1})
        return _g(_g(P, n + 1), 2 * n + 1, inverse=True) if 2 * n + 1 < order else _g(P, n + 1)
    return _smallest_part_sum(order, update, 2 if spt else 1, lambda n: n)


@lru_cache(maxsize=None)
def gf_sptbar(order: int) -> QSeries:
    return _smallest_part_sum(order, lambda P, n: _g(P, n + 1) if n + 1 < order else P, 2, lambda n: n)


@lru_cache(maxsize=None)
def gf_pbar(order: int) -> QSeries:
    return _smallest_part_sum(order, lambda P, n: _g(P, n + 1) if n + 1 < order else P, 1, lambda n: n)


@lru_cache(maxsize=None)
def gf_sptbar2(order: int) -> QSeries:
    def update(P, n):
        for k in (2 * n + 1, 2 * n + 2):
            if k < order:
                P = _g(P, k)
        return P
    return _smallest_part_sum(order, update, 2, lambda n: 2 * n)


@lru_cache(maxsize=None)
def gf_S(order: int) -> QSeries:
    """The series with terms q^n (q^{n+1};q)_n (q^{2n+2};q^2)_oo / ((1+q^n)(-q^{n+1};q)_n (-q^{2n+2};q^2)_oo)."""
    def update(P, n):
        P = _g(P, n + 1, inverse=True) if n + 1 < order else P
        return _g(P, 2 * n + 1) if 2 * n + 1 < order else P
    return _smallest_part_sum(order, update, 1, lambda n: n, sign=-1)


@lru_cache(maxsize=None)
def gf_q_omega(order: int) -> QSeries:
    """``q omega(q)`` with omega(q) = sum_{n >= 0} q^(2n^2+2n) / (q;q^2)_{n+1}^2."""
    return _omega_sum(order)


def _omega_sum(order: int) -> QSeries:
    total = QSeries.zero(order)
    t = QSeries.one(order).div_one_minus(Q).div_one_minus(Q)
    n = 0
    while 2 * n * n + 2 * n + 1 < order:
        total = total + t
        t = t.shift(Monomial(1, 4 * n + 4))
        for _ in range(2):
            t = t.div_one_minus(Monomial(1, 2 * n + 3))
        n += 1
    return total.shift(Q).truncate(order)


@lru_cache(maxsize=None)
def gf_p_omega(order: int) -> QSeries:
    """``sum q^n / ((1-q^n) (q^{n+1};q)_n (q^{2n+2};q^2)_oo)``, the p_omega(n) counting form."""
    def update(P, n):
        # P_n = P_{n+1} / (1-q^{n+1}) * (1-q^{2n+1})
        P = P.div_one_minus(Monomial(1, n + 1)) if n + 1 < order else P
        return P.mul_one_minus(Monomial(1, 2 * n + 1)) if 2 * n + 1 < order else P
    return _smallest_part_sum(order, update, 1, lambda n: n)


def _prefactor_even(order) -> QSeries:
    """(-q^2;q^2)_oo / (q^2;q^2)_oo."""
    return pochhammer_quotient([Monomial(-1, 2)], [Monomial(1, 2)], order, 2)


@lru_cache(maxsize=None)
def gf_repre(order: int) -> QSeries:
    """The closed form q(-q^2;q^2)/((1-q)(q^2;q^2)) * sum (-q^3;q^2)_n (q)_n q^n / ((q^3;q^2)_n (-q^2)_n)."""
    def step(n, t):
        t = t.mul_one_minus(Monomial(-1, 2 * n + 3)).mul_one_minus(Monomial(1, n + 1))
        t = t.div_one_minus(Monomial(1, 2 * n + 3)).div_one_minus(Monomial(-1, n + 2))
        return t.shift(Q)
    inner = term_sum(step, order, 1)
    return (_prefactor_even(order) * inner).shift(Q).div_one_minus(Q).truncate(order)


@lru_cache(maxsize=None)
def gf_A(order: int) -> QSeries:
    """``sum_{k >= 1} q^k (q;q^2)_k / ((-q;q^2)_k (1+q^{2k}))``."""
    total = QSeries.zero(order)
    t = QSeries.one(order)  # (q;q^2)_k / (-q;q^2)_k * q^k
    k = 0
    while k + 1 < order:
        t = t.mul_one_minus(Monomial(1, 2 * k + 1)).div_one_minus(Monomial(-1, 2 * k + 1)).shift(Q)
        k += 1
        total = total + t.div_one_minus(Monomial(-1, 2 * k)).truncate(order)
    return total


def odd_weighted_lambert(order, step: int = 1, weight_scale: int = 1) -> QSeries:
    """``sum_{n >= 1} (2n-1) q^{step (2n-1)} / (1 - q^{step (2n-1)})``."""
    return lambert_series(lambda n: (2 * n - 1) * weight_scale,
                          lambda n: (step * (2 * n - 1), step * (2 * n - 1)), order)


def divisor_lambert(order, step: int = 1) -> QSeries:
    """``sum_{n >= 1} n q^{step n} / (1 - q^{step n})``."""
    return lambert_series(lambda n: n, lambda n: (step * n, step * n), order)


@lru_cache(maxsize=None)
def gf_s22(order: int) -> QSeries:
    inner = odd_weighted_lambert(order) + 2 * odd_weighted_lambert(order, 2)
    return _prefactor_even(order) * inner


@lru_cache(maxsize=None)
def gf_M1(order: int) -> QSeries:
    inner = odd_weighted_lambert(order) + divisor_lambert(order, 2)
    return _prefactor_even(order) * inner


@lru_cache(maxsize=None)
def gf_Y(order: int) -> QSeries:
    """``sum_{n, m >= 1} (-1)^m q^{2nm+m} / ((1+q^n)(1-q^{2m-1}))`` by nested truncated sums."""
    acc = [0] * order
    m = 1
    while 3 * m < order:
        inner = [0] * order
        n = 1
        while 2 * n * m + m < order:
            e = 2 * n * m + m
            sign = 1
            while e < order:
                inner[e] += sign
                sign = -sign
                e += n
            n += 1
        d = 2 * m - 1
        for i in range(d, order):
            inner[i] += inner[i - d]
        sgn = -1 if m % 2 else 1
        for i, c in enumerate(inner):
            if c:
                acc[i] += sgn * c
        m += 1
    return QSeries(acc, 0, order)


SERIES = {
    "pbar": gf_pbar,
    "pbar_omega": gf_pbar_omega,
    "sptbar_omega": lambda order: gf_pbar_omega(order, True),
    "sptbar": gf_sptbar,
    "sptbar2": gf_sptbar2,
    "p_omega": gf_p_omega,
    "q_omega": gf_q_omega,
    "repre": gf_repre,
    "S": gf_S,
    "A": gf_A,
    "s22": gf_s22,
    "M1": gf_M1,
    "y": gf_Y,
}

ENUMERATION = {
    "pbar": (Constraint.PBAR, False),
    "pbar_omega": (Constraint.PBAR_OMEGA, False),
    "sptbar_omega": (Constraint.PBAR_OMEGA, True),
    "sptbar": (Constraint.PBAR, True),
    "sptbar2": (Constraint.PBAR_EVEN, True),
    "p_omega": (Constraint.P_OMEGA, False),
    "q_omega": (Constraint.P_OMEGA, False),
}


_ALIASES = {"aq": "A", "a": "A", "s": "S", "m1": "M1", "y": "y", "yq": "y"}


def normalize_id(series_id: str) -> str:
    """Accept ``pbar_omega``, ``PBAR_OMEGA``, ``GF_PBAR_OMEGA``, ``GF_AQ`` and the like."""
    if series_id in SERIES:
        return series_id
    key = series_id.strip().lower()
    if key.startswith("gf_"):
        key = key[3:]
    key = _ALIASES.get(key, key)
    if key not in SERIES:
        raise KeyError(f"unknown series {series_id!r}")
    return key


def gf_series(series_id: str, order: int) -> QSeries:
    """Generating function ``series_id`` exact below ``q**order``."""
    try:
        fn = SERIES[normalize_id(series_id)]
    except KeyError:
        raise KeyError(f"unknown series {series_id!r}") from None
    if order < 1:
        raise ValueError("order must be at least 1")
    return fn(int(order))


def sequence(series_id: str, n_max: int) -> list:
    """Coefficients 0..n_max of a generating function."""
    return gf_series(series_id, n_max + 1).coefficients(0, n_max + 1)


def enumerated_sequence(series_id: str, n_max: int) -> list[int]:
    """Coefficients 0..n_max from the counting tables instead of the series."""
    constraint, spt = ENUMERATION[normalize_id(series_id)]
    return spt_table(n_max, constraint) if spt else count_table(n_max, constraint)


# ---------------------------------------------------------------------------
# arithmetic functions


def divisors(n: int) -> list[int]:
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
    return small + large[::-1]


def sigma(n: int) -> int:
    return sum(divisors(n))


def divisor_count(n: int) -> int:
    return len(divisors(n))


def odd_divisor_count(n: int) -> int:
    return sum(1 for d in divisors(n) if d % 2)


def odd_divisor_sum(n: int) -> int:
    return sum(d for d in divisors(n) if d % 2)


def r2(n: int) -> int:
    """Representations of n as x^2 + y^2 over all integers x, y."""
    r = isqrt(n)
    return sum(1 for x in range(-r, r + 1) for y in range(-r, r + 1) if x * x + y * y == n)


def excess_1_2_mod_6(n: int) -> int:
    """Divisors = 1, 2 (mod 6) minus divisors = 4, 5 (mod 6)."""
    total = 0
    for d in divisors(n):
        if d % 6 in (1, 2):
            total += 1
        elif d % 6 in (4, 5):
            total -= 1
    return total


def jacobi_d1_minus_d3(n: int) -> int:
    return sum(1 if d % 4 == 1 else -1 for d in divisors(n) if d % 2)


ARITHMETIC = {
    "sigma": sigma,
    "d": divisor_count,
    "d_odd": odd_divisor_count,
    "sum_odd_div": odd_divisor_sum,
    "r2": r2,
    "excess16": excess_1_2_mod_6,
}


def arithmetic(name: str, n: int) -> int:
    if n < 1:
        raise ValueError("n must be positive")
    return ARITHMETIC[name](n)
