"""Truncated formal Laurent series in q^(1/D) with exact rational coefficients.

A :class:`QSeries` stores a dense block of coefficients for the scaled
exponents ``min_exp, ..., prec - 1``; the true exponent of slot ``e`` is
``e / scale``.  Terms at or above ``prec`` are unknown.  Every operation
tracks precision, so a result never claims more than its inputs support.

Coefficients are rationals.  Integral values are held as ``int`` and the
rest as :class:`fractions.Fraction`; both compare and combine exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import repeat
from math import gcd, lcm
from operator import add as _add, mul as _mul, sub as _sub
from typing import Iterable, Iterator, Union

from .errors import (
    DivisionByZeroFactor,
    FractionalSignSubstitution,
    InsufficientPrecision,
    NonIntegralCoefficient,
    ZeroLeadingTerm,
)

Rational = Union[int, Fraction]

# below this length schoolbook multiplication beats packing into big ints
KRONECKER_CUTOFF = 24
NEWTON_CUTOFF = 48


def as_rational(x) -> Rational:
    """Coerce ``x`` to an exact rational, preferring ``int`` when integral."""
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, str):
        return as_rational(Fraction(x))
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def _clean(coeffs: list) -> list:
    for i, c in enumerate(coeffs):
        if type(c) is Fraction and c.denominator == 1:
            coeffs[i] = c.numerator
    return coeffs


def format_rational(x: Rational) -> str:
    x = as_rational(x)
    if isinstance(x, int):
        return str(x)
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# coefficient-list kernels


def _school(a: list, b: list, n: int) -> list:
    out = [0] * n
    for i, x in enumerate(a[:n]):
        if not x:
            continue
        lim = n - i
        bb = b[:lim]
        k = len(bb)
        out[i:i + k] = map(_add, out[i:i + k], map(_mul, repeat(x), bb))
    return out


def _pack(a: list, nbytes: int) -> int:
    pos = b"".join((x if x > 0 else 0).to_bytes(nbytes, "little") for x in a)
    neg = b"".join((-x if x < 0 else 0).to_bytes(nbytes, "little") for x in a)
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _unpack(c: int, nbytes: int, count: int) -> list:
    # digits above ``count`` are discarded; reducing mod B**count keeps the
    # lower signed digits intact because carries only travel upward
    c &= (1 << (8 * nbytes * count)) - 1
    raw = c.to_bytes(nbytes * count, "little")
    full = 1 << (8 * nbytes)
    half = full >> 1
    out = []
    carry = 0
    for k in range(count):
        r = int.from_bytes(raw[k * nbytes:(k + 1) * nbytes], "little") + carry
        if r >= half:
            r -= full
            carry = 1
        else:
            carry = 0
        out.append(r)
    return out


def _kronecker(a: list, b: list, n: int) -> list:
    """Product of integer lists via one big-integer multiplication."""
    a = a[:n]
    b = b[:n]
    ma = max(map(abs, a))
    mb = max(map(abs, b))
    if not ma or not mb:
        return [0] * n
    bound = ma * mb * min(len(a), len(b))
    nbytes = (bound.bit_length() + 1 + 7) // 8
    prod = _pack(a, nbytes) * _pack(b, nbytes)
    count = min(n, len(a) + len(b) - 1)
    out = _unpack(prod, nbytes, count)
    out.extend(repeat(0, n - count))
    return out


def _mul_int(a: list, b: list, n: int) -> list:
    if n <= 0:
        return []
    if not a or not b:
        return [0] * n
    if min(len(a), len(b), n) < KRONECKER_CUTOFF:
        return _school(a, b, n)
    return _kronecker(a, b, n)


def _common_denominator(a: list) -> int:
    d = 1
    for x in a:
        if type(x) is Fraction:
            d = lcm(d, x.denominator)
    return d


def _scaled_ints(a: list, d: int) -> list:
    if d == 1:
        return list(a)
    return [x.numerator * (d // x.denominator) if type(x) is Fraction else x * d for x in a]


def mul_coeffs(a: list, b: list, n: int, *, schoolbook: bool = False) -> list:
    """First ``n`` coefficients of the product of two coefficient lists."""
    if schoolbook:
        return _clean(_school(list(a), list(b), n))
    da = _common_denominator(a)
    db = _common_denominator(b)
    out = _mul_int(_scaled_ints(a, da), _scaled_ints(b, db), n)
    d = da * db
    if d != 1:
        out = [as_rational(Fraction(x, d)) if x else 0 for x in out]
    return out


def inverse_coeffs(f: list, n: int) -> list:
    """First ``n`` coefficients of 1/f, for ``f[0] != 0``."""
    c0 = as_rational(Fraction(1) / f[0])
    if n <= NEWTON_CUTOFF:
        g = [c0]
        for i in range(1, n):
            s = 0
            for j in range(1, min(i, len(f) - 1) + 1):
                if f[j]:
                    s += f[j] * g[i - j]
            g.append(as_rational(-s * c0))
        return g[:n]
    g = [c0]
    k = 1
    while k < n:
        k2 = min(2 * k, n)
        e = mul_coeffs(f[:k2], g, k2)
        e = [-x for x in e]
        e[0] += 2
        g = mul_coeffs(g, e, k2)
        k = k2
    return g


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Monomial:
    """The exact term ``coeff * q**(exp/scale)``."""

    coeff: Rational
    exp: int = 0
    scale: int = 1

    def __post_init__(self):
        c = as_rational(self.coeff)
        e, d = int(self.exp), int(self.scale)
        if d < 1:
            raise ValueError("scale must be positive")
        if c == 0:
            e, d = 0, 1
        else:
            g = gcd(e, d)
            e, d = e // g, d // g
        object.__setattr__(self, "coeff", c)
        object.__setattr__(self, "exp", e)
        object.__setattr__(self, "scale", d)

    @property
    def exponent(self) -> Fraction:
        return Fraction(self.exp, self.scale)

    @property
    def is_zero(self) -> bool:
        return self.coeff == 0

    def _other(self, other) -> "Monomial":
        if isinstance(other, Monomial):
            return other
        return Monomial(as_rational(other))

    def __mul__(self, other):
        if isinstance(other, QSeries):
            return other * self
        try:
            o = self._other(other)
        except TypeError:
            return NotImplemented
        d = lcm(self.scale, o.scale)
        return Monomial(self.coeff * o.coeff, self.exp * (d // self.scale) + o.exp * (d // o.scale), d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            o = self._other(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        try:
            return self._other(other) * self.inverse()
        except TypeError:
            return NotImplemented

    def __neg__(self):
        return Monomial(-self.coeff, self.exp, self.scale)

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return Monomial(self.coeff ** k, self.exp * k, self.scale)

    def inverse(self) -> "Monomial":
        if self.coeff == 0:
            raise ZeroDivisionError("zero monomial has no inverse")
        return Monomial(as_rational(Fraction(1) / self.coeff), -self.exp, self.scale)

    def series(self, prec: int, scale: int | None = None) -> "QSeries":
        """The monomial as a series known below ``q**(prec/scale)``."""
        scale = scale or self.scale
        L = lcm(scale, self.scale)
        e = self.exp * (L // self.scale)
        p = prec * (L // scale)
        if e >= p:
            return QSeries.zero(p, L)
        return QSeries._make([self.coeff], e, p, L)

    def __repr__(self):
        return f"Monomial({format_rational(self.coeff)}*q^{self.exponent})"


Q = Monomial(1, 1)


def _exact_scalar(x):
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return as_rational(x)
    return None


class QSeries:
    """Immutable truncated Laurent series in ``q**(1/scale)``."""

    __slots__ = ("coeffs", "min_exp", "prec", "scale")

    def __init__(self, coeffs: Iterable = (), min_exp: int = 0, prec: int | None = None, scale: int = 1):
        coeffs = [as_rational(c) for c in coeffs]
        if prec is None:
            prec = min_exp + len(coeffs)
        if scale < 1:
            raise ValueError("scale must be positive")
        if prec < min_exp:
            raise ValueError("prec must be at least min_exp")
        n = prec - min_exp
        coeffs = coeffs[:n] + [0] * max(0, n - len(coeffs))
        self._init(*_normalize(coeffs, min_exp, prec, scale))

    def _init(self, coeffs, min_exp, prec, scale):
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "min_exp", min_exp)
        object.__setattr__(self, "prec", prec)
        object.__setattr__(self, "scale", scale)

    def __setattr__(self, name, value):
        raise AttributeError("QSeries is immutable")

    @classmethod
    def _make(cls, coeffs: list, min_exp: int, prec: int, scale: int) -> "QSeries":
        obj = object.__new__(cls)
        obj._init(*_normalize(coeffs, min_exp, prec, scale))
        return obj

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, prec: int, scale: int = 1) -> "QSeries":
        return cls._make([], prec, prec, scale)

    @classmethod
    def constant(cls, c, prec: int, scale: int = 1) -> "QSeries":
        if prec <= 0:
            return cls.zero(prec, scale)
        return cls._make([as_rational(c)], 0, prec, scale)

    @classmethod
    def one(cls, prec: int, scale: int = 1) -> "QSeries":
        return cls.constant(1, prec, scale)

    @classmethod
    def monomial(cls, c, e: int, scale: int = 1, prec: int = 0) -> "QSeries":
        return Monomial(c, e, scale).series(prec, scale)

    @classmethod
    def from_function(cls, fn, prec: int, start: int = 0) -> "QSeries":
        """Integer-exponent series with coefficient ``fn(n)`` for ``start <= n < prec``."""
        return cls._make([as_rational(fn(n)) for n in range(start, prec)], start, prec, 1)

    @classmethod
    def from_terms(cls, terms, prec: int, scale: int = 1) -> "QSeries":
        """Build from ``(scaled_exponent, coeff)`` pairs, summing repeats and dropping ``e >= prec``."""
        acc: dict[int, Rational] = {}
        for e, c in terms:
            if e < prec:
                acc[e] = acc.get(e, 0) + c
        lo = min(acc, default=prec)
        coeffs = [0] * (prec - lo)
        for e, c in acc.items():
            coeffs[e - lo] = as_rational(c)
        return cls._make(coeffs, lo, prec, scale)

    # -- basic properties ---------------------------------------------------

    @property
    def order(self) -> Fraction:
        """Exponent below which every coefficient is known."""
        return Fraction(self.prec, self.scale)

    @property
    def valuation(self) -> Fraction | None:
        return None if not self.coeffs else Fraction(self.min_exp, self.scale)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def is_integral(self) -> bool:
        return all(type(c) is int for c in self.coeffs)

    def coeff(self, x) -> Rational:
        """Coefficient of ``q**x`` for a rational exponent ``x``."""
        x = Fraction(x)
        if x >= self.order:
            raise InsufficientPrecision(x, self.order)
        e = x * self.scale
        if e.denominator != 1:
            return 0
        i = int(e) - self.min_exp
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    __getitem__ = coeff

    def terms(self) -> Iterator[tuple[Fraction, Rational]]:
        for i, c in enumerate(self.coeffs):
            if c:
                yield Fraction(self.min_exp + i, self.scale), c

    def coefficients(self, start: int = 0, stop: int | None = None) -> list:
        """Coefficients at the integer exponents ``start, ..., stop-1``."""
        if stop is None:
            stop = -(-self.prec // self.scale)
        return [self.coeff(n) for n in range(start, stop)]

    def __repr__(self):
        shown = []
        for x, c in self.terms():
            if len(shown) == 8:
                shown.append("...")
                break
            shown.append(f"{format_rational(c)}*q^{x}")
        body = " + ".join(shown) if shown else "0"
        return f"QSeries({body} + O(q^{self.order}))"

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return (self.scale, self.min_exp, self.prec, self.coeffs) == (
            other.scale, other.min_exp, other.prec, other.coeffs)

    def __hash__(self):
        return hash((self.scale, self.min_exp, self.prec, self.coeffs))

    def agrees(self, other: "QSeries", order=None) -> bool:
        """True when both series have the same coefficients below the common precision."""
        return first_difference(self, other, order) is None

    # -- rescaling ----------------------------------------------------------

    def _at_scale(self, L: int) -> tuple[list, int, int]:
        r = L // self.scale
        if r == 1:
            return list(self.coeffs), self.min_exp, self.prec
        n = self.prec - self.min_exp
        out = [0] * (n * r)
        out[::r] = self.coeffs
        return out, self.min_exp * r, self.prec * r

    def truncate(self, order) -> "QSeries":
        """Forget everything at or above ``q**order``."""
        order = Fraction(order)
        if order >= self.order:
            return self
        L = lcm(self.scale, order.denominator)
        a, lo, _ = self._at_scale(L)
        p = int(order * L)
        coeffs = a[: max(0, p - lo)]
        return QSeries._make(coeffs, min(lo, p) if coeffs else p, p, L)

    # -- ring operations ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, QSeries):
            return other
        if isinstance(other, Monomial):
            return other
        c = _exact_scalar(other)
        if c is None:
            return None
        return Monomial(c)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if isinstance(o, Monomial):
            o = o.series(self.prec, self.scale)
        L = lcm(self.scale, o.scale)
        a, ma, pa = self._at_scale(L)
        b, mb, pb = o._at_scale(L)
        p = min(pa, pb)
        lo = min(ma, mb, p)
        out = [0] * (p - lo)
        for src, m in ((a, ma), (b, mb)):
            k = min(len(src), p - m)
            if k > 0:
                s = m - lo
                out[s:s + k] = map(_add, out[s:s + k], src[:k])
        return QSeries._make(out, lo, p, L)

    __radd__ = __add__

    def __neg__(self):
        return QSeries._make([-c for c in self.coeffs], self.min_exp, self.prec, self.scale)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (-self) + o

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if isinstance(o, Monomial):
            return self.shift(o)
        L = lcm(self.scale, o.scale)
        a, ma, pa = self._at_scale(L)
        b, mb, pb = o._at_scale(L)
        lo = ma + mb
        p = min(pa + mb, pb + ma)
        if p <= lo or not a or not b:
            return QSeries.zero(p, L)
        return QSeries._make(mul_coeffs(a, b, p - lo), lo, p, L)

    __rmul__ = __mul__

    def shift(self, m: Monomial) -> "QSeries":
        """Multiply by the exact monomial ``m``."""
        if m.coeff == 0:
            return QSeries.zero(self.prec, self.scale)
        L = lcm(self.scale, m.scale)
        a, lo, p = self._at_scale(L)
        e = m.exp * (L // m.scale)
        c = m.coeff
        if c != 1:
            a = [c * x for x in a]
        return QSeries._make(a, lo + e, p + e, L)

    def invert(self) -> "QSeries":
        if not self.coeffs:
            raise ZeroLeadingTerm(f"series is zero below q^{self.order}")
        n = self.prec - self.min_exp
        g = inverse_coeffs(list(self.coeffs), n)
        return QSeries._make(g, -self.min_exp, self.prec - 2 * self.min_exp, self.scale)

    def __truediv__(self, other):
        c = _exact_scalar(other)
        if c is not None:
            return self.shift(Monomial(Fraction(1) / c))
        if isinstance(other, Monomial):
            return self.shift(other.inverse())
        if isinstance(other, QSeries):
            return self * other.invert()
        return NotImplemented

    def __rtruediv__(self, other):
        c = _exact_scalar(other)
        if c is None:
            return NotImplemented
        return self.invert().shift(Monomial(c))

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.invert() ** (-k)
        if k == 0:
            return QSeries.one(max(self.prec - self.min_exp, 0), self.scale)
        result = None
        base = self
        while k:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- sparse factors -----------------------------------------------------

    def mul_one_minus(self, m: Monomial) -> "QSeries":
        """Multiply by the exact binomial ``1 - m``."""
        if m.coeff == 0:
            return self
        L = lcm(self.scale, m.scale)
        a, lo, p = self._at_scale(L)
        e = m.exp * (L // m.scale)
        c = m.coeff
        n = len(a)
        if e == 0:
            return QSeries._make([(1 - c) * x for x in a], lo, p, L)
        if e > 0:
            out = list(a)
            if e < n:
                out[e:] = map(_sub, a[e:], map(_mul, repeat(c), a[:n - e]))
            return QSeries._make(out, lo, p, L)
        s = -e
        out = [-c * x for x in a]
        if s < n:
            out[s:] = map(_add, out[s:], a[:n - s])
        return QSeries._make(out, lo + e, p + e, L)

    def div_one_minus(self, m: Monomial) -> "QSeries":
        """Divide by the exact binomial ``1 - m``."""
        if m.coeff == 0:
            return self
        L = lcm(self.scale, m.scale)
        e = m.exp * (L // m.scale)
        c = m.coeff
        if e == 0:
            if c == 1:
                raise DivisionByZeroFactor("factor 1 - 1 vanishes")
            return self.shift(Monomial(Fraction(1) / (1 - c)))
        if e < 0:
            inv = m.inverse()
            return self.shift(-inv).div_one_minus(inv)
        a, lo, p = self._at_scale(L)
        n = len(a)
        out = list(a)
        for start in range(e, n, e):
            stop = min(start + e, n)
            prev = out[start - e:stop - e]
            if c == 1:
                out[start:stop] = map(_add, out[start:stop], prev)
            else:
                out[start:stop] = map(_add, out[start:stop], map(_mul, repeat(c), prev))
        return QSeries._make(out, lo, p, L)

    # -- substitution and dissection ---------------------------------------

    def substitute(self, sign: int = 1, u: int = 1, v: int = 1) -> "QSeries":
        """Replace ``q`` by ``sign * q**(u/v)``."""
        if sign not in (1, -1) or u < 1 or v < 1:
            raise ValueError("substitute needs sign in {1,-1} and positive u, v")
        coeffs = list(self.coeffs)
        if sign == -1:
            for i, c in enumerate(coeffs):
                if not c:
                    continue
                e = self.min_exp + i
                if e % self.scale:
                    raise FractionalSignSubstitution(
                        f"q -> -q applied to the fractional power q^{Fraction(e, self.scale)}")
                if (e // self.scale) % 2:
                    coeffs[i] = -c
        if u > 1:
            spread = [0] * (len(coeffs) * u)
            spread[::u] = coeffs
            coeffs = spread
        return QSeries._make(coeffs, self.min_exp * u, self.prec * u, self.scale * v)

    def dissect(self, residue: int, modulus: int, scale: int | None = None) -> "QSeries":
        """Keep the terms whose exponent, in units of 1/scale, is ``residue`` mod ``modulus``."""
        if modulus < 1:
            raise ValueError("modulus must be positive")
        L = scale or self.scale
        if L % self.scale:
            raise ValueError(f"scale {L} is not a multiple of the series scale {self.scale}")
        a, lo, p = self._at_scale(L)
        r = residue % modulus
        out = [c if (lo + i) % modulus == r else 0 for i, c in enumerate(a)]
        return QSeries._make(out, lo, p, L)

    def integer_part(self) -> "QSeries":
        """The terms with integral exponent."""
        return self.dissect(0, self.scale)

    def reduce_mod(self, m: int) -> list[int]:
        """Residues mod ``m`` of the coefficients from ``min_exp`` up to ``prec``."""
        out = []
        for i, c in enumerate(self.coeffs):
            if type(c) is not int:
                raise NonIntegralCoefficient(Fraction(self.min_exp + i, self.scale), c)
            out.append(c % m)
        return out


def _normalize(coeffs: list, min_exp: int, prec: int, scale: int):
    n = prec - min_exp
    if len(coeffs) != n:
        coeffs = list(coeffs[:n]) + [0] * (n - len(coeffs))
    _clean(coeffs)
    k = 0
    n = len(coeffs)
    while k < n and not coeffs[k]:
        k += 1
    if k == n:
        # zero series: collapse the scale as far as the known range allows
        if prec % scale:
            g = gcd(scale, prec)
            return (), prec // g, prec // g, scale // g
        p = prec // scale
        return (), p, p, 1
    if k:
        coeffs = coeffs[k:]
        min_exp += k
    if scale > 1:
        # reduce only by factors that also divide prec, so the known range is exact
        g = gcd(scale, min_exp, prec)
        if g > 1:
            for i, c in enumerate(coeffs):
                if c and i % g:
                    g = gcd(g, i)
                    if g == 1:
                        break
        if g > 1:
            coeffs = coeffs[::g]
            min_exp //= g
            prec //= g
            scale //= g
    return tuple(coeffs), min_exp, prec, scale


def first_difference(f: QSeries, g: QSeries, order=None):
    """First exponent where ``f`` and ``g`` differ below their common precision.

    Returns ``(exponent, f_coeff, g_coeff)`` or ``None``.
    """
    d = g - f
    if order is not None:
        d = d.truncate(order)
    for x, _ in d.terms():
        return x, f.coeff(x), g.coeff(x)
    return None


# ---------------------------------------------------------------------------
# functional surface


def make_monomial(c, e: int, D: int = 1, prec: int = 0) -> QSeries:
    if prec <= e:
        raise ValueError("prec must exceed the monomial exponent")
    return QSeries.monomial(c, e, D, prec)


def add(f: QSeries, g: QSeries) -> QSeries:
    return f + g


def sub(f: QSeries, g: QSeries) -> QSeries:
    return f - g


def negate(f: QSeries) -> QSeries:
    return -f


def mul(f: QSeries, g: QSeries) -> QSeries:
    return f * g


def invert(f: QSeries) -> QSeries:
    return f.invert()


def substitute(f: QSeries, sign: int, u: int, v: int) -> QSeries:
    return f.substitute(sign, u, v)


def dissect(f: QSeries, residue: int, modulus: int, scale: int | None = None) -> QSeries:
    return f.dissect(residue, modulus, scale)


def coefficient_at(f: QSeries, e) -> Rational:
    return f.coeff(e)


def reduce_mod(f: QSeries, m: int) -> list[int]:
    return f.reduce_mod(m)
