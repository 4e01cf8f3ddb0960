"""Identity records, verification reports and the registry they live in.

An identity is a pair of series builders.  ``build(order, params)`` returns
either one ``(lhs, rhs)`` pair or a list of ``(label, lhs, rhs)`` triples
(for families such as "for every k" statements).  A record with a modulus
claims that ``lhs - rhs`` has integral coefficients, all divisible by the
modulus; without one it claims exact equality.
"""

from __future__ import annotations

import re
import time
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Mapping

from ..errors import (
    InsufficientPrecision,
    NonIntegralCoefficient,
    SpecializationViolatesSideConditions,
    UnknownIdentity,
)
from ..series import Monomial, QSeries, format_rational

PASS = "PASS"
FAIL = "FAIL"

Pairs = list  # list[tuple[str, QSeries, QSeries]]


@dataclass(frozen=True)
class Identity:
    id: str
    title: str
    build: Callable[[Fraction, dict], object]
    scale: int = 1
    modulus: int | None = None
    default_prec: int = 60
    params: Mapping[str, object] = field(default_factory=dict)
    check_params: Callable[[dict], None] | None = None
    group: str = ""

    def pairs(self, prec: int, params: Mapping | None = None) -> Pairs:
        merged = dict(self.params)
        if params:
            merged.update(params)
        if self.check_params is not None:
            self.check_params(merged)
        out = self.build(Fraction(prec, self.scale), merged)
        if isinstance(out, tuple):
            return [("", out[0], out[1])]
        return list(out)

    def build_lhs(self, prec: int, params: Mapping | None = None) -> QSeries:
        return self.pairs(prec, params)[0][1]

    def build_rhs(self, prec: int, params: Mapping | None = None) -> QSeries:
        return self.pairs(prec, params)[0][2]

    def metadata(self) -> dict:
        return {"id": self.id, "title": self.title, "scale": self.scale,
                "modulus": self.modulus, "default_prec": self.default_prec,
                "group": self.group}


@dataclass(frozen=True)
class Specialization:
    """Parameter values (monomials c q^k) for a parameterized identity."""
    values: Mapping[str, object] = field(default_factory=dict)
    seed: int | None = None

    def __str__(self):
        body = ", ".join(f"{k}={_show_param(v)}" for k, v in sorted(self.values.items()))
        return body + (f" (seed {self.seed})" if self.seed is not None else "")


def _show_param(v) -> str:
    if isinstance(v, Monomial):
        c = format_rational(v.coeff)
        return c if v.exp == 0 else f"{c}*q^{format_rational(v.exponent)}"
    if isinstance(v, (int, Fraction)):
        return format_rational(v)
    return repr(v)


_MONO = re.compile(r"^\s*([+-]?\d+(?:/\d+)?)?\s*\*?\s*(q(?:\s*\^\s*\(?\s*([+-]?\d+(?:/\d+)?)\s*\)?)?)?\s*$")


def parse_monomial(text: str) -> Monomial:
    """Parse ``"2"``, ``"-1/2*q^3"``, ``"q"``, ``"-q^-2"`` or ``"q^(1/5)"`` into a Monomial."""
    s = text.strip().replace(" ", "")
    sign = 1
    if s.startswith("-q"):
        sign, s = -1, s[1:]
    elif s.startswith("+q"):
        s = s[1:]
    m = _MONO.match(s)
    if not m or (m.group(1) is None and m.group(2) is None):
        raise ValueError(f"cannot read {text!r} as a monomial c*q^k")
    c = Fraction(m.group(1)) if m.group(1) is not None else Fraction(1)
    e = Fraction(0)
    if m.group(2) is not None:
        e = Fraction(m.group(3)) if m.group(3) is not None else Fraction(1)
    return Monomial(sign * c, e.numerator, e.denominator)


@dataclass
class VerificationReport:
    id: str
    prec: int
    status: str
    first_fail_exponent: Fraction | None = None
    lhs_coeff: object = None
    rhs_coeff: object = None
    trials: int = 1
    seed: int | None = None
    elapsed_ms: float = 0.0
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict:
        def fmt(x):
            return None if x is None else format_rational(x)
        return {"id": self.id, "prec": self.prec, "status": self.status,
                "first_fail_exponent": fmt(self.first_fail_exponent),
                "lhs_coeff": fmt(self.lhs_coeff), "rhs_coeff": fmt(self.rhs_coeff),
                "trials": self.trials, "seed": self.seed,
                "elapsed_ms": round(self.elapsed_ms, 3), "detail": self.detail}

    def line(self) -> str:
        if self.passed:
            extra = f" ({self.trials} trials)" if self.trials > 1 else ""
            return f"{self.status} {self.id} @ {self.prec}{extra}"
        where = format_rational(self.first_fail_exponent) if self.first_fail_exponent is not None else "?"
        return (f"{self.status} {self.id} @ {self.prec}: q^{where} lhs={_fmt(self.lhs_coeff)} "
                f"rhs={_fmt(self.rhs_coeff)} {self.detail}").rstrip()


def _fmt(x):
    return "None" if x is None else format_rational(x)


# ---------------------------------------------------------------------------
# comparison


def compare(lhs: QSeries, rhs: QSeries, order, modulus: int | None = None):
    """First failing exponent of an exact or modular claim, or None.

    Returns ``(exponent, lhs_coeff, rhs_coeff, reason)``.  Both sides must
    be known below ``order``.
    """
    order = Fraction(order)
    for side in (lhs, rhs):
        if side.order < order:
            raise InsufficientPrecision(order, side.order)
    d = (lhs - rhs).truncate(order)
    for x, c in d.terms():
        if modulus is None:
            return x, lhs.coeff(x), rhs.coeff(x), "coefficients differ"
        if isinstance(c, Fraction):
            return x, lhs.coeff(x), rhs.coeff(x), f"difference {format_rational(c)} is not integral"
        if c % modulus:
            return x, lhs.coeff(x), rhs.coeff(x), f"difference {c} is not divisible by {modulus}"
    return None


def check_pairs(record: Identity, prec: int, pairs: Pairs) -> tuple:
    order = Fraction(prec, record.scale)
    for label, lhs, rhs in pairs:
        try:
            bad = compare(lhs, rhs, order, record.modulus)
        except NonIntegralCoefficient as exc:
            return exc.exponent, exc.value, None, "non-integral coefficient"
        if bad is not None:
            x, a, b, reason = bad
            return x, a, b, f"{label}: {reason}" if label else reason
    return None


# ---------------------------------------------------------------------------
# registry

REGISTRY: dict[str, Identity] = {}
KNOWN_FALSE: dict[str, Identity] = {}


def register(id: str, title: str, *, scale: int = 1, modulus: int | None = None,
             default_prec: int = 60, params: Mapping | None = None,
             check_params: Callable | None = None, group: str = "", known_false: bool = False):
    """Decorator adding a builder to the registry (or to the known-false list)."""
    def wrap(fn):
        table = KNOWN_FALSE if known_false else REGISTRY
        if id in REGISTRY or id in KNOWN_FALSE:
            raise ValueError(f"identity {id!r} registered twice")
        table[id] = Identity(id, title, fn, scale, modulus, default_prec,
                             dict(params or {}), check_params, group)
        return fn
    return wrap


def lookup(id: str) -> Identity:
    if id in REGISTRY:
        return REGISTRY[id]
    if id in KNOWN_FALSE:
        return KNOWN_FALSE[id]
    raise UnknownIdentity(id)


def verify_record(record: Identity, prec: int | None = None, spec: Specialization | None = None,
                  params: Mapping | None = None) -> VerificationReport:
    prec = record.default_prec if prec is None else int(prec)
    if prec < 2:
        raise ValueError("prec must be at least 2")
    merged = dict(spec.values) if spec is not None else {}
    if params:
        merged.update(params)
    start = time.perf_counter()
    pairs = record.pairs(prec, merged)
    bad = check_pairs(record, prec, pairs)
    elapsed = (time.perf_counter() - start) * 1000
    seed = spec.seed if spec is not None else None
    if bad is None:
        return VerificationReport(record.id, prec, PASS, seed=seed, elapsed_ms=elapsed,
                                  detail=str(spec) if spec is not None and spec.values else "")
    x, a, b, reason = bad
    if spec is not None and spec.values:
        reason = f"{reason} at {spec}"
    return VerificationReport(record.id, prec, FAIL, x, a, b, seed=seed, elapsed_ms=elapsed,
                              detail=reason)


def verify(id: str, prec: int | None = None, spec: Specialization | None = None) -> VerificationReport:
    """Check one identity at ``prec`` (counted in units of q^(1/scale))."""
    return verify_record(lookup(id), prec, spec)


def perturb(record: Identity, exponent, delta=1, suffix: str = "perturbed") -> Identity:
    """A copy of ``record`` whose right side gets ``delta * q**exponent`` added."""
    exponent = Fraction(exponent)
    base = record.build

    def build(order, params):
        out = base(order, params)
        pairs = [("", out[0], out[1])] if isinstance(out, tuple) else list(out)
        label, lhs, rhs = pairs[0]
        bump = QSeries.monomial(delta, exponent.numerator, exponent.denominator, _slots(rhs, exponent))
        pairs[0] = (label, lhs, (rhs + bump).truncate(rhs.order))
        return pairs

    return replace(record, id=f"{record.id}:{suffix}", build=build)


def _slots(rhs: QSeries, exponent: Fraction) -> int:
    # precision for the bump, in units of 1/denominator(exponent)
    return max(int(rhs.order * exponent.denominator) + 1, exponent.numerator + 1)


def side_condition(ok: bool, message: str):
    if not ok:
        raise SpecializationViolatesSideConditions(message)
