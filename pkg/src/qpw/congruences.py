"""Ramanujan-type congruences on coefficient sequences: checking and mining.

A claim ``(sequence, A, B, M)`` says ``seq(A n + B) = 0 (mod M)`` for every
``n >= 0`` with ``A n + B >= 1``.  Sequences come from the generating
functions (default) or from the counting tables; both are exact integers.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from math import isqrt

from .partitions import ENUMERATION, enumerated_sequence, gf_Y, normalize_id, sequence

PASS = "PASS"
FAIL = "FAIL"
UNKNOWN = "UNKNOWN"
CANDIDATE = "CANDIDATE"

MIN_HITS = 30
SOURCES = ("series", "enumeration")


@dataclass
class CongruenceClaim:
    """``seq(A n + B) = 0 (mod M)`` for ``0 <= n <= n_max``; the counterexample is the index n."""
    sequence_id: str
    A: int
    B: int
    M: int
    n_max: int
    verdict: str = UNKNOWN
    counterexample: int | None = None
    label: str = ""

    def __post_init__(self):
        self.sequence_id = normalize_id(self.sequence_id)
        if self.A < 1 or not 0 <= self.B < self.A or self.M < 2 or self.n_max < 0:
            raise ValueError(f"need A >= 1, 0 <= B < A, M >= 2, n_max >= 0; got {self.key()}")

    def key(self) -> tuple:
        return (self.A, self.B, self.M)

    @property
    def bound(self) -> int:
        return self.A * self.n_max + self.B

    def to_dict(self) -> dict:
        d = asdict(self)
        d.pop("label")
        return d

    def line(self) -> str:
        where = f" (first failure n={self.counterexample})" if self.counterexample is not None else ""
        tag = f" [{self.label}]" if self.label else ""
        return (f"{self.verdict} {self.sequence_id}({self.A}n+{self.B}) = 0 mod {self.M}"
                f" for n <= {self.n_max}{where}{tag}")


# ---------------------------------------------------------------------------
# coefficient tables


_TABLES: dict[tuple[str, str], list] = {}


def table(sequence_id: str, n_max: int, source: str = "series") -> list:
    """Coefficients 0..n_max, computed once per source and extended on demand."""
    sid = normalize_id(sequence_id)
    if source not in SOURCES:
        raise ValueError(f"source must be one of {SOURCES}")
    if source == "enumeration" and sid not in ENUMERATION:
        raise KeyError(f"no counting table for {sid!r}")
    cached = _TABLES.get((sid, source))
    if cached is None or len(cached) <= n_max:
        fetch = sequence if source == "series" else enumerated_sequence
        cached = fetch(sid, n_max)
        _TABLES[(sid, source)] = cached
    return cached


def _first_failure(values: list, A: int, B: int, M: int, n_max: int):
    for n in range(n_max + 1):
        x = A * n + B
        if x >= 1 and values[x] % M:
            return n
    return None


def check(claim: CongruenceClaim, source: str = "series") -> CongruenceClaim:
    """Fill in the verdict; a failure records the smallest offending n."""
    values = table(claim.sequence_id, claim.bound, source)
    bad = _first_failure(values, claim.A, claim.B, claim.M, claim.n_max)
    claim.verdict = PASS if bad is None else FAIL
    claim.counterexample = bad
    return claim


# ---------------------------------------------------------------------------
# the stated congruences

STATED_CLAIMS = (
    ("pbar_omega", 4, 3, 4, "overpartition 4n+3"),
    ("pbar_omega", 8, 6, 4, "overpartition 8n+6"),
    ("sptbar_omega", 3, 0, 3, "smallest parts 3n"),
    ("sptbar_omega", 3, 2, 3, "smallest parts 3n+2"),
    ("sptbar_omega", 10, 6, 5, "smallest parts 10n+6"),
    ("sptbar_omega", 6, 5, 6, "smallest parts 6n+5"),
    ("sptbar2", 3, 0, 3, "even smallest parts 3n"),
    ("sptbar2", 3, 1, 3, "even smallest parts 3n+1"),
    ("sptbar2", 5, 3, 5, "even smallest parts 5n+3"),
    ("sptbar", 3, 0, 3, "all overpartitions 3n"),
)


def stated_claims(bound: int = 1000, sequence_id: str | None = None) -> list[CongruenceClaim]:
    """The stated congruences, each checked for every argument up to ``bound``."""
    sid = normalize_id(sequence_id) if sequence_id else None
    out = []
    for s, A, B, M, label in STATED_CLAIMS:
        if sid is not None and s != sid:
            continue
        out.append(CongruenceClaim(s, A, B, M, max(0, (bound - B) // A), label=label))
    return out


def check_all(claims, source: str = "series") -> list[CongruenceClaim]:
    return [check(c, source) for c in claims]


# ---------------------------------------------------------------------------
# parity and the 7n congruences


@dataclass
class SequenceReport:
    name: str
    n_max: int
    verdict: str
    counterexample: int | None = None
    detail: str = ""
    data: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)

    def line(self) -> str:
        where = f" (first failure n={self.counterexample})" if self.counterexample is not None else ""
        return f"{self.verdict} {self.name} for n <= {self.n_max}{where} {self.detail}".rstrip()


def is_square_or_twice_square(n: int) -> bool:
    if n < 1:
        return False
    r = isqrt(n)
    if r * r == n:
        return True
    if n % 2:
        return False
    r = isqrt(n // 2)
    return r * r == n // 2


def check_parity_characterization(n_max: int, source: str = "series") -> SequenceReport:
    """Both spt sequences are odd exactly at n = k^2 and n = 2k^2."""
    if n_max < 10:
        raise ValueError("n_max must be at least 10")
    seqs = {s: table(s, n_max, source) for s in ("sptbar", "sptbar_omega")}
    for n in range(1, n_max + 1):
        want = 1 if is_square_or_twice_square(n) else 0
        for s, values in seqs.items():
            if values[n] % 2 != want:
                return SequenceReport("parity", n_max, FAIL, n, f"{s}({n}) = {values[n]}")
    return SequenceReport("parity", n_max, PASS)


def _seven(values: list, n: int) -> int:
    return values[n // 7] if n % 7 == 0 else 0


def check_hecke_mod4(n_max: int, source: str = "series") -> SequenceReport:
    """seq(7n) = seq(n/7) (mod 4) for both spt sequences, seq(x) = 0 off the positive integers."""
    if n_max < 1:
        raise ValueError("n_max must be positive")
    for s in ("sptbar", "sptbar_omega"):
        values = table(s, 7 * n_max, source)
        for n in range(1, n_max + 1):
            if (values[7 * n] - _seven(values, n)) % 4:
                return SequenceReport("7n mod 4", n_max, FAIL, n,
                                      f"{s}({7 * n}) = {values[7 * n]}, {s}(n/7) = {_seven(values, n)}")
    return SequenceReport("7n mod 4", n_max, PASS)


# ---------------------------------------------------------------------------
# mining


def mine(sequence_id: str, A_max: int, M_set, n_max: int, source: str = "series",
         min_hits: int = MIN_HITS) -> list[CongruenceClaim]:
    """Every progression (A <= A_max, B, M in M_set) vanishing mod M on all arguments up to ``n_max``.

    Results are CANDIDATE claims, never proofs.  A progression needs at least
    ``min_hits`` arguments in range to be reported.
    """
    mods = sorted(set(int(m) for m in M_set))
    if not mods:
        return []
    if any(m < 2 for m in mods):
        raise ValueError("moduli must be at least 2")
    values = table(sequence_id, n_max, source)
    found = []
    for A in range(1, A_max + 1):
        for B in range(A):
            args = [x for x in range(B, n_max + 1, A) if x >= 1]
            if len(args) < min_hits:
                continue
            for M in mods:
                if all(values[x] % M == 0 for x in args):
                    found.append(CongruenceClaim(sequence_id, A, B, M, (n_max - B) // A, CANDIDATE))
    return found


# ---------------------------------------------------------------------------
# the odd-function evidence

# published coefficients of Y(q) at odd exponents
Y_LISTED = {3: -1, 5: -2, 7: -3, 9: -5, 11: -4, 13: -7, 15: -9, 91: -53, 93: -62, 95: -38, 97: -55}


def y_oddness_evidence(prec: int = 200) -> SequenceReport:
    """Expand Y(q) below q^prec: even coefficients should vanish, listed odd ones should match.

    A PASS is evidence only; it proves nothing about the full series.
    """
    if prec < 20:
        raise ValueError("prec must be at least 20")
    Y = gf_Y(prec)
    coeffs = Y.coefficients(0, prec)
    even_nonzero = [e for e in range(0, prec, 2) if coeffs[e]]
    mismatches = {e: (coeffs[e], v) for e, v in Y_LISTED.items() if e < prec and coeffs[e] != v}
    data = {"odd_coefficients": {e: coeffs[e] for e in range(1, prec, 2)},
            "even_nonzero": even_nonzero,
            "listed_checked": sorted(e for e in Y_LISTED if e < prec),
            "listed_mismatches": mismatches}
    ok = not even_nonzero and not mismatches
    detail = "evidence only, not a proof" if ok else (
        f"even exponent {even_nonzero[0]} nonzero" if even_nonzero else f"listed mismatch at {min(mismatches)}")
    first = even_nonzero[0] if even_nonzero else (min(mismatches) if mismatches else None)
    return SequenceReport("Y odd", prec, PASS if ok else FAIL, first, detail, data)


def dumps(items) -> str:
    """JSON for a list of claims or reports."""
    return json.dumps([x.to_dict() for x in items], indent=2, default=str)
