"""Randomized properties of the series kernel, shared by the unit and acceptance suites.

Each property runs 1000 generated cases.  The module name does not start
with ``test_`` so pytest collects these only through the callers.
"""

from fractions import Fraction

from hypothesis import HealthCheck, given, settings, strategies as st

from qpw.series import QSeries, mul_coeffs

CASES = 1000
kernel_settings = settings(max_examples=CASES, deadline=None, suppress_health_check=list(HealthCheck))

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)
small_ints = st.integers(min_value=-20, max_value=20)


@st.composite
def series(draw, scale=None, nonzero_lead=False, max_len=10):
    D = draw(st.sampled_from([1, 2, 3])) if scale is None else scale
    lo = draw(st.integers(min_value=-3, max_value=3))
    n = draw(st.integers(min_value=1 if nonzero_lead else 0, max_value=max_len))
    coeffs = draw(st.lists(st.one_of(rationals, small_ints), min_size=n, max_size=n))
    if nonzero_lead and coeffs[0] == 0:
        coeffs[0] = 1
    extra = draw(st.integers(min_value=0, max_value=3))
    return QSeries(coeffs, lo, lo + n + extra, D)


def same_to_precision(f: QSeries, g: QSeries) -> bool:
    """Equal below the smaller known order, and neither side is empty of information by accident."""
    order = min(f.order, g.order)
    return f.truncate(order) == g.truncate(order)


@kernel_settings
@given(series(), series(), series())
def check_ring_laws(f, g, h):
    assert same_to_precision(f + g, g + f)
    assert same_to_precision(f * g, g * f)
    assert same_to_precision((f + g) + h, f + (g + h))
    assert same_to_precision((f * g) * h, f * (g * h))
    assert same_to_precision(f * (g + h), f * g + f * h)
    assert same_to_precision(f - f, QSeries.zero(f.prec, f.scale))


@kernel_settings
@given(series(nonzero_lead=True))
def check_invert_round_trip(f):
    g = f.invert()
    one = QSeries.one(f.prec - f.min_exp, f.scale)
    assert same_to_precision(f * g, one)
    assert same_to_precision(g * f, one)
    # the product is known to the same relative precision as f
    assert (f * g).order == Fraction(f.prec - f.min_exp, f.scale)


@kernel_settings
@given(series(nonzero_lead=True, max_len=12), series(nonzero_lead=True, max_len=12), st.integers(1, 6))
def check_precision_soundness(f, g, cut):
    """Results from truncated inputs are truncations of the full-precision results."""
    fs = f.truncate(f.order - Fraction(cut, f.scale))
    gs = g.truncate(g.order - Fraction(cut, g.scale))
    for op in (lambda a, b: a + b, lambda a, b: a * b, lambda a, b: a - b):
        small, big = op(fs, gs), op(f, g)
        assert small.order <= big.order
        assert small == big.truncate(small.order)
    if not fs.is_zero:
        small, big = fs.invert(), f.invert()
        assert small.order <= big.order
        assert small == big.truncate(small.order)


@kernel_settings
@given(series(), st.integers(1, 7))
def check_dissection_partition(f, m):
    parts = [f.dissect(r, m) for r in range(m)]
    total = parts[0]
    for p in parts[1:]:
        total = total + p
    assert total == f
    for r, p in enumerate(parts):
        for x, _ in p.terms():
            assert (x * f.scale) % m == r


@kernel_settings
@given(series(), st.integers(1, 4))
def check_substitute_round_trip(f, a):
    assert f.substitute(1, a, 1).substitute(1, 1, a) == f


@kernel_settings
@given(st.lists(st.one_of(rationals, small_ints), max_size=60),
       st.lists(st.one_of(rationals, small_ints), max_size=60), st.integers(0, 120))
def check_fast_multiplication(a, b, n):
    assert mul_coeffs(a, b, n) == mul_coeffs(a, b, n, schoolbook=True)


KERNEL_PROPERTIES = {
    "ring laws": check_ring_laws,
    "invert round-trip": check_invert_round_trip,
    "precision soundness": check_precision_soundness,
    "dissection partition": check_dissection_partition,
}
