"""Certified interval evaluation: signs, floors, enclosures, honest failure."""
from __future__ import annotations

from fractions import Fraction

import mpmath
import pytest
from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from pluribound import (
    as_expr,
    compare,
    decimal_enclosure,
    enclosure,
    floor_of,
    rational,
    root,
    sign_of,
)
from pluribound.enclose import DEFAULT_PRECISION_CAP, Order
from pluribound.errors import PrecisionExhausted
from pluribound.expr import Add, Div, Floor, Frac, Mul, Pow, Rat, RealExpr, Sub, cbrt, sqrt


def _mp(e: RealExpr) -> mpmath.mpf:
    """Reference evaluation of an expression tree at the ambient mpmath precision."""
    if isinstance(e, Rat):
        return mpmath.mpf(e.value.numerator) / mpmath.mpf(e.value.denominator)
    if isinstance(e, Pow):
        b = mpmath.mpf(e.base.numerator) / mpmath.mpf(e.base.denominator)
        return b ** (mpmath.mpf(e.num) / e.den)
    if isinstance(e, Add):
        return _mp(e.left) + _mp(e.right)
    if isinstance(e, Sub):
        return _mp(e.left) - _mp(e.right)
    if isinstance(e, Mul):
        return _mp(e.left) * _mp(e.right)
    if isinstance(e, Div):
        return _mp(e.left) / _mp(e.right)
    if isinstance(e, Floor):
        return mpmath.floor(_mp(e.arg))
    if isinstance(e, Frac):
        return mpmath.frac(_mp(e.arg))
    raise AssertionError(f"unhandled node {e!r}")


# ---------------------------------------------------------------------- signs
def test_sign_of_tight_irrational_margin():
    # (17/19)*sqrt(5) = 2.00066... sits close to 2; sign must still resolve.
    assert sign_of(rational(17, 19) * sqrt(5) - 2) == 1
    assert sign_of(rational(17, 19) * sqrt(5) - rational(201, 100)) == -1


def test_sign_of_exact_zero_is_symbolic():
    assert sign_of(sqrt(2) * sqrt(3) - sqrt(6)) == 0
    assert sign_of(as_expr(0)) == 0


def test_compare_orders():
    assert compare(sqrt(8), 2 * sqrt(2)) is Order.EQ
    assert compare(sqrt(2), rational(3, 2)) is Order.LT
    assert compare(cbrt(9), 2) is Order.GT


# --------------------------------------------------------------------- floors
@pytest.mark.parametrize(
    "e,want",
    [
        (rational(7, 2), 3),
        (rational(-7, 2), -4),
        (as_expr(5), 5),
        (36 * sqrt(2), 50),
        (sqrt(2) * sqrt(2), 2),
        (-sqrt(2), -2),
        (1000000 * sqrt(2) - 1414213, 0),
    ],
)
def test_floor_of(e, want):
    assert floor_of(e) == want


def test_floor_of_near_integer_irrational():
    """floor must keep refining when the value hugs an integer from one side."""
    assert floor_of(12978 * sqrt(2)) == 18353
    # 665857/470832 is a continued-fraction convergent of sqrt(2); the gap is
    # about 1.6e-12, so deciding this floor needs ~40 significant digits
    assert sign_of(rational(665857, 470832) - sqrt(2)) == 1
    assert floor_of(10**12 * (rational(665857, 470832) - sqrt(2))) == 1
    assert floor_of(10**13 * (rational(665857, 470832) - sqrt(2))) == 15


# ----------------------------------------------------------------- enclosures
def test_enclosure_width_contract():
    for exp in (3, 9, 15, 30):
        w = mpq(1, 10**exp)
        iv = enclosure(sqrt(7), width=w)
        assert iv.hi - iv.lo <= w
        assert iv.lo <= iv.hi
        with mpmath.workprec(300):
            v = mpmath.sqrt(7)
            assert mpmath.mpf(iv.lo.numerator) / iv.lo.denominator <= v
            assert v <= mpmath.mpf(iv.hi.numerator) / iv.hi.denominator


def test_decimal_enclosure_digits():
    lo, hi = decimal_enclosure(sqrt(2), 25)
    assert lo == "1.4142135623730950488016887"
    assert hi == "1.4142135623730950488016888"
    lo, hi = decimal_enclosure(rational(1, 4), 3)
    assert (lo, hi) == ("0.250", "0.250")


def test_decimal_enclosure_outward_rounding_negative():
    lo, hi = decimal_enclosure(-sqrt(2), 5)
    assert lo == "-1.41422" and hi == "-1.41421"


# ------------------------------------------------------------- honest failure
def _opaque_two() -> RealExpr:
    # equals 2 exactly, but division by the sum keeps it opaque to the
    # symbolic layer, so every numeric question about it must refine forever
    return (as_expr(2) + 2 * sqrt(2)) / (as_expr(1) + sqrt(2))


def test_floor_of_opaque_integer_raises_instead_of_guessing():
    with pytest.raises(PrecisionExhausted):
        floor_of(_opaque_two(), precision_cap=128)


def test_sign_of_opaque_zero_raises():
    with pytest.raises(PrecisionExhausted):
        sign_of(_opaque_two() - 2, precision_cap=256)


def test_precision_cap_env_var(monkeypatch):
    monkeypatch.setenv("PLURIBOUND_PRECISION_CAP", "128")
    with pytest.raises(PrecisionExhausted):
        floor_of(_opaque_two())
    monkeypatch.delenv("PLURIBOUND_PRECISION_CAP")
    assert DEFAULT_PRECISION_CAP >= 1024


def test_deep_cap_still_fails_finitely():
    with pytest.raises(PrecisionExhausted):
        sign_of(_opaque_two() - 2, precision_cap=4096)


# ----------------------------------------------------------------- properties
_fractions = st.fractions(min_value=Fraction(-30), max_value=Fraction(30), max_denominator=10)
_atoms = st.one_of(
    _fractions.map(lambda f: rational(f.numerator, f.denominator)),
    st.builds(root, st.sampled_from([2, 3]), st.sampled_from([2, 3, 5, 7, 11])),
)
_exprs = st.recursive(
    _atoms,
    lambda kids: st.one_of(
        st.tuples(kids, kids).map(lambda ab: ab[0] + ab[1]),
        st.tuples(kids, kids).map(lambda ab: ab[0] - ab[1]),
        st.tuples(kids, kids).map(lambda ab: ab[0] * ab[1]),
        st.tuples(kids, _fractions.filter(lambda f: f != 0)).map(
            lambda kf: kf[0] / rational(kf[1].numerator, kf[1].denominator)
        ),
    ),
    max_leaves=8,
)


@given(_exprs)
@settings(max_examples=200, deadline=None)
def test_sign_matches_mpmath_reference(e):
    with mpmath.workprec(512):
        v = _mp(e)
    if abs(v) < mpmath.mpf(10) ** -100:
        assert sign_of(e) == 0
    else:
        assert sign_of(e) == (1 if v > 0 else -1)


@given(_exprs, st.integers(min_value=2, max_value=20))
@settings(max_examples=150, deadline=None)
def test_enclosure_contains_mpmath_reference(e, exp):
    iv = enclosure(e, width=mpq(1, 10**exp))
    assert iv.hi - iv.lo <= mpq(1, 10**exp)
    with mpmath.workprec(512):
        v = _mp(e)
        # the reference value itself carries ~2^-500 rounding error, so the
        # containment check gets that much slack (the enclosure is exact mpq)
        eps = (1 + abs(v)) * mpmath.mpf(2) ** -400
        assert mpmath.mpf(iv.lo.numerator) / iv.lo.denominator <= v + eps
        assert v - eps <= mpmath.mpf(iv.hi.numerator) / iv.hi.denominator
