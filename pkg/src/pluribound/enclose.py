"""Certified interval evaluation and comparison.

Everything numeric in this package reduces to :func:`enclose`: evaluate an
expression tree over rational-endpoint intervals, where each radical is
bracketed by an integer k-th root computed at a given bit precision.  The
bracket for ``x^(1/k)`` (x = p/q rational) is

    r / (q * 2^bits)  <=  x^(1/k)  <  (r+1) / (q * 2^bits)

with ``r = iroot(p * q^(k-1) * 2^(k*bits), k)``, which is exact integer
arithmetic — no floating point anywhere.  All interval operations are
inclusion-monotone, so doubling ``bits`` nests the enclosure.

On top of the one-shot evaluator sits an adaptive refinement loop
(:func:`sign_of`, :func:`compare`, :func:`floor_of`, ...) that doubles the
working precision from 64 bits up to a cap.  The cap comes from, in order:
the explicit ``precision_cap`` argument, the ``PLURIBOUND_PRECISION_CAP``
environment variable, the built-in default of 4096 bits.  Exhausting the cap
raises :class:`~pluribound.errors.PrecisionExhausted` — the engine never
guesses.

Equality is only ever certified symbolically (the canonical difference
collapses to rational zero).  A floor/frac request on an opaque form whose
value is exactly an integer — e.g. ``floor((2+2*sqrt(2))/(1+sqrt(2)))`` —
can therefore never be certified by refinement and exhausts the cap by
design.
"""

from __future__ import annotations

import enum
import functools
import os
from dataclasses import dataclass
from typing import Callable, Optional, TypeVar

from gmpy2 import iroot, mpq, mpz

from .errors import DivisionByZero, PrecisionExhausted
from .expr import (Add, Div, Floor, Frac, Mul, Pow, Rat, RealExpr, Sub,
                   as_expr, canonical, render)

DEFAULT_PRECISION_CAP = 4096
START_BITS = 64
ENV_CAP = "PLURIBOUND_PRECISION_CAP"

T = TypeVar("T")


def resolve_cap(precision_cap: Optional[int] = None) -> int:
    if precision_cap is not None:
        if precision_cap < START_BITS:
            raise ValueError(f"precision cap must be >= {START_BITS} bits")
        return int(precision_cap)
    env = os.environ.get(ENV_CAP)
    if env:
        try:
            cap = int(env)
        except ValueError:
            raise ValueError(f"{ENV_CAP} must be an integer, got {env!r}")
        if cap < START_BITS:
            raise ValueError(f"{ENV_CAP} must be >= {START_BITS}")
        return cap
    return DEFAULT_PRECISION_CAP


class Order(enum.Enum):
    LT = -1
    EQ = 0
    GT = 1


class _Unresolved(Exception):
    """Internal: the interval at the current precision cannot answer the
    question (denominator straddles zero, floor undecided)."""


@dataclass(frozen=True, slots=True)
class Interval:
    """Closed interval with exact rational endpoints."""

    lo: mpq
    hi: mpq

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"inverted interval [{self.lo}, {self.hi}]")

    @property
    def width(self) -> mpq:
        return self.hi - self.lo

    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, q) -> bool:
        return self.lo <= mpq(q) <= self.hi

    def encloses(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)


def _point(q: mpq) -> Interval:
    return Interval(q, q)


def _iv_add(a: Interval, b: Interval) -> Interval:
    return Interval(a.lo + b.lo, a.hi + b.hi)


def _iv_sub(a: Interval, b: Interval) -> Interval:
    return Interval(a.lo - b.hi, a.hi - b.lo)


def _iv_mul(a: Interval, b: Interval) -> Interval:
    ps = (a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi)
    return Interval(min(ps), max(ps))


def _iv_div(a: Interval, b: Interval) -> Interval:
    if b.lo <= 0 <= b.hi:
        # cannot certify the denominator away from zero at this precision
        raise _Unresolved
    inv = Interval(1 / b.hi, 1 / b.lo)
    return _iv_mul(a, inv)


@functools.lru_cache(maxsize=None)
def _root_bracket(p: mpz, q: mpz, k: int, bits: int) -> Interval:
    """Bracket (p/q)^(1/k) within 2^-bits * (1/q-ish) using integer roots."""
    scaled = p * q ** (k - 1) * (mpz(1) << (k * bits))
    r, exact = iroot(scaled, k)
    den = q * (mpz(1) << bits)
    if exact:
        return _point(mpq(r, den))
    return Interval(mpq(r, den), mpq(r + 1, den))


def _pow_bracket(base: mpq, num: int, den: int, bits: int) -> Interval:
    x = base ** num  # exact rational
    if den == 1:
        return _point(x)
    return _root_bracket(x.numerator, x.denominator, den, bits)


def enclose(e: RealExpr, bits: int) -> Interval:
    """One-shot certified enclosure of ``e`` at the given bracket precision.

    Raises the internal ``_Unresolved`` when the tree cannot be evaluated at
    this precision (division whose denominator interval straddles zero, or
    floor/frac whose argument interval straddles an integer); callers inside
    this module retry at doubled precision.
    """
    if isinstance(e, Rat):
        return _point(e.value)
    if isinstance(e, Pow):
        return _pow_bracket(e.base, e.num, e.den, bits)
    if isinstance(e, Add):
        return _iv_add(enclose(e.left, bits), enclose(e.right, bits))
    if isinstance(e, Sub):
        return _iv_sub(enclose(e.left, bits), enclose(e.right, bits))
    if isinstance(e, Mul):
        return _iv_mul(enclose(e.left, bits), enclose(e.right, bits))
    if isinstance(e, Div):
        return _iv_div(enclose(e.left, bits), enclose(e.right, bits))
    if isinstance(e, Floor):
        i = enclose(e.arg, bits)
        flo = i.lo.numerator // i.lo.denominator
        fhi = i.hi.numerator // i.hi.denominator
        if flo == fhi:
            return _point(mpq(flo))
        raise _Unresolved
    if isinstance(e, Frac):
        i = enclose(e.arg, bits)
        flo = i.lo.numerator // i.lo.denominator
        fhi = i.hi.numerator // i.hi.denominator
        if flo == fhi:
            return Interval(i.lo - flo, i.hi - flo)
        raise _Unresolved
    raise TypeError(f"not a RealExpr: {e!r}")


def _refine(e: RealExpr, probe: Callable[[Interval], Optional[T]],
            precision_cap: Optional[int], what: str) -> T:
    """Evaluate ``probe`` on enclosures of ``e`` at doubling precision until
    it returns a value; honest failure at the cap."""
    cap = resolve_cap(precision_cap)
    bits = min(START_BITS, cap)
    while True:
        try:
            result = probe(enclose(e, bits))
        except _Unresolved:
            result = None
        if result is not None:
            return result
        if bits >= cap:
            raise PrecisionExhausted(f"cannot certify {what}", cap)
        bits = min(bits * 2, cap)


def sign_of(e: "RealExpr | int", *, precision_cap: Optional[int] = None) -> int:
    """Certified sign (-1, 0, +1).  Zero only via symbolic cancellation."""
    e = as_expr(e)
    c = canonical(e)
    s = c.definite_sign()
    if s is not None:
        return s

    def probe(i: Interval) -> Optional[int]:
        if i.lo > 0:
            return 1
        if i.hi < 0:
            return -1
        if i.is_point():  # exact zero slipped past canonicalization
            return 0
        return None

    # probe returning 0 must survive the "is not None" filter; box the result
    def boxed(i: Interval) -> Optional[tuple]:
        r = probe(i)
        return None if r is None else (r,)

    return _refine(e, boxed, precision_cap, f"sign of {render(e)}")[0]


def compare(a: RealExpr, b: RealExpr, *,
            precision_cap: Optional[int] = None) -> Order:
    """Certified three-way comparison.  EQ requires the canonical difference
    to collapse to rational zero (or an exact point enclosure)."""
    s = sign_of(Sub(as_expr(a), as_expr(b)), precision_cap=precision_cap)
    return Order(s)


def is_rational(e: RealExpr) -> Optional[mpq]:
    """The exact rational value of ``e`` if its canonical form is rational."""
    c = canonical(as_expr(e))
    if c.is_rational():
        return c.const
    return None


def floor_of(e: RealExpr, *, precision_cap: Optional[int] = None) -> int:
    """Certified floor.  Exact for canonically-rational values; otherwise
    refines until the enclosure settles inside one integer step."""
    e = as_expr(e)
    q = is_rational(e)
    if q is not None:
        return int(q.numerator // q.denominator)

    def probe(i: Interval) -> Optional[int]:
        flo = i.lo.numerator // i.lo.denominator
        fhi = i.hi.numerator // i.hi.denominator
        if flo == fhi:
            return int(flo)
        return None

    return _refine(e, probe, precision_cap, f"floor of {render(e)}")


def frac_of(e: RealExpr, *, precision_cap: Optional[int] = None) -> RealExpr:
    """The exact fractional part ``e - floor(e)`` as an expression."""
    f = floor_of(e, precision_cap=precision_cap)
    return Sub(e, Rat(mpq(f)))


def enclosure(e: RealExpr, *, width: mpq,
              precision_cap: Optional[int] = None) -> Interval:
    """An enclosure of ``e`` no wider than ``width``."""
    e = as_expr(e)
    target = mpq(width)
    if target <= 0:
        raise ValueError("width must be positive")

    def probe(i: Interval) -> Optional[Interval]:
        return i if i.width <= target else None

    return _refine(e, probe, precision_cap, f"enclosure of width {target}")


def decimal_enclosure(e: RealExpr, digits: int = 30, *,
                      precision_cap: Optional[int] = None) -> tuple:
    """Outward-rounded decimal strings (lo, hi) with ``digits`` places."""
    if digits < 1:
        raise ValueError("digits must be >= 1")
    scale = mpz(10) ** digits
    i = enclosure(e, width=mpq(1, scale), precision_cap=precision_cap)
    lo = (i.lo.numerator * scale) // i.lo.denominator           # floor
    hi = -((-i.hi.numerator * scale) // i.hi.denominator)       # ceil
    return (_place(lo, digits), _place(hi, digits))


def _place(scaled: mpz, digits: int) -> str:
    sign = "-" if scaled < 0 else ""
    s = str(abs(int(scaled))).rjust(digits + 1, "0")
    return f"{sign}{s[:-digits]}.{s[-digits:]}"
