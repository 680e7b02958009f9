"""Exact real expressions over rationals and radicals.

An expression is an immutable tree built from rational leaves, rational powers
of positive rationals (radicals), the four field operations, and floor/frac.
Building an expression never evaluates anything; all numeric questions go
through :mod:`pluribound.enclose`.

Every expression also has a *canonical form* (:func:`canonical`): either an
exact rational, or a collected sum ``const + sum(coeff * product-of-radicals)``
with radical bases factored into primes and exponents reduced into (0, 1), or
an *opaque* marker for shapes that do not normalize (division by a multi-term
sum, floor/frac of irrationals).  Canonicalization is what lets the comparison
engine return certified equalities and cheap sign decisions: ``33*sqrt(2) -
32*sqrt(2)`` collapses to ``sqrt(2)``, ``2**(3/2)`` to ``2*sqrt(2)``,
``sqrt(19/18)`` to ``(1/6)*sqrt(2)*sqrt(19)``, and a difference of equal
algebraic sums collapses to the rational zero.

Opaque forms are handled honestly: they still get certified interval
enclosures (the enclosure walks the original tree), but no algebraic identity
is assumed about them.  In particular division by a multi-term sum is *not*
auto-rationalized; keeping it opaque preserves an evaluation route independent
of any hand-derived closed form.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Optional, Union

from gmpy2 import isqrt, mpq, mpz

from .errors import DivisionByZero, DomainError

RationalLike = Union[int, mpz, mpq]

#: Distribute products of sums only while the result stays below this many
#: terms; beyond it the product is kept opaque (never reached in practice).
_DISTRIBUTE_LIMIT = 64

#: Trial-division bound for radical bases.  A residual factor below the square
#: of this bound is provably prime; larger residuals are kept as opaque
#: "pseudo-prime" bases, which weakens simplification but never soundness.
_TRIAL_LIMIT = 1_000_000


# --------------------------------------------------------------------------
# expression nodes
# --------------------------------------------------------------------------

class RealExpr:
    """Base class; subclasses are frozen dataclasses.  Operators build trees."""

    __slots__ = ()

    def __add__(self, other: "RealExpr | RationalLike") -> "RealExpr":
        return Add(self, as_expr(other))

    def __radd__(self, other: RationalLike) -> "RealExpr":
        return Add(as_expr(other), self)

    def __sub__(self, other: "RealExpr | RationalLike") -> "RealExpr":
        return Sub(self, as_expr(other))

    def __rsub__(self, other: RationalLike) -> "RealExpr":
        return Sub(as_expr(other), self)

    def __mul__(self, other: "RealExpr | RationalLike") -> "RealExpr":
        return Mul(self, as_expr(other))

    def __rmul__(self, other: RationalLike) -> "RealExpr":
        return Mul(as_expr(other), self)

    def __truediv__(self, other: "RealExpr | RationalLike") -> "RealExpr":
        rhs = as_expr(other)
        if isinstance(rhs, Rat) and rhs.value == 0:
            raise DivisionByZero("division by zero")
        return Div(self, rhs)

    def __rtruediv__(self, other: RationalLike) -> "RealExpr":
        if isinstance(self, Rat) and self.value == 0:
            raise DivisionByZero("division by zero")
        return Div(as_expr(other), self)

    def __neg__(self) -> "RealExpr":
        return Sub(_ZERO, self)


@dataclass(frozen=True, slots=True)
class Rat(RealExpr):
    value: mpq


@dataclass(frozen=True, slots=True)
class Pow(RealExpr):
    """``base ** (num/den)`` with rational ``base > 0`` and exponent in lowest
    terms, ``num >= 1``, ``den >= 1``.  Use :func:`root` / :func:`sqrt` to
    construct these safely."""

    base: mpq
    num: int
    den: int


@dataclass(frozen=True, slots=True)
class Add(RealExpr):
    left: RealExpr
    right: RealExpr


@dataclass(frozen=True, slots=True)
class Sub(RealExpr):
    left: RealExpr
    right: RealExpr


@dataclass(frozen=True, slots=True)
class Mul(RealExpr):
    left: RealExpr
    right: RealExpr


@dataclass(frozen=True, slots=True)
class Div(RealExpr):
    left: RealExpr
    right: RealExpr


@dataclass(frozen=True, slots=True)
class Floor(RealExpr):
    arg: RealExpr


@dataclass(frozen=True, slots=True)
class Frac(RealExpr):
    arg: RealExpr


_ZERO = Rat(mpq(0))
_ONE = Rat(mpq(1))

ZERO = _ZERO
ONE = _ONE


def as_expr(x: "RealExpr | RationalLike") -> RealExpr:
    """Coerce an int/mpz/mpq to a rational leaf.  Floats are rejected: they
    carry binary rounding and would poison the exactness contract."""
    if isinstance(x, RealExpr):
        return x
    if isinstance(x, float):
        raise TypeError(
            "float is not exact; use rational(p, q) or an integer")
    if isinstance(x, (int, mpz)):
        return Rat(mpq(x))
    if isinstance(x, mpq):
        return Rat(x)
    # Fraction and friends
    try:
        return Rat(mpq(x))
    except Exception as exc:  # pragma: no cover - defensive
        raise TypeError(f"cannot interpret {x!r} as an exact real") from exc


def rational(p: RationalLike, q: RationalLike = 1) -> RealExpr:
    if isinstance(p, float) or isinstance(q, float):
        raise TypeError(
            "float is not exact; use rational(p, q) with integers")
    if q == 0:
        raise DivisionByZero("rational with zero denominator")
    return Rat(mpq(p) / mpq(q))


def _rational_value_of(x: "RealExpr | RationalLike") -> mpq:
    e = as_expr(x)
    c = canonical(e)
    if not c.is_rational():
        raise DomainError("radical base must be an exact rational value")
    return c.const


def root(k: int, x: "RealExpr | RationalLike") -> RealExpr:
    """The k-th root of a nonnegative rational value.

    The radicand may be any expression, but it must canonicalize to a
    rational; nested radicals are outside this engine's algebra.
    """
    if not isinstance(k, (int, mpz)) or k < 1:
        raise DomainError(f"root index must be a positive integer, got {k!r}")
    v = _rational_value_of(x)
    if v < 0:
        raise DomainError("root of a negative value")
    if v == 0:
        return _ZERO
    if k == 1 or v == 1:
        return Rat(v)
    return Pow(v, 1, int(k))


def sqrt(x: "RealExpr | RationalLike") -> RealExpr:
    return root(2, x)


def cbrt(x: "RealExpr | RationalLike") -> RealExpr:
    return root(3, x)


def floor_expr(x: "RealExpr | RationalLike") -> RealExpr:
    return Floor(as_expr(x))


def frac_expr(x: "RealExpr | RationalLike") -> RealExpr:
    return Frac(as_expr(x))


# --------------------------------------------------------------------------
# canonical forms
# --------------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class Radical:
    """``base ** (num/den)`` with ``base`` a prime (or a certified-hard
    residual composite) and exponent in lowest terms, strictly inside (0,1)."""

    base: int
    num: int
    den: int

    def exponent(self) -> mpq:
        return mpq(self.num, self.den)


Mono = tuple  # tuple[Radical, ...], sorted, nonempty
Term = tuple  # (mpq, Mono)


@dataclass(frozen=True, slots=True)
class Canonical:
    """``const + sum(coeff * mono)`` or an opaque wrapper.

    ``terms`` is sorted by monomial key, coefficients are nonzero and
    monomials distinct; if ``opaque`` is not None, the whole value is opaque
    and ``const``/``terms`` are meaningless (kept at 0/()).
    """

    const: mpq
    terms: tuple
    opaque: Optional[RealExpr] = None

    def is_opaque(self) -> bool:
        return self.opaque is not None

    def is_rational(self) -> bool:
        return self.opaque is None and not self.terms

    def is_integer(self) -> bool:
        return self.is_rational() and self.const.denominator == 1

    def definite_sign(self) -> Optional[int]:
        """-1/0/+1 if the sign is certain from the form alone, else None.

        For a collected sum whose constant part and coefficients all share a
        sign, the sign of the total is that sign (radicals are positive);
        this needs no independence assumption, so it is sound even with
        pseudo-prime bases.
        """
        if self.is_opaque():
            return None
        if not self.terms:
            c = self.const
            return 0 if c == 0 else (1 if c > 0 else -1)
        if self.const >= 0 and all(c > 0 for c, _ in self.terms):
            return 1
        if self.const <= 0 and all(c < 0 for c, _ in self.terms):
            return -1
        return None


def _mono_key(mono: Mono):
    return tuple((r.base, r.num, r.den) for r in mono)


def _sorted_terms(terms: dict) -> tuple:
    out = [(c, m) for m, c in terms.items() if c != 0]
    out.sort(key=lambda t: _mono_key(t[1]))
    return tuple(out)


def _rat(q: mpq) -> Canonical:
    return Canonical(q, ())


def _opaque(e: RealExpr) -> Canonical:
    return Canonical(mpq(0), (), e)


@functools.lru_cache(maxsize=None)
def _factorize(n: int) -> tuple:
    """Prime factorization of n >= 1 as ((p, e), ...).  Residuals above the
    trial-division range are returned as a single pseudo-prime factor."""
    assert n >= 1
    out = []
    for p in (2, 3, 5):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    f = 7
    increments = (4, 2, 4, 2, 4, 6, 2, 6)  # wheel mod 30
    i = 0
    limit = min(int(isqrt(n)), _TRIAL_LIMIT)
    while f <= limit:
        if n % f == 0:
            e = 0
            while n % f == 0:
                n //= f
                e += 1
            out.append((f, e))
            limit = min(int(isqrt(n)), _TRIAL_LIMIT)
        f += increments[i]
        i = (i + 1) % 8
    if n > 1:
        # n has no factor <= min(sqrt, limit): prime if below limit^2,
        # otherwise an unsplit residual used as an opaque base.
        out.append((int(n), 1))
    out.sort()
    return tuple(out)


def _mono_mul(a: Mono, b: Mono) -> tuple:
    """Multiply two monomials; returns (rational-spill, mono)."""
    exps: dict = {}
    for r in a + b:
        exps[r.base] = exps.get(r.base, mpq(0)) + r.exponent()
    spill = mpq(1)
    rads = []
    for base in sorted(exps):
        e = exps[base]
        k = e.numerator // e.denominator  # floor, e >= 0 here
        frac = e - k
        if k:
            spill *= mpq(base) ** int(k)
        if frac != 0:
            rads.append(Radical(base, int(frac.numerator), int(frac.denominator)))
    return spill, tuple(rads)


def _mono_inv(mono: Mono) -> tuple:
    """Invert a monomial: 1/prod(p^r) = (prod 1/p) * prod(p^(1-r))."""
    spill = mpq(1)
    rads = []
    for r in mono:
        spill /= r.base
        e = 1 - r.exponent()
        if e != 0:
            rads.append(Radical(r.base, int(e.numerator), int(e.denominator)))
    rads.sort(key=lambda r: (r.base, r.num, r.den))
    return spill, tuple(rads)


def _c_add(a: Canonical, b: Canonical, node: RealExpr, sign: int) -> Canonical:
    if a.is_opaque() or b.is_opaque():
        return _opaque(node)
    terms: dict = {m: c for c, m in a.terms}
    for c, m in b.terms:
        terms[m] = terms.get(m, mpq(0)) + sign * c
    return Canonical(a.const + sign * b.const, _sorted_terms(terms))


def _c_mul(a: Canonical, b: Canonical, node: RealExpr) -> Canonical:
    if a.is_opaque() or b.is_opaque():
        return _opaque(node)
    na = len(a.terms) + (1 if a.const != 0 else 0)
    nb = len(b.terms) + (1 if b.const != 0 else 0)
    if na * nb > _DISTRIBUTE_LIMIT:
        return _opaque(node)
    terms: dict = {}
    const = a.const * b.const
    for c, m in a.terms:
        cc = c * b.const
        if cc != 0:
            terms[m] = terms.get(m, mpq(0)) + cc
    for c, m in b.terms:
        cc = c * a.const
        if cc != 0:
            terms[m] = terms.get(m, mpq(0)) + cc
    for ca, ma in a.terms:
        for cb, mb in b.terms:
            spill, m = _mono_mul(ma, mb)
            c = ca * cb * spill
            if m:
                terms[m] = terms.get(m, mpq(0)) + c
            else:
                const += c
    return Canonical(const, _sorted_terms(terms))


def _c_div(a: Canonical, b: Canonical, node: RealExpr) -> Canonical:
    if a.is_opaque() or b.is_opaque():
        return _opaque(node)
    if b.is_rational():
        if b.const == 0:
            raise DivisionByZero("division by an expression certified zero")
        inv = _rat(1 / b.const)
        return _c_mul(a, inv, node)
    if b.const == 0 and len(b.terms) == 1:
        (c, m), = b.terms
        spill, minv = _mono_inv(m)
        inv = Canonical(mpq(0), ((spill / c, minv),)) if minv else _rat(spill / c)
        return _c_mul(a, inv, node)
    # division by a genuine multi-term sum stays opaque
    return _opaque(node)


def _c_pow(base: mpq, num: int, den: int) -> Canonical:
    coeff = mpq(1)
    exps: dict = {}
    for p, e in _factorize(int(base.numerator)):
        exps[p] = exps.get(p, mpq(0)) + mpq(e * num, den)
    for p, e in _factorize(int(base.denominator)):
        exps[p] = exps.get(p, mpq(0)) - mpq(e * num, den)
    rads = []
    for p in sorted(exps):
        e = exps[p]
        k = e.numerator // e.denominator  # floor works for negative e too
        frac = e - k
        if k:
            coeff *= mpq(p) ** int(k)
        if frac != 0:
            rads.append(Radical(p, int(frac.numerator), int(frac.denominator)))
    if not rads:
        return _rat(coeff)
    return Canonical(mpq(0), ((coeff, tuple(rads)),))


@functools.lru_cache(maxsize=None)
def canonical(e: RealExpr) -> Canonical:
    """Canonical form of an expression.  Idempotent: canonicalizing an
    expression rebuilt from a (non-opaque) canonical form returns an equal
    form."""
    if isinstance(e, Rat):
        return _rat(e.value)
    if isinstance(e, Pow):
        if e.base <= 0:
            raise DomainError("power base must be positive")
        if e.num < 1 or e.den < 1:
            raise DomainError("power exponent must be positive")
        return _c_pow(e.base, e.num, e.den)
    if isinstance(e, Add):
        return _c_add(canonical(e.left), canonical(e.right), e, +1)
    if isinstance(e, Sub):
        return _c_add(canonical(e.left), canonical(e.right), e, -1)
    if isinstance(e, Mul):
        return _c_mul(canonical(e.left), canonical(e.right), e)
    if isinstance(e, Div):
        return _c_div(canonical(e.left), canonical(e.right), e)
    if isinstance(e, Floor):
        c = canonical(e.arg)
        if c.is_rational():
            return _rat(mpq(c.const.numerator // c.const.denominator))
        return _opaque(e)
    if isinstance(e, Frac):
        c = canonical(e.arg)
        if c.is_rational():
            return _rat(c.const - (c.const.numerator // c.const.denominator))
        return _opaque(e)
    raise TypeError(f"not a RealExpr: {e!r}")


def to_expr(c: Canonical) -> RealExpr:
    """Rebuild an expression from a canonical form (identity for opaques)."""
    if c.is_opaque():
        return c.opaque
    acc: Optional[RealExpr] = None
    if c.const != 0 or not c.terms:
        acc = Rat(c.const)
    for coeff, mono in c.terms:
        t: RealExpr = Rat(coeff)
        for r in mono:
            t = Mul(t, Pow(mpq(r.base), r.num, r.den))
        acc = t if acc is None else Add(acc, t)
    assert acc is not None
    return acc


# --------------------------------------------------------------------------
# rendering
# --------------------------------------------------------------------------

def _render_q(q: mpq) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _render_radical(r: Radical) -> str:
    return f"{r.base}^({r.num}/{r.den})"


def _render_term(coeff: mpq, mono: Mono, lead: bool) -> str:
    parts = [_render_radical(r) for r in mono]
    mag = abs(coeff)
    if mag != 1:
        s = _render_q(mag)
        if mag.denominator != 1:
            s = f"({s})"
        parts.insert(0, s)
    body = "*".join(parts)
    if coeff < 0:
        return ("-" if lead else " - ") + body
    return body if lead else " + " + body


def render(e: RealExpr) -> str:
    """Deterministic human-readable form, canonical when possible."""
    c = canonical(e)
    if not c.is_opaque():
        if c.is_rational():
            return _render_q(c.const)
        out = ""
        lead = True
        if c.const != 0:
            out = _render_q(c.const)
            lead = False
        for coeff, mono in c.terms:
            out += _render_term(coeff, mono, lead)
            lead = False
        return out
    return _render_tree(e)


def _render_tree(e: RealExpr) -> str:
    if isinstance(e, Rat):
        v = _render_q(e.value)
        return f"({v})" if e.value < 0 or e.value.denominator != 1 else v
    if isinstance(e, Pow):
        base = _render_q(e.base)
        if e.base.denominator != 1:
            base = f"({base})"
        return f"{base}^({e.num}/{e.den})"
    if isinstance(e, (Add, Sub, Mul, Div)):
        op = {Add: " + ", Sub: " - ", Mul: "*", Div: "/"}[type(e)]
        left, right = _render_tree(e.left), _render_tree(e.right)
        if isinstance(e, (Mul, Div)):
            if isinstance(e.left, (Add, Sub)):
                left = f"({left})"
            if isinstance(e.right, (Add, Sub, Mul, Div)):
                right = f"({right})"
        elif isinstance(e, Sub) and isinstance(e.right, (Add, Sub)):
            right = f"({right})"
        return f"{left}{op}{right}"
    if isinstance(e, Floor):
        return f"floor({_render_tree(e.arg)})"
    if isinstance(e, Frac):
        return f"frac({_render_tree(e.arg)})"
    raise TypeError(f"not a RealExpr: {e!r}")


# --------------------------------------------------------------------------
# parsing (the CLI eval grammar)
# --------------------------------------------------------------------------

def parse_expr(text: str) -> RealExpr:
    """Parse ``ints, a/b, sqrt(x), cbrt(x), root(k, x), floor(x), frac(x),
    + - * /, x^k, x^(p/q), parentheses`` into an expression tree.

    ``^`` accepts an integer or a parenthesised rational exponent, so the
    strings produced by :func:`render` parse back to the same value.
    """
    from .errors import ParseError

    tokens = _tokenize(text)
    pos = 0

    def peek() -> Optional[str]:
        return tokens[pos] if pos < len(tokens) else None

    def take(expected: Optional[str] = None) -> str:
        nonlocal pos
        if pos >= len(tokens):
            raise ParseError(f"unexpected end of input (wanted {expected or 'more'})")
        tok = tokens[pos]
        if expected is not None and tok != expected:
            raise ParseError(f"expected {expected!r}, got {tok!r}")
        pos += 1
        return tok

    def parse_sum() -> RealExpr:
        node = parse_product()
        while peek() in ("+", "-"):
            op = take()
            rhs = parse_product()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def parse_product() -> RealExpr:
        node = parse_power()
        while peek() in ("*", "/"):
            op = take()
            rhs = parse_power()
            node = Mul(node, rhs) if op == "*" else Div(node, rhs)
        return node

    def parse_power() -> RealExpr:
        node = parse_atom()
        if peek() == "^":
            take()
            num, den = parse_exponent()
            node = _parsed_pow(node, num, den)
        return node

    def parse_exponent() -> tuple:
        tok = peek()
        if tok is not None and tok.isdigit():
            take()
            return int(tok), 1
        take("(")
        neg = False
        if peek() == "-":
            take()
            neg = True
        num_tok = take()
        if not num_tok.isdigit():
            raise ParseError(f"exponent must be rational, got {num_tok!r}")
        num, den = int(num_tok), 1
        if peek() == "/":
            take()
            den_tok = take()
            if not den_tok.isdigit():
                raise ParseError(f"exponent must be rational, got {den_tok!r}")
            den = int(den_tok)
            if den == 0:
                raise ParseError("zero denominator in exponent")
        take(")")
        return (-num if neg else num), den

    def parse_atom() -> RealExpr:
        tok = peek()
        if tok is None:
            raise ParseError("unexpected end of input")
        if tok == "-":
            take()
            return -parse_power()
        if tok == "(":
            take()
            node = parse_sum()
            take(")")
            return node
        if tok in ("sqrt", "cbrt", "floor", "frac"):
            take()
            take("(")
            arg = parse_sum()
            take(")")
            if tok == "sqrt":
                return sqrt(arg)
            if tok == "cbrt":
                return cbrt(arg)
            return Floor(arg) if tok == "floor" else Frac(arg)
        if tok == "root":
            take()
            take("(")
            k = parse_sum()
            take(",")
            arg = parse_sum()
            take(")")
            ck = canonical(k)
            if not ck.is_integer() or ck.const < 1:
                raise ParseError("root index must be a positive integer")
            return root(int(ck.const.numerator), arg)
        if tok.isdigit():
            take()
            return Rat(mpq(tok))
        raise ParseError(f"unexpected token {tok!r}")

    node = parse_sum()
    if pos != len(tokens):
        raise ParseError(f"trailing input at {tokens[pos]!r}")
    return node


def _parsed_pow(base: RealExpr, num: int, den: int) -> RealExpr:
    """``base ^ (num/den)`` with den >= 1.  Fractional exponents go through
    :func:`root`, so the base must be rational there (nested radicals are out
    of scope); integer exponents work for any expression."""
    if num == 0:
        return _ONE
    power: RealExpr = base
    for _ in range(abs(num) - 1):
        power = Mul(power, base)
    if den != 1:
        power = root(den, power)
    if num < 0:
        return Div(_ONE, power)
    return power


def _tokenize(text: str) -> list:
    from .errors import ParseError

    out = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            out.append(text[i:j])
            i = j
        elif ch.isalpha():
            j = i
            while j < len(text) and text[j].isalpha():
                j += 1
            word = text[i:j]
            if word not in ("sqrt", "cbrt", "root", "floor", "frac"):
                raise ParseError(f"unknown name {word!r}")
            out.append(word)
            i = j
        elif ch in "+-*/^(),":
            out.append(ch)
            i += 1
        else:
            raise ParseError(f"bad character {ch!r}")
    return out
