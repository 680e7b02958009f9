"""Effective statements in dimension d >= 3 driven by a volume profile.

A *profile* is the tuple (v_1, ..., v_{d-1}) of positive rational volume
floors for the intermediate dimensions.  Everything here is built from the
derived quantities

    mu_i = i / v_i^(1/i),        r_i = 2^(1/i) * mu_i = i * (2/v_i)^(1/i),

kept as exact expression trees throughout.  Four statement shapes are
covered:

* plurigenus non-vanishing: threshold d*Pi/(1 - {Pi}) on the multiplier
  alpha, where Pi = prod (mu_i + 1) and {x} is the fractional part
  (:func:`nv_alpha_threshold`), together with the largest usable multiplier
  strictly below (d/alpha + 1)*Pi (:func:`nv_multiplier`);

* birationality of the degree-l system: with P = prod (1 + r_i),
  s = 2P - 2 and t = d * 2^(1/d) * P, the system works for
  l > s + t/alpha + 1, giving the least degree :func:`bir_l_min` and the
  alpha-threshold t/(1 - {s}) past which the degree floor(s) + 2 suffices
  (:func:`bir_alpha_threshold`);

* the two dichotomy bounds (:func:`dichotomy_nv`, :func:`dichotomy_bir`)
  which consume only the prefix (v_1, ..., v_{d-2}) plus a degree l and a
  lower bound beta_bar on the relevant square root.

Default profiles exist for d = 3, 4, 5 at a given genus parameter g
(:func:`default_profile`); any other dimension needs an explicit profile.
Fractional-part formulas degenerate when their argument is an integer, which
is reported as :class:`~pluribound.errors.DegenerateFraction` rather than
silently picking a convention.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Optional, Sequence, Union

from gmpy2 import mpq

from .bounds import Bound
from .enclose import Order, compare, floor_of, is_rational
from .errors import DegenerateFraction, DomainError, UnsupportedDimension
from .expr import RealExpr, as_expr, rational, root

RationalLike = Union[int, str, Rational]

#: volume floor used for the threefold slot of the d = 4, 5 default profiles
DEFAULT_V3 = mpq(1, 2660)


def _to_mpq(name: str, value: "RationalLike | RealExpr") -> mpq:
    if isinstance(value, float):
        raise TypeError(f"{name} must be exact (int/Fraction/mpq/str), "
                        f"got float {value!r}")
    if isinstance(value, RealExpr):
        q = is_rational(value)
        if q is None:
            raise DomainError(f"{name} must be a rational value")
    else:
        try:
            q = mpq(value)
        except (TypeError, ValueError) as exc:
            raise DomainError(f"{name} is not a rational value: {value!r}") from exc
    if q <= 0:
        raise DomainError(f"{name} must be positive, got {q}")
    return q


def _check_d(d: int, minimum: int = 3) -> int:
    if not isinstance(d, int) or isinstance(d, bool) or d < minimum:
        raise UnsupportedDimension(f"dimension must be an integer >= {minimum}, "
                                   f"got {d!r}")
    return d


def default_profile(d: int, g: int) -> tuple:
    """Standard profile at genus parameter g: (2g-2, 1) for d = 3 and
    (2g-2, 1, 1/2660) for d = 4 and 5 (the d = 5 default only supports the
    dichotomy bounds, which use a length d-2 prefix)."""
    _check_d(d)
    if not isinstance(g, int) or isinstance(g, bool) or g < 2:
        raise DomainError(f"g must be an integer >= 2, got {g!r}")
    if d == 3:
        return (mpq(2 * g - 2), mpq(1))
    if d in (4, 5):
        return (mpq(2 * g - 2), mpq(1), DEFAULT_V3)
    raise UnsupportedDimension(
        f"no default profile in dimension {d}; pass an explicit one")


def _resolve_profile(d: int, profile: Optional[Sequence[RationalLike]],
                     g: Optional[int], need: int) -> tuple:
    if profile is None:
        if g is None:
            raise DomainError("need either a profile or a genus parameter g")
        profile = default_profile(d, g)
    vols = tuple(_to_mpq(f"v_{i + 1}", v) for i, v in enumerate(profile))
    if len(vols) < need:
        raise DomainError(f"profile must supply at least {need} volumes for "
                          f"d = {d}, got {len(vols)}")
    return vols


def mu(i: int, v: RationalLike) -> RealExpr:
    """mu_i = i / v^(1/i)."""
    if not isinstance(i, int) or isinstance(i, bool) or i < 1:
        raise DomainError(f"index must be a positive integer, got {i!r}")
    return as_expr(i) / root(i, rational(_to_mpq("v", v)))


def r_factor(i: int, v: RationalLike) -> RealExpr:
    """r_i = 2^(1/i) * mu_i = i * (2/v)^(1/i)."""
    if not isinstance(i, int) or isinstance(i, bool) or i < 1:
        raise DomainError(f"index must be a positive integer, got {i!r}")
    return as_expr(i) * root(i, rational(2 / _to_mpq("v", v)))


def _pi_product(vols: tuple, count: int) -> RealExpr:
    acc = as_expr(1)
    for i in range(1, count + 1):
        acc = acc * (mu(i, vols[i - 1]) + 1)
    return acc


def _p_product(vols: tuple, count: int) -> RealExpr:
    acc = as_expr(1)
    for i in range(1, count + 1):
        acc = acc * (r_factor(i, vols[i - 1]) + 1)
    return acc


def _published_integer(bound: Bound, *,
                       precision_cap: Optional[int] = None) -> tuple:
    """(printed integer, exact?) for a threshold bound: an exact integer
    value is printed as itself, everything else as the least integer above."""
    q = is_rational(bound.value)
    if q is not None and q.denominator == 1:
        return int(q), True
    return floor_of(bound.value, precision_cap=precision_cap) + 1, False


def _strict_below(e: RealExpr, *, precision_cap: Optional[int] = None) -> int:
    """Largest integer strictly below e."""
    q = is_rational(e)
    if q is not None and q.denominator == 1:
        return int(q) - 1
    return floor_of(e, precision_cap=precision_cap)


# --------------------------------------------------------------------------
# non-vanishing statements
# --------------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class HdNvReport:
    d: int
    profile: tuple
    pi: RealExpr
    pi_floor: int
    bound: Bound
    published: int
    published_exact: bool


def nv_alpha_threshold(d: int, profile: Optional[Sequence[RationalLike]] = None,
                       *, g: Optional[int] = None,
                       precision_cap: Optional[int] = None) -> HdNvReport:
    """Least multiplier threshold d*Pi/(1 - {Pi}), Pi = prod_{i<d} (mu_i+1).

    Raises DegenerateFraction when Pi is an integer."""
    _check_d(d)
    vols = _resolve_profile(d, profile, g, d - 1)
    pi = _pi_product(vols, d - 1)
    pf = floor_of(pi, precision_cap=precision_cap)
    frac = pi - pf
    if is_rational(frac) == 0:
        raise DegenerateFraction(
            "multiplier product is an integer; fractional-part threshold "
            "degenerates")
    thr = d * pi / (1 - frac)
    bound = Bound(thr, strict=True, label="nv-threshold")
    pub, exact = _published_integer(bound, precision_cap=precision_cap)
    return HdNvReport(d=d, profile=vols, pi=pi, pi_floor=pf, bound=bound,
                      published=pub, published_exact=exact)


def nv_multiplier(alpha: RationalLike, d: int,
                  profile: Optional[Sequence[RationalLike]] = None,
                  *, g: Optional[int] = None,
                  precision_cap: Optional[int] = None) -> int:
    """Largest usable multiplier: the greatest integer strictly below
    (d/alpha + 1) * Pi."""
    _check_d(d)
    a = _to_mpq("alpha", alpha)
    vols = _resolve_profile(d, profile, g, d - 1)
    pi = _pi_product(vols, d - 1)
    return _strict_below((rational(d / a) + 1) * pi,
                         precision_cap=precision_cap)


# --------------------------------------------------------------------------
# birationality statements
# --------------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class HdBirReport:
    d: int
    profile: tuple
    s: RealExpr
    t: RealExpr
    s_floor: int
    l_limit: int          # floor(s) + 2: the degree past the threshold
    bound: Bound          # alpha > t / (1 - {s})
    published: int
    published_exact: bool


def bir_s_t(d: int, profile: Optional[Sequence[RationalLike]] = None,
            *, g: Optional[int] = None) -> tuple:
    """(s, t) = (2P - 2, d * 2^(1/d) * P), P = prod_{i<d} (1 + r_i)."""
    _check_d(d)
    vols = _resolve_profile(d, profile, g, d - 1)
    p = _p_product(vols, d - 1)
    return 2 * p - 2, d * root(d, 2) * p


def bir_alpha_threshold(d: int,
                        profile: Optional[Sequence[RationalLike]] = None,
                        *, g: Optional[int] = None,
                        precision_cap: Optional[int] = None) -> HdBirReport:
    """Multiplier threshold t/(1 - {s}) past which degree floor(s) + 2
    suffices for birationality."""
    _check_d(d)
    vols = _resolve_profile(d, profile, g, d - 1)
    s, t = bir_s_t(d, vols)
    sf = floor_of(s, precision_cap=precision_cap)
    frac = s - sf
    if is_rational(frac) == 0:
        raise DegenerateFraction(
            "degree offset is an integer; fractional-part threshold "
            "degenerates")
    thr = t / (1 - frac)
    bound = Bound(thr, strict=True, label="bir-threshold")
    pub, exact = _published_integer(bound, precision_cap=precision_cap)
    return HdBirReport(d=d, profile=vols, s=s, t=t, s_floor=sf,
                       l_limit=sf + 2, bound=bound, published=pub,
                       published_exact=exact)


def bir_l_min(alpha: RationalLike, d: int,
              profile: Optional[Sequence[RationalLike]] = None,
              *, g: Optional[int] = None,
              precision_cap: Optional[int] = None) -> int:
    """Least degree l with l - 1 > s + t/alpha."""
    _check_d(d)
    a = _to_mpq("alpha", alpha)
    vols = _resolve_profile(d, profile, g, d - 1)
    s, t = bir_s_t(d, vols)
    return _strict_below(s + t / rational(a),
                         precision_cap=precision_cap) + 2


# --------------------------------------------------------------------------
# dichotomy bounds (profile prefix of length d-2)
# --------------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class DichotomyReport:
    d: int
    l: int
    beta_bar: mpq
    beta1: RealExpr       # admissibility floor on beta_bar
    beta2: RealExpr       # cap actually used when below beta_bar
    amplification: RealExpr
    bound: Bound
    published: int
    published_exact: bool


def _check_l(l) -> int:
    if not isinstance(l, int) or isinstance(l, bool) or l < 1:
        raise DomainError(f"l must be a positive integer, got {l!r}")
    return l


def _certify_gt(a: RealExpr, b: RealExpr, what: str,
                precision_cap: Optional[int]) -> None:
    if compare(a, b, precision_cap=precision_cap) is not Order.GT:
        raise DomainError(what)


def dichotomy_nv(d: int, l: int, beta_bar: RationalLike,
                 profile: Optional[Sequence[RationalLike]] = None,
                 *, g: Optional[int] = None,
                 precision_cap: Optional[int] = None) -> DichotomyReport:
    """Non-vanishing side of the dichotomy: with R = prod_{i<=d-2} (mu_i+1)
    and amplification B = 1 + (d-1)/min(beta_bar, beta2), the bound is
    alpha > d*B*R / (l - B*R).  Needs l > R and beta_bar > beta1."""
    _check_d(d)
    _check_l(l)
    bb = _to_mpq("beta_bar", beta_bar)
    vols = _resolve_profile(d, profile, g, d - 2)
    R = _pi_product(vols, d - 2)
    le = as_expr(l)
    _certify_gt(le, R, f"need l > R (l = {l})", precision_cap)
    beta1 = (d - 1) * R / (le - R)
    _certify_gt(rational(bb), beta1,
                f"beta_bar = {bb} does not clear the admissibility floor",
                precision_cap)
    beta2 = (d - 1) * (le + R) / (le - R)
    used = rational(bb) if compare(rational(bb), beta2,
                                   precision_cap=precision_cap) is not Order.GT \
        else beta2
    B = 1 + as_expr(d - 1) / used
    denom = le - B * R
    _certify_gt(denom, as_expr(0),
                "amplified volume exceeds the degree (l - B*R <= 0)",
                precision_cap)
    bound = Bound(d * B * R / denom, strict=True, label="dichotomy-nv")
    pub, exact = _published_integer(bound, precision_cap=precision_cap)
    return DichotomyReport(d=d, l=l, beta_bar=bb, beta1=beta1, beta2=beta2,
                           amplification=B, bound=bound, published=pub,
                           published_exact=exact)


def dichotomy_bir(d: int, l: int, beta_bar: RationalLike,
                  profile: Optional[Sequence[RationalLike]] = None,
                  *, g: Optional[int] = None,
                  precision_cap: Optional[int] = None) -> DichotomyReport:
    """Birationality side of the dichotomy: with P = prod_{i<=d-2} (1+r_i),
    c = (d-1)*2^(1/(d-1)) and B = 1 + c/min(beta_bar, beta2), the bound is
    alpha > d*2^(1/d)*B*P / (l+1 - 2*B*P).  Needs l+1 > 2P and
    beta_bar > beta1."""
    _check_d(d)
    _check_l(l)
    bb = _to_mpq("beta_bar", beta_bar)
    vols = _resolve_profile(d, profile, g, d - 2)
    P = _p_product(vols, d - 2)
    c = (d - 1) * root(d - 1, 2)
    l1 = as_expr(l + 1)
    _certify_gt(l1, 2 * P, f"need l + 1 > 2P (l = {l})", precision_cap)
    beta1 = 2 * c * P / (l1 - 2 * P)
    _certify_gt(rational(bb), beta1,
                f"beta_bar = {bb} does not clear the admissibility floor",
                precision_cap)
    beta2 = c * (l1 + 4 * P) / (2 * (l1 - 2 * P))
    used = rational(bb) if compare(rational(bb), beta2,
                                   precision_cap=precision_cap) is not Order.GT \
        else beta2
    B = 1 + c / used
    denom = l1 - 2 * B * P
    _certify_gt(denom, as_expr(0),
                "amplified volume exceeds the degree (l+1 - 2*B*P <= 0)",
                precision_cap)
    bound = Bound(d * root(d, 2) * B * P / denom, strict=True,
                  label="dichotomy-bir")
    pub, exact = _published_integer(bound, precision_cap=precision_cap)
    return DichotomyReport(d=d, l=l, beta_bar=bb, beta1=beta1, beta2=beta2,
                           amplification=B, bound=bound, published=pub,
                           published_exact=exact)
