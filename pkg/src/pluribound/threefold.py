"""Threshold systems for 3-fold pluricanonical behaviour.

Three families are implemented, all sharing the same skeleton: for a genus
parameter g (and a level n or degree l), each admissible integer branch
parameter m yields a conjunction of lower bounds on a volume-type quantity
alpha, and the effective threshold is the minimum over branches of the least
lattice value satisfying the conjunction.

* :func:`nv_threshold` — the plurigenus non-vanishing system (integer
  lattice).  Branch bounds: two constant floors, two genus fractions, two
  pencil bounds at beta = sqrt(m+1) (one weighted by b = (2g-3)/(2g-1)), the
  linear fibration step 12(n+1)m - 3, and the fibre floor 3/n.  A branch m is
  admissible when (m+1) b^2 > 4.

* :func:`trican_threshold` — the same skeleton tuned for the RHS-2 variant:
  halved constant floors, weight (4g-5)/(2g-1), step 36m - 3, admissibility
  (m+1) b^2 > 4 with the new weight and m >= 1.

* :func:`bir_threshold` / :func:`map4_threshold` / :func:`map3_threshold` /
  :func:`map2_threshold` — the birationality systems, in units of 2^(1/3).
  All bounds are strict here.  The degree-l system (l >= 5) adds, for odd l,
  the trican family's exact infimum as an absolute bound
  (``low-degree-system``), and, when beta' = sqrt(32) g / D < 1 (D = g(l-1) -
  (l+1)), an extra branch carrying only the weighted pencil bound at beta = 1.
  The specialized l = 4, 3, 2 systems adjust the two-point step coefficients
  (l=3 doubles the step to 12 and halves the two-point floor) and never see
  the extra branch ((3g-5)^2 > 32 g^2 has no solutions).

:func:`all_l_threshold` maximizes the degree-l system over l in [5, l_max],
certifying along the way that the tail of the sweep is non-increasing, so
that truncation at l_max is sound.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Optional

from gmpy2 import mpq

from .bounds import (Bound, Branch, ThresholdReport, minimize_over_m)
from .enclose import Order, compare, floor_of
from .errors import DomainError, TailNotMonotone
from .expr import ONE, Pow, RealExpr, as_expr, rational, sqrt

CBRT2 = Pow(mpq(2), 1, 3)
SQRT2 = Pow(mpq(2), 1, 2)


def _check_int(name: str, value, minimum: int) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise DomainError(f"{name} must be an integer, got {value!r}")
    if value < minimum:
        raise DomainError(f"{name} must be >= {minimum}, got {value}")
    return value


# --------------------------------------------------------------------------
# non-vanishing family
# --------------------------------------------------------------------------

def _nv_m_min(g: int) -> int:
    # admissibility: (m+1) (2g-3)^2 > 4 (2g-1)^2, which also forces m+1 > 4
    p, q = 2 * g - 3, 2 * g - 1
    m = 0
    while (m + 1) * p * p <= 4 * q * q:
        m += 1
    return m


def _nv_branch(g: int, n: int, m: int) -> Branch:
    p = 2 * g - 3
    s = sqrt(m + 1)
    b = rational(p, 2 * g - 1)
    bounds = (
        Bound(as_expr(3), strict=False, label="min-alpha"),
        Bound(rational(6 * g - 3, p), strict=True, label="genus-frac"),
        Bound((3 * s + 6) / (s - 2), strict=True, label="pencil-free"),
        Bound((3 * s + 6) / (b * s - 2), strict=True, label="pencil-weighted"),
        Bound(as_expr(6), strict=False, label="min-alpha-2pt"),
        Bound(rational(12 * g - 6, p), strict=True, label="genus-frac-2pt"),
        Bound(as_expr(12 * (n + 1) * m - 3), strict=False, lattice_form=True,
              label="fibre-step"),
        Bound(rational(3, n), strict=False, label="fibre-min"),
    )
    return Branch(f"m={m}", bounds)


def nv_threshold(g: int, n: int, *,
                 precision_cap: Optional[int] = None) -> ThresholdReport:
    """Effective threshold of the level-n non-vanishing system at genus g."""
    _check_int("g", g, 2)
    _check_int("n", n, 1)
    return minimize_over_m(
        lambda m: _nv_branch(g, n, m), _nv_m_min(g), family="nv",
        monotone_lattice=lambda m: 12 * (n + 1) * m - 3,
        precision_cap=precision_cap)


def nv_heuristic_m(g: int, n: int, *,
                   precision_cap: Optional[int] = None) -> int:
    """The closed-form branch guess floor(beta'^2) with
    beta' = (1 + sqrt(1 + b(b+1)/(4(n+1)))) / b.  Always admissible."""
    _check_int("g", g, 2)
    _check_int("n", n, 1)
    b = mpq(2 * g - 3, 2 * g - 1)
    radicand = 1 + b * (b + 1) / (4 * (n + 1))
    beta = (1 + sqrt(radicand)) / rational(b)
    return floor_of(beta * beta, precision_cap=precision_cap)


# --------------------------------------------------------------------------
# RHS-2 (tricanonical-type) variant
# --------------------------------------------------------------------------

def _trican_branch(g: int, m: int) -> Branch:
    p2 = 4 * g - 5
    s = sqrt(m + 1)
    b2 = rational(p2, 2 * g - 1)
    bounds = (
        Bound(rational(3, 2), strict=False, label="min-alpha"),
        Bound(rational(3 * (2 * g - 1), p2), strict=True, label="genus-frac"),
        Bound((3 * s + 6) / (2 * s - 2), strict=True, label="pencil-free"),
        Bound((3 * s + 6) / (b2 * s - 2), strict=True, label="pencil-weighted"),
        Bound(as_expr(3), strict=False, label="min-alpha-2pt"),
        Bound(rational(6 * (2 * g - 1), p2), strict=True, label="genus-frac-2pt"),
        Bound(as_expr(36 * m - 3), strict=False, lattice_form=True,
              label="fibre-step"),
        Bound(rational(3, 2), strict=False, label="fibre-min"),
    )
    return Branch(f"m={m}", bounds)


@functools.lru_cache(maxsize=None)
def trican_threshold(g: int, *,
                     precision_cap: Optional[int] = None) -> ThresholdReport:
    """Effective threshold of the RHS-2 variant at genus g."""
    _check_int("g", g, 2)
    p2, q2 = 4 * g - 5, 2 * g - 1
    m = 1
    while (m + 1) * p2 * p2 <= 4 * q2 * q2:
        m += 1
    return minimize_over_m(
        lambda k: _trican_branch(g, k), m, family="trican",
        monotone_lattice=lambda k: 36 * k - 3,
        precision_cap=precision_cap)


# --------------------------------------------------------------------------
# birationality family (units of 2^(1/3))
# --------------------------------------------------------------------------

# per-kind two-point step coefficient and two-point floor coefficient
_BIR_KINDS = {
    "general": (8, 6),
    "map4": (8, 6),
    "map3": (12, 3),
    "map2": (8, 6),
}


def _bir_branch(kind: str, l: int, g: int, m: int,
                low_degree: Optional[Bound]) -> Branch:
    D = g * (l - 1) - (l + 1)
    s = sqrt(m + 1)
    step2, floor2 = _BIR_KINDS[kind]
    bounds = [
        Bound(3 * g * CBRT2 * (s + 2 * SQRT2) / (s * D - 4 * g * SQRT2),
              strict=True, label="pencil-weighted"),
        Bound(9 * g * CBRT2 / as_expr(D), strict=True, label="genus-frac"),
        Bound(3 * (4 * l * m - 1) * CBRT2, strict=True, lattice_form=True,
              label="fibre-step"),
        Bound(3 * CBRT2 / as_expr(l - 1), strict=True, label="fibre-min"),
        Bound(6 * (step2 * m - 1) * CBRT2, strict=True, lattice_form=True,
              label="fibre-step-2pt"),
        Bound(floor2 * CBRT2, strict=True, label="min-alpha-2pt"),
    ]
    if low_degree is not None:
        bounds.append(low_degree)
    return Branch(f"m={m}", tuple(bounds))


def _bir_core(kind: str, family: str, l: int, g: int,
              precision_cap: Optional[int]) -> ThresholdReport:
    D = g * (l - 1) - (l + 1)
    if D <= 0:
        raise DomainError(f"degenerate system: g(l-1)-(l+1) = {D} <= 0")
    m = 1
    while (m + 1) * D * D <= 32 * g * g:
        m += 1
    low_degree = None
    if kind == "general" and l % 2 == 1:
        tr = trican_threshold(g, precision_cap=precision_cap)
        low_degree = Bound(tr.infimum.value, tr.infimum.strict,
                       label="low-degree-system")
    extras = []
    if kind == "general" and D * D > 32 * g * g:
        # beta' < 1: limiting branch with only the weighted pencil bound
        val = 3 * g * CBRT2 * (1 + 2 * SQRT2) / (D - 4 * g * SQRT2)
        extras.append(Branch("beta-limit",
                             (Bound(val, strict=True, label="pencil-weighted"),)))
    step2 = _BIR_KINDS[kind][0]
    return minimize_over_m(
        lambda k: _bir_branch(kind, l, g, k, low_degree), m, family=family,
        monotone_lattice=lambda k: max(3 * (4 * l * k - 1),
                                       6 * (step2 * k - 1)) + 1,
        unit=CBRT2, extra_branches=extras, precision_cap=precision_cap)


def bir_threshold(l: int, g: int, *,
                  precision_cap: Optional[int] = None) -> ThresholdReport:
    """Birationality threshold of the degree-l system (l >= 5), at genus g,
    in units of 2^(1/3)."""
    _check_int("l", l, 5)
    _check_int("g", g, 2)
    return _bir_core("general", "bir", l, g, precision_cap)


def map4_threshold(g: int, *,
                   precision_cap: Optional[int] = None) -> ThresholdReport:
    _check_int("g", g, 2)
    return _bir_core("map4", "map4", 4, g, precision_cap)


def map3_threshold(g: int, *,
                   precision_cap: Optional[int] = None) -> ThresholdReport:
    _check_int("g", g, 3)
    return _bir_core("map3", "map3", 3, g, precision_cap)


def map2_threshold(g: int, *,
                   precision_cap: Optional[int] = None) -> ThresholdReport:
    _check_int("g", g, 4)
    return _bir_core("map2", "map2", 2, g, precision_cap)


def bir_heuristic_m(l: int, g: int) -> Optional[int]:
    """floor(beta'^2) = floor(32 g^2 / D^2), or None when beta' < 1 (the
    limiting branch is the guess then)."""
    _check_int("l", l, 2)
    _check_int("g", g, 2)
    D = g * (l - 1) - (l + 1)
    if D <= 0:
        raise DomainError(f"degenerate system: g(l-1)-(l+1) = {D} <= 0")
    m = (32 * g * g) // (D * D)
    return int(m) if m >= 1 else None


def f_value(l: int, g: int) -> RealExpr:
    """The closed-form threshold 3*2^(1/3)*(4*l*floor(32 g^2/D^2) - 1).

    Matches the degree-l system on the heuristic branch; only meaningful when
    that branch exists (beta' >= 1)."""
    _check_int("l", l, 2)
    _check_int("g", g, 2)
    D = g * (l - 1) - (l + 1)
    if D <= 0:
        raise DomainError(f"degenerate system: g(l-1)-(l+1) = {D} <= 0")
    m = (32 * g * g) // (D * D)
    return 3 * (4 * l * m - 1) * CBRT2


@dataclass(frozen=True, slots=True)
class AllLReport:
    """Maximum of the degree-l thresholds over l in [5, l_max]."""

    g: int
    l_star: int
    report: ThresholdReport
    l_max: int
    off_heuristic: tuple  # l where the winning branch differs from the guess


def all_l_threshold(g: int, *, l_max: int = 200,
                    precision_cap: Optional[int] = None) -> AllLReport:
    """max over l in [5, l_max] of bir_threshold(l, g), with a certified
    non-increasing tail over [150, l_max] justifying the truncation."""
    _check_int("g", g, 2)
    _check_int("l_max", l_max, 160)
    best_l, best = 5, bir_threshold(5, g, precision_cap=precision_cap)
    attained = {5: best.attained_lattice}
    off = []
    reports = {5: best}
    for l in range(6, l_max + 1):
        rep = bir_threshold(l, g, precision_cap=precision_cap)
        reports[l] = rep
        attained[l] = rep.attained_lattice
        if compare(rep.infimum.value, best.infimum.value,
                   precision_cap=precision_cap) is Order.GT:
            best_l, best = l, rep
    for l in range(5, l_max + 1):
        mh = bir_heuristic_m(l, g)
        expected = "beta-limit" if mh is None else f"m={mh}"
        if reports[l].branch_id != expected:
            off.append(l)
    for l in range(150, l_max):
        if attained[l + 1] > attained[l]:
            raise TailNotMonotone(
                f"degree sweep increased at l={l + 1} (g={g}): "
                f"{attained[l]} -> {attained[l + 1]}")
    return AllLReport(g=g, l_star=best_l, report=best, l_max=l_max,
                      off_heuristic=tuple(off))
