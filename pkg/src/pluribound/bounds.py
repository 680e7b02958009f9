"""Algebra of one-sided lower bounds and the discrete branch optimizer.

A :class:`Bound` is a constraint "x > v" (strict) or "x >= v" on a real
quantity, with the threshold value held as an exact expression.  The two
operations that matter downstream:

* :func:`combine_max` — the conjunction of several bounds is the single bound
  at the maximum threshold (certified comparisons; on ties strictness is
  OR-ed and all attaining condition labels are kept);
* :func:`min_lattice` — the least integer multiple of a unit satisfying a
  bound ("attained" reading: an exact integer coefficient k gives k, or k+1
  when the bound is strict; anything else gives floor+1).

A *lattice-form* bound is one whose threshold is an integer multiple of the
working unit by construction (the step bounds of the threshold families).
When such a bound attains the maximum, the conventional published reading of
the threshold is its exact integer coefficient carried with its own
strictness; otherwise the published reading is the attained lattice value.
:class:`ThresholdReport` carries all three (exact infimum, attained lattice,
published value) so nothing is lost between the two conventions.

:func:`minimize_over_m` scans an ascending family of branches indexed by an
integer parameter, comparing branches by attained lattice value (ties keep
the earlier branch; extra non-indexed branches are considered last) and
stopping as soon as a monotone component alone exceeds the best attained
value.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

from gmpy2 import mpq

from .enclose import Order, compare, floor_of, is_rational
from .errors import DomainError, NoAdmissibleBranch
from .expr import Div, ONE, RealExpr, render

#: Default ceiling on the number of branches scanned past the first.
SCAN_CEILING = 10_000


@dataclass(frozen=True, slots=True)
class Bound:
    """Lower bound on a positive real quantity."""

    value: RealExpr
    strict: bool = True
    lattice_form: bool = False
    label: str = ""

    def describe(self) -> str:
        op = ">" if self.strict else ">="
        tag = f" [{self.label}]" if self.label else ""
        return f"{op} {render(self.value)}{tag}"


@dataclass(frozen=True, slots=True)
class Branch:
    """A named alternative: the conjunction of its bounds."""

    id: str
    bounds: tuple

    def __post_init__(self):
        if not self.bounds:
            raise DomainError(f"branch {self.id!r} has no bounds")


@dataclass(frozen=True, slots=True)
class ThresholdReport:
    """Outcome of optimizing a threshold over a family of branches."""

    family: str
    branch_id: str
    m: Optional[int]            # branch index when the branch is m-indexed
    infimum: Bound              # the chosen branch's combined max bound
    unit: RealExpr
    attained_lattice: int       # least integer multiple of unit satisfying it
    attaining: tuple            # labels of the bounds attaining the max
    published: int              # conventional integer reading (see module doc)
    published_exact: bool       # True: published is the exact coefficient
    scan: tuple                 # ((branch_id, attained_lattice), ...) in order

    def describe(self) -> str:
        star = f"{self.published}" + ("" if self.unit == ONE else f"*{render(self.unit)}")
        op = ">" if self.infimum.strict else ">="
        via = ", ".join(self.attaining)
        return (f"{self.family}: {star} (branch {self.branch_id}, "
                f"infimum {op} {render(self.infimum.value)} via {via}, "
                f"attained {self.attained_lattice})")


def combine_max(bounds: Sequence[Bound], *,
                precision_cap: Optional[int] = None) -> tuple:
    """The conjunction of ``bounds`` as (max bound, attaining labels).

    The returned bound keeps the value expression of the first maximal bound;
    on certified ties strictness is OR-ed, ``lattice_form`` is true if any
    attaining bound has it, and every attaining label is reported.
    """
    if not bounds:
        raise DomainError("combine_max of no bounds")
    best = bounds[0]
    labels = [best.label]
    strict = best.strict
    lattice = best.lattice_form
    for b in bounds[1:]:
        o = compare(b.value, best.value, precision_cap=precision_cap)
        if o is Order.GT:
            best, labels, strict, lattice = b, [b.label], b.strict, b.lattice_form
        elif o is Order.EQ:
            labels.append(b.label)
            strict = strict or b.strict
            lattice = lattice or b.lattice_form
    return (Bound(best.value, strict, lattice, label="max"), tuple(labels))


def min_lattice(bound: Bound, unit: RealExpr = ONE, *,
                precision_cap: Optional[int] = None) -> int:
    """Least integer c such that c*unit satisfies ``bound``."""
    q = Div(bound.value, unit) if unit is not ONE else bound.value
    r = is_rational(q)
    if r is not None:
        if r.denominator == 1:
            return int(r.numerator) + (1 if bound.strict else 0)
        return int(r.numerator // r.denominator) + 1
    # irrational threshold: the least multiple at-or-above equals floor+1
    # for both strictness flavours (the exact value is never hit).
    return floor_of(q, precision_cap=precision_cap) + 1


def implies(stronger: Bound, weaker: Bound, *,
            precision_cap: Optional[int] = None) -> bool:
    """Whether every x satisfying ``stronger`` satisfies ``weaker``."""
    o = compare(weaker.value, stronger.value, precision_cap=precision_cap)
    if o is Order.LT:
        return True
    if o is Order.GT:
        return False
    # equal thresholds: only ">= v" fails to imply "> v"
    return not (weaker.strict and not stronger.strict)


def _published(infimum: Bound, unit: RealExpr, attained: int, *,
               precision_cap: Optional[int] = None) -> tuple:
    """(published value, exact?) under the lattice-form convention."""
    if infimum.lattice_form:
        q = is_rational(Div(infimum.value, unit) if unit is not ONE
                        else infimum.value)
        if q is not None and q.denominator == 1:
            return int(q.numerator), True
        raise DomainError(
            "lattice-form bound whose value is not an integer multiple "
            f"of the unit: {infimum.describe()}")
    return attained, False


def evaluate_branch(branch: Branch, unit: RealExpr = ONE, *,
                    precision_cap: Optional[int] = None) -> tuple:
    """(combined bound, attaining labels, attained lattice) for one branch."""
    top, labels = combine_max(branch.bounds, precision_cap=precision_cap)
    attained = min_lattice(top, unit, precision_cap=precision_cap)
    return top, labels, attained


def minimize_over_m(branch_at: Callable[[int], Branch], m_min: int, *,
                    family: str,
                    monotone_lattice: Callable[[int], int],
                    unit: RealExpr = ONE,
                    extra_branches: Iterable[Branch] = (),
                    precision_cap: Optional[int] = None,
                    ceiling: int = SCAN_CEILING) -> ThresholdReport:
    """Minimize the attained lattice value over branches ``m = m_min, ...``.

    ``monotone_lattice(m)`` must be a strictly increasing lower bound on the
    attained value of branch m (the linear step component); the scan stops
    once it alone exceeds the best attained value.  ``extra_branches`` are
    evaluated after the scan and only replace the incumbent when strictly
    better.
    """
    best = None  # (attained, m, branch, top, labels)
    scan = []
    m = m_min
    while True:
        if m > m_min + ceiling:
            raise NoAdmissibleBranch(
                f"{family}: optimizer ceiling reached at m={m}")
        if best is not None and monotone_lattice(m) > best[0]:
            break
        branch = branch_at(m)
        top, labels, attained = evaluate_branch(
            branch, unit, precision_cap=precision_cap)
        scan.append((branch.id, attained))
        if best is None or attained < best[0]:
            best = (attained, m, branch, top, labels)
        m += 1
    for extra in extra_branches:
        top, labels, attained = evaluate_branch(
            extra, unit, precision_cap=precision_cap)
        scan.append((extra.id, attained))
        if attained < best[0]:
            best = (attained, None, extra, top, labels)
    if best is None:
        raise NoAdmissibleBranch(f"{family}: no admissible branch")
    attained, m_star, branch, top, labels = best
    published, exact = _published(top, unit, attained,
                                  precision_cap=precision_cap)
    return ThresholdReport(
        family=family, branch_id=branch.id, m=m_star, infimum=top, unit=unit,
        attained_lattice=attained, attaining=labels, published=published,
        published_exact=exact, scan=tuple(scan))
