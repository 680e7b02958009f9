"""Bound algebra: conjunction, lattice reading, implication, branch optimizer."""
from __future__ import annotations

import pytest
from gmpy2 import mpq

from pluribound import (
    Bound,
    Branch,
    as_expr,
    combine_max,
    implies,
    min_lattice,
    minimize_over_m,
    rational,
)
from pluribound.bounds import evaluate_branch
from pluribound.errors import DomainError, NoAdmissibleBranch
from pluribound.expr import ONE, cbrt, sqrt


CBRT2 = cbrt(2)
SQRT2 = sqrt(2)


# ---------------------------------------------------------------- combine_max
def test_combine_max_picks_largest():
    top, labels = combine_max(
        [
            Bound(as_expr(3), strict=False, label="lo"),
            Bound(rational(7, 2), strict=True, label="mid"),
            Bound(2 * SQRT2, strict=False, label="hi"),  # 2.828...
        ]
    )
    assert labels == ("mid",)
    assert top.strict is True


def test_combine_max_reports_all_attaining_labels():
    top, labels = combine_max(
        [
            Bound(sqrt(8), strict=False, label="a"),
            Bound(2 * SQRT2, strict=True, label="b"),
            Bound(as_expr(1), strict=True, label="c"),
        ]
    )
    assert labels == ("a", "b")
    # strictness is OR'd over the attaining bounds
    assert top.strict is True


def test_combine_max_keeps_first_maximal_value():
    first = Bound(as_expr(5), strict=False, label="first")
    top, labels = combine_max([first, Bound(as_expr(5), strict=True, label="second")])
    assert top.value == first.value
    assert labels == ("first", "second")
    assert top.strict is True


def test_combine_max_propagates_lattice_form():
    top, _ = combine_max(
        [
            Bound(as_expr(45), strict=True, lattice_form=True, label="step"),
            Bound(as_expr(7), strict=True, label="other"),
        ]
    )
    assert top.lattice_form is True
    top, _ = combine_max(
        [
            Bound(as_expr(45), strict=True, lattice_form=True, label="step"),
            Bound(as_expr(50), strict=True, label="other"),
        ]
    )
    assert top.lattice_form is False


def test_combine_max_rejects_empty():
    with pytest.raises(DomainError):
        combine_max([])


# ---------------------------------------------------------------- min_lattice
@pytest.mark.parametrize(
    "value,strict,want",
    [
        (as_expr(5), False, 5),
        (as_expr(5), True, 6),
        (rational(7, 2), False, 4),
        (rational(7, 2), True, 4),
        (rational(-3, 2), False, -1),
        (as_expr(0), True, 1),
    ],
)
def test_min_lattice_rational_conventions(value, strict, want):
    assert min_lattice(Bound(value, strict=strict)) == want


def test_min_lattice_irrational_is_floor_plus_one():
    assert min_lattice(Bound(SQRT2, strict=True)) == 2
    assert min_lattice(Bound(SQRT2, strict=False)) == 2
    assert min_lattice(Bound(12978 * SQRT2, strict=False)) == 18354


def test_min_lattice_in_units():
    # least c with c*cbrt(2) >= 141  is  c = 112 (141/cbrt(2) = 111.90...)
    assert min_lattice(Bound(as_expr(141), strict=False), CBRT2) == 112
    assert min_lattice(Bound(as_expr(141), strict=True), CBRT2) == 112
    # exact multiples of the unit respect strictness
    assert min_lattice(Bound(3 * SQRT2, strict=False), SQRT2) == 3
    assert min_lattice(Bound(3 * SQRT2, strict=True), SQRT2) == 4


# -------------------------------------------------------------------- implies
def test_implies_strictness_matrix():
    gt5 = Bound(as_expr(5), strict=True)
    ge5 = Bound(as_expr(5), strict=False)
    gt6 = Bound(as_expr(6), strict=True)
    assert implies(gt5, ge5)
    assert not implies(ge5, gt5)
    assert implies(gt5, gt5)
    assert implies(gt6, gt5)
    assert not implies(gt5, gt6)


def test_implies_irrational_thresholds():
    assert implies(Bound(sqrt(50), strict=True), Bound(as_expr(7), strict=True))
    assert not implies(Bound(as_expr(7), strict=True), Bound(sqrt(50), strict=True))
    assert implies(Bound(sqrt(8), strict=True), Bound(2 * SQRT2, strict=False))


# ------------------------------------------------------------ evaluate_branch
def test_evaluate_branch_reports_labels_and_lattice():
    br = Branch("m=1", (Bound(as_expr(3), strict=False, label="a"),
                        Bound(rational(9, 2), strict=True, label="b")))
    top, labels, attained = evaluate_branch(br)
    assert labels == ("b",)
    assert attained == 5


# ------------------------------------------------------------ minimize_over_m
def _vee(m: int) -> Branch:
    # attained values 10, 9, ..., 3 (at m=7), 4, 5, ...
    return Branch(f"m={m}", (Bound(as_expr(abs(m - 7) + 3), strict=False, label="v"),))


def test_minimizer_finds_interior_minimum():
    rep = minimize_over_m(_vee, 1, family="vee", monotone_lattice=lambda m: m - 4)
    assert (rep.m, rep.attained_lattice, rep.branch_id) == (7, 3, "m=7")
    assert rep.published == 3 and rep.published_exact is False
    # the scan stops shortly after the monotone component passes the incumbent
    assert rep.scan[0] == ("m=1", 9)
    assert all(a >= 3 for _, a in rep.scan)


def test_minimizer_prefers_smaller_m_on_ties():
    def branch(m: int) -> Branch:
        v = 3 if m in (4, 9) else 9
        return Branch(f"m={m}", (Bound(as_expr(v), strict=False, label="v"),))

    rep = minimize_over_m(branch, 1, family="tie", monotone_lattice=lambda m: m - 6)
    assert rep.m == 4


def test_minimizer_extra_branch_must_be_strictly_better():
    tie = Branch("extra", (Bound(as_expr(3), strict=False, label="v"),))
    rep = minimize_over_m(_vee, 1, family="vee", monotone_lattice=lambda m: m - 4,
                          extra_branches=[tie])
    assert rep.branch_id == "m=7"

    better = Branch("extra", (Bound(as_expr(2), strict=False, label="v"),))
    rep = minimize_over_m(_vee, 1, family="vee", monotone_lattice=lambda m: m - 4,
                          extra_branches=[better])
    assert rep.branch_id == "extra" and rep.m is None
    assert rep.attained_lattice == 2


def test_minimizer_ceiling_is_an_error_not_a_guess():
    flat = lambda m: Branch(f"m={m}", (Bound(as_expr(100), strict=False, label="v"),))
    with pytest.raises(NoAdmissibleBranch):
        minimize_over_m(flat, 1, family="flat", monotone_lattice=lambda m: 0,
                        ceiling=50)


def test_minimizer_published_form_for_lattice_form_top():
    def branch(m: int) -> Branch:
        return Branch(f"m={m}", (
            Bound(as_expr(45 + 10 * (m - 1)), strict=True, lattice_form=True, label="step"),
            Bound(as_expr(7), strict=True, label="other"),
        ))

    rep = minimize_over_m(branch, 1, family="form", monotone_lattice=lambda m: 45 + 10 * (m - 1))
    assert rep.m == 1
    assert rep.published == 45 and rep.published_exact is True
    assert rep.attained_lattice == 46  # strict bound at an exact lattice point
    assert "step" in rep.attaining


def test_minimizer_published_floor_when_irrational_dominates():
    def branch(m: int) -> Branch:
        return Branch(f"m={m}", (
            Bound(as_expr(45 + 10 * (m - 1)), strict=True, lattice_form=True, label="step"),
            Bound(34 * SQRT2, strict=True, label="other"),  # 48.08... dominates at m=1
        ))

    rep = minimize_over_m(branch, 1, family="floor", monotone_lattice=lambda m: 45 + 10 * (m - 1))
    assert rep.m == 1
    assert rep.published == 49 and rep.published_exact is False
    assert rep.attained_lattice == 49
    assert rep.attaining == ("other",)


def test_report_describe_mentions_family_and_unit():
    rep = minimize_over_m(_vee, 1, family="vee", monotone_lattice=lambda m: m - 4,
                          unit=CBRT2)
    text = rep.describe()
    assert "vee" in text and "2^(1/3)" in text
