"""Threshold families for 3-fold systems, cross-checked against the scan oracle."""
from __future__ import annotations

import pytest
from gmpy2 import mpq

import oracle_scan as oracle
from pluribound import (
    all_l_threshold,
    bir_heuristic_m,
    bir_threshold,
    compare,
    decimal_enclosure,
    f_value,
    map2_threshold,
    map3_threshold,
    map4_threshold,
    nv_heuristic_m,
    nv_threshold,
    trican_threshold,
)
from pluribound.enclose import Order
from pluribound.errors import DomainError
from pluribound.expr import cbrt


CBRT2 = cbrt(2)


# ------------------------------------------------------------------- headline
def test_nv_headline_g2_n1():
    rep = nv_threshold(2, 1)
    assert rep.published == 879 and rep.published_exact is False
    assert rep.m == 36 and rep.branch_id == "m=36"
    assert "pencil-weighted" in rep.attaining
    lo, hi = decimal_enclosure(rep.infimum.value, 4)
    assert lo == "878.9589" and hi == "878.9590"


def test_trican_thresholds():
    for g, want_pub, want_m in ((2, 141, 4), (3, 69, 2), (4, 47, 1), (5, 33, 1), (12, 33, 1)):
        rep = trican_threshold(g)
        assert (rep.published, rep.m) == (want_pub, want_m), g
        assert rep.published_exact is (g != 4)


def test_map_headlines_are_exact_forms():
    assert (map4_threshold(2).published, map4_threshold(2).published_exact) == (6141, True)
    assert (map3_threshold(3).published, map3_threshold(3).published_exact) == (5178, True)
    assert (map2_threshold(4).published, map2_threshold(4).published_exact) == (24570, True)
    assert map4_threshold(2).unit == CBRT2


# -------------------------------------------------- nv table switch boundaries
# cells flanking every branch switch of the published (g, n) table
_NV_BOUNDARIES = [
    (2, 1, 879), (2, 2, 1293),
    (4, 6, 669), (4, 7, 714), (4, 8, 753),
    (5, 2, 242), (5, 3, 285),
    (6, 43, 3165), (6, 44, 3234), (6, 52, 3234), (6, 53, 3237),
    (7, 2, 184), (7, 3, 237),
    (10, 304, 18297), (10, 305, 18354), (10, 381, 18354), (10, 382, 18381),
    (11, 8, 537), (11, 9, 550), (11, 10, 550), (11, 11, 573),
    (12, 4, 297), (12, 5, 306), (12, 6, 333),
    (13, 2, 177), (13, 3, 223), (13, 4, 237),
    (15, 1, 117), (15, 2, 156),
    (19, 1, 111), (22, 1, 97),
]


@pytest.mark.parametrize("g,n,want", _NV_BOUNDARIES)
def test_nv_table_boundary_cells(g, n, want):
    rep = nv_threshold(g, n)
    assert rep.published == want
    # independent route: integer-certificate scan
    m_star, attained = oracle.nv_opt(g, n)
    assert rep.published == attained
    assert rep.m == m_star


def test_nv_grid_matches_oracle():
    for g in range(2, 13):
        for n in range(1, 7):
            rep = nv_threshold(g, n)
            m_star, attained = oracle.nv_opt(g, n)
            assert (rep.m, rep.published) == (m_star, attained), (g, n)


def test_nv_scan_starts_at_admissibility_floor():
    assert nv_threshold(2, 1).scan[0][0] == "m=36"
    assert nv_threshold(4, 1).scan[0][0] == "m=7"
    assert nv_threshold(10, 1).scan[0][0] == "m=4"


def test_nv_monotone_in_n():
    prev = 0
    for n in range(1, 30):
        cur = nv_threshold(6, n).published
        assert cur >= prev
        prev = cur


def test_trican_grid_matches_oracle():
    for g in range(2, 31):
        rep = trican_threshold(g)
        m_star, attained = oracle.trican_opt(g)
        assert (rep.m, rep.published) == (m_star, attained), g


# -------------------------------------------------------------------- bir l,g
def test_bir_special_cells():
    cases = {(5, 9): (118, False), (6, 8): (73, False), (8, 7): (93, True)}
    for (l, g), (pub, exact) in cases.items():
        rep = bir_threshold(l, g)
        assert (rep.published, rep.published_exact) == (pub, exact), (l, g)
    for g in (24, 30, 39):
        rep = bir_threshold(7, g)
        assert (rep.published, rep.published_exact) == (81, True), g


def test_bir_form_cells_match_step_formula():
    for l, g in [(5, 2), (5, 30), (5, 60), (6, 2), (7, 23), (8, 6), (9, 4),
                 (10, 3), (11, 2), (12, 2), (13, 2), (14, 2)]:
        rep = bir_threshold(l, g)
        mh = bir_heuristic_m(l, g)
        assert rep.published_exact is True, (l, g)
        assert rep.published == 3 * (4 * l * mh - 1), (l, g)
        assert compare(f_value(l, g), rep.published * CBRT2) is Order.EQ


def test_bir_grid_matches_oracle():
    for l in range(5, 11):
        for g in range(2, 13):
            rep = bir_threshold(l, g)
            tag, att, pub, mode = oracle.bir_opt("general", l, g)
            assert rep.branch_id == tag, (l, g)
            assert rep.attained_lattice == att, (l, g)
            assert rep.published == pub, (l, g)
            assert rep.published_exact is (mode == "form"), (l, g)


def test_bir_limit_branch_taken_when_strictly_better():
    rep = bir_threshold(15, 2)
    assert rep.branch_id == "beta-limit" and rep.m is None
    assert rep.published == 34 and rep.published_exact is False
    assert oracle.bir_opt("general", 15, 2)[:2] == ("beta-limit", 34)


def test_bir_limit_branch_requires_small_limit_value():
    # (l, g) = (14, 2): D = 10, D^2 = 100 < 128, so no limit branch exists
    assert oracle.limit_branch_admissible(14, 2) is False
    assert bir_threshold(14, 2).branch_id.startswith("m=")
    assert oracle.limit_branch_admissible(15, 2) is True


def test_map_families_match_oracle():
    for g in range(2, 9):
        rep = map4_threshold(g)
        tag, att, pub, mode = oracle.bir_opt("map4", 4, g)
        assert (rep.branch_id, rep.published) == (tag, pub), g
    for g in range(3, 9):
        rep = map3_threshold(g)
        tag, att, pub, mode = oracle.bir_opt("map3", 3, g)
        assert (rep.branch_id, rep.published) == (tag, pub), g
    for g in range(4, 10):
        rep = map2_threshold(g)
        tag, att, pub, mode = oracle.bir_opt("map2", 2, g)
        assert (rep.branch_id, rep.published) == (tag, pub), g


def test_map_formula_regions_match_closed_forms():
    t3_special = {11, *range(30, 42)}
    for g in range(2, 21):
        if g in t3_special:
            continue
        mh = 32 * g * g // (3 * g - 5) ** 2
        assert map4_threshold(g).published == 3 * (16 * mh - 1), g
    t4_special = {11, 19, 35, 36, 37, 38}
    for g in range(3, 21):
        if g in t4_special:
            continue
        mh = 8 * g * g // (g - 2) ** 2
        assert map3_threshold(g).published == 6 * (12 * mh - 1), g
    t5_special = {8, 12, 14}
    for g in range(4, 15):
        if g in t5_special:
            continue
        mh = 32 * g * g // (g - 3) ** 2
        assert map2_threshold(g).published == 6 * (8 * mh - 1), g


def test_map_table_special_cells():
    assert map4_threshold(11).published == 237
    assert map4_threshold(30).published == 189
    assert map4_threshold(41).published == 146
    assert map3_threshold(11).published == 858
    assert map3_threshold(19).published == 714
    assert map3_threshold(38).published == 640
    assert map2_threshold(8).published == 3930
    assert map2_threshold(243).published == 1532


# ------------------------------------------------------------------ all-l max
def test_all_l_small_genus():
    rep = all_l_threshold(2)
    assert rep.l_star == 5
    assert rep.report.published == 1917 and rep.report.published_exact is True
    assert rep.off_heuristic == ()


def test_all_l_exceptional_genus():
    rep = all_l_threshold(9)
    assert rep.l_star == 5
    assert rep.report.published == 118 and rep.report.published_exact is False


def test_all_l_stable_genus():
    for g in (10, 11, 12):
        rep = all_l_threshold(g)
        assert (rep.l_star, rep.report.published, rep.report.published_exact) == (5, 117, True), g


def test_all_l_requires_a_real_tail():
    with pytest.raises(DomainError):
        all_l_threshold(2, l_max=100)


# ----------------------------------------------------------------- heuristics
def test_branch_heuristics():
    assert nv_heuristic_m(2, 1) == 36 == nv_threshold(2, 1).m
    assert nv_heuristic_m(3, 1) == 11 == nv_threshold(3, 1).m
    assert bir_heuristic_m(5, 2) == 32 == bir_threshold(5, 2).m
    assert bir_heuristic_m(15, 2) is None  # limit branch regime


# -------------------------------------------------------------- domain checks
@pytest.mark.parametrize(
    "call",
    [
        lambda: nv_threshold(1, 1),
        lambda: nv_threshold(2, 0),
        lambda: trican_threshold(1),
        lambda: bir_threshold(4, 2),
        lambda: bir_threshold(5, 1),
        lambda: map3_threshold(2),
        lambda: map2_threshold(3),
    ],
)
def test_domain_errors(call):
    with pytest.raises(DomainError):
        call()


def test_non_integer_arguments_rejected():
    with pytest.raises(DomainError):
        nv_threshold(mpq(5, 2), 1)  # type: ignore[arg-type]
    with pytest.raises(DomainError):
        trican_threshold(2.0)  # type: ignore[arg-type]
