"""Tests for the subgroup tables of e, C2 and K4."""

import pytest

from mackeycalc.algebra.grouptab import C2, K4, TRIVIAL, element_label, get_table, parse_element


def test_get_table_rejects_unknown_group():
    with pytest.raises(ValueError, match="Unknown group"):
        get_table("C4")


def test_k4_subgroup_lattice():
    assert K4.subgroups == ("K", "L", "D", "R", "e")
    assert K4.top == "K" and K4.bottom == "e"
    assert K4.covers() == [("L", "K"), ("D", "K"), ("R", "K"), ("e", "L"), ("e", "D"), ("e", "R")]
    assert len(K4.pairs()) == 7


def test_intersections_and_joins():
    assert K4.intersection("L", "R") == "e"
    assert K4.join("L", "R") == "K"
    assert K4.join("e", "D") == "D"


def test_indices():
    assert K4.index("e") == 4
    assert K4.index("L", "K") == 2
    with pytest.raises(ValueError):
        K4.index("L", "R")


def test_cosets_and_double_cosets():
    assert K4.cosets("L") == [(0, 0), (0, 1)]
    assert K4.cosets("e", "D") == [(0, 0), (1, 1)]
    assert len(K4.double_cosets("L", "R")) == 1
    assert len(K4.double_cosets("L", "L")) == 2


def test_orbit_products_count_points():
    for a in K4.subgroups:
        for b in K4.subgroups:
            product = K4.orbit_product(a, b)
            assert product.cardinality(K4) == K4.index(a) * K4.index(b)


def test_table_of_marks():
    marks = C2.table_of_marks()
    assert marks.tolist() == [[1, 1], [0, 2]]
    assert K4.table_of_marks().row(4) == (0, 0, 0, 0, 4)


def test_element_outside():
    g = K4.element_outside("L", "K")
    assert g in K4.subgroup("K") and g not in K4.subgroup("L")


def test_subgroup_tables():
    emb = K4.subgroup_table("D")
    assert emb.table is C2
    assert emb.ids == {"C2": "D", "e": "e"}
    assert emb.elements[(1,)] == (1, 1)
    assert K4.subgroup_table("e").table is TRIVIAL


def test_quotient_tables():
    q = K4.quotient_table("R")
    assert q.table is C2
    assert q.ambient("C2") == "K"
    assert q.project[(0, 1)] == (0,)
    assert q.project[(1, 1)] == (1,)
    with pytest.raises(ValueError):
        get_table("C2").quotient_table("K")


def test_element_labels():
    assert element_label((1, 0)) == "10"
    assert parse_element("10") == (1, 0)
    assert element_label(()) == ""
