"""Tests for the positive-cone ring of constant F2 over K4."""

import pytest

from mackeycalc.gradedring import (
    chart_annotations,
    cross_check,
    graded_basis,
    hilbert,
    monomial,
    multiply,
    normal_form,
    polynomial,
    reference_hilbert,
    ring_annotations,
    subring_violations,
)
from mackeycalc.gradedring.annotations import NORM_NOTES
from mackeycalc.gradedring.presentation import format_monomial, relation_bidegrees


def basis_names(x: int, y: int) -> set[str]:
    return {format_monomial(m) for m in graded_basis(x, y).basis}


def test_relations_are_homogeneous():
    assert all(len(degrees) == 1 for degrees in relation_bidegrees())


@pytest.mark.parametrize(
    "cell, expected",
    [
        ((0, 0), 1),
        ((0, -1), 1),
        ((2, -2), 5),
        ((3, -2), 4),
        ((1, 0), 0),
        ((0, 1), 0),
    ],
)
def test_hilbert(cell, expected):
    assert hilbert(*cell) == expected


def test_basis_in_two_minus_two_rho_bar():
    assert basis_names(2, -2) == {"x_L^2", "y_D^2", "z_R^2", "a*v_L", "a*w_R"}


def test_basis_in_three_minus_two_rho_bar():
    assert basis_names(3, -2) == {"x_L*w_R", "z_R*v_L", "y_D*v_L", "a*u"}


def test_top_generator_survives():
    assert "u" in basis_names(3, -1)


class TestNormalForms:
    def test_rewrites_leading_terms(self):
        assert normal_form(["y_D", "w_R"]) == polynomial(("y_D", "v_L"), ("a", "u"))
        assert normal_form(["x_L", "v_L"]) == polynomial(("a", "u"))

    def test_basis_monomials_are_fixed(self):
        for m in graded_basis(3, -2).basis:
            assert normal_form(frozenset({m})) == frozenset({m})

    def test_unit(self):
        one = polynomial(())
        assert multiply(one, polynomial(("a",))) == polynomial(("a",))

    def test_products_with_w_r(self):
        assert multiply(polynomial(("w_R",)), polynomial(("z_R",))) == polynomial(("a", "u"))

    def test_rejects_inhomogeneous(self):
        with pytest.raises(ValueError, match="not homogeneous"):
            normal_form(polynomial(("a",), ("u",)))

    def test_rejects_unknown_generator(self):
        with pytest.raises(ValueError, match="Unknown generator"):
            monomial("b_L")


class TestReferenceRing:
    def test_relations_hold_in_the_six_variable_ring(self):
        assert subring_violations() == []

    @pytest.mark.parametrize("y", [-1, -2, -3, -4])
    def test_dimensions_agree(self, y):
        for x in range(0, 3 * -y + 1):
            assert hilbert(x, y) == reference_hilbert(x, y), (x, y)


@pytest.mark.slow
def test_cross_check_against_bredon():
    report = cross_check((0, 4), (-3, -1))
    assert report.ok, report.mismatches
    assert report.dimensions[(2, -2)] == (5, 5)


@pytest.mark.slow
def test_cross_check_over_the_full_window():
    report = cross_check((0, 6), (-6, -1))
    assert report.ok, report.mismatches
    assert len(report.dimensions) == 42
    assert report.dimensions[(3, -2)] == (4, 4)


def test_cross_check_window_must_be_in_the_positive_cone():
    with pytest.raises(ValueError, match="y <= 0"):
        cross_check((0, 1), (-1, 1))


class TestAnnotations:
    def test_theta_class(self):
        notes = ring_annotations((-4, 4), (-2, 2))
        theta = [n for n in notes if n["kind"] == "class"]
        assert theta == [
            {
                "kind": "class",
                "name": "Theta",
                "cell": [-3, 1],
                "note": "infinitely divisible by every multiplicative generator of the positive cone",
            }
        ]

    def test_a_lines_connect_adjacent_rows(self):
        notes = ring_annotations((0, 3), (-2, 0))
        lines = [n for n in notes if n["kind"] == "a_line"]
        assert {"kind": "a_line", "from": [0, 0], "to": [0, -1], "source": "1"} in lines

    def test_norm_charts_carry_notes(self):
        notes = chart_annotations("NeK_F2", (0, 3), (-2, 0))
        assert [n["text"] for n in notes] == NORM_NOTES["NeK_F2"]
        assert chart_annotations("E", (0, 3), (-2, 0)) == []
