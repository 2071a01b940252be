"""The positive-cone ring of constant F2 over K4: presentation, reference ring and cross-checks."""

from mackeycalc.gradedring.annotations import chart_annotations, ring_annotations
from mackeycalc.gradedring.crosscheck import CrossCheckReport, cross_check
from mackeycalc.gradedring.presentation import (
    GENERATORS,
    RELATIONS,
    GradedBasis,
    graded_basis,
    hilbert,
    monomial,
    multiply,
    normal_form,
    polynomial,
)
from mackeycalc.gradedring.reference import reference_hilbert, subring_violations

__all__ = [
    "GENERATORS",
    "RELATIONS",
    "CrossCheckReport",
    "GradedBasis",
    "chart_annotations",
    "cross_check",
    "graded_basis",
    "hilbert",
    "monomial",
    "multiply",
    "normal_form",
    "polynomial",
    "reference_hilbert",
    "ring_annotations",
    "subring_violations",
]
