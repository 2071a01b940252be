"""Integer linear algebra and group tables."""

from mackeycalc.algebra.grouptab import C2, K4, TRIVIAL, GroupTable, get_table
from mackeycalc.algebra.zlattice import (
    AbElement,
    AbHom,
    AbPresentation,
    IntMatrix,
    Lattice,
    cokernel,
    iso_test,
    kernel,
    smith_normal_form,
)

__all__ = [
    "AbElement",
    "AbHom",
    "AbPresentation",
    "C2",
    "GroupTable",
    "IntMatrix",
    "K4",
    "Lattice",
    "TRIVIAL",
    "cokernel",
    "get_table",
    "iso_test",
    "kernel",
    "smith_normal_form",
]
