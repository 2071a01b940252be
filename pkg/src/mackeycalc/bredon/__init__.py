"""Bredon homology of representation spheres with Mackey functor coefficients, and charts."""

from mackeycalc.bredon.cells import (
    CellComplex,
    RepDegree,
    dual_complex,
    sign_sphere,
    smash,
    sphere_complex,
    virtual_sphere_complex,
)
from mackeycalc.bredon.chart import ChartCell, ChartManifest, c2_chart, chart, chart_row, graded_cell
from mackeycalc.bredon.homology import cohomology, homology, homology_functors, reduce_level
from mackeycalc.bredon.realize import RealizedComplex, realize

__all__ = [
    "CellComplex",
    "ChartCell",
    "ChartManifest",
    "RealizedComplex",
    "RepDegree",
    "c2_chart",
    "chart",
    "chart_row",
    "cohomology",
    "dual_complex",
    "graded_cell",
    "homology",
    "homology_functors",
    "realize",
    "reduce_level",
    "sign_sphere",
    "smash",
    "sphere_complex",
    "virtual_sphere_complex",
]
