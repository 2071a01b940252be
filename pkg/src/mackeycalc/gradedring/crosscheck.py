"""Compare ring dimensions with the Bredon engine for constant F2 over K4."""

from __future__ import annotations

from dataclasses import dataclass, field

from mackeycalc.bredon.cells import RepDegree, sphere_complex
from mackeycalc.bredon.homology import homology_functors
from mackeycalc.bredon.realize import realize
from mackeycalc.common import get_logger
from mackeycalc.gradedring.presentation import hilbert
from mackeycalc.mackey.catalog import get_functor

log = get_logger(__name__)


@dataclass
class CrossCheckReport:
    """Ring and chart dimensions per cell; ``mismatches`` lists the cells where they differ."""

    dimensions: dict[tuple[int, int], tuple[int, int]] = field(default_factory=dict)

    @property
    def mismatches(self) -> list[tuple[int, int]]:
        return sorted(key for key, (ring, chart) in self.dimensions.items() if ring != chart)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def top_dimensions(k: int, xs: list[int]) -> dict[int, int]:
    """F2-dimension of the top level of H_x(S^{k rho_bar}; F2) for each x."""
    m = get_functor("K4", "F2")
    rc = realize(sphere_complex(m.table, RepDegree.rho_bar(m.table, k)), m)
    functors = homology_functors(rc, xs)
    return {x: len(functors[x].level("K").elementary_divisors()) for x in xs}


def cross_check(x_range: tuple[int, int], y_range: tuple[int, int]) -> CrossCheckReport:
    """hilbert(x, y) against the Bredon top level, over a window with y <= 0."""
    if y_range[1] > 0:
        raise ValueError(f"Cross-check window must lie in y <= 0, got y range {y_range}")
    xs = list(range(x_range[0], x_range[1] + 1))
    report = CrossCheckReport()
    for y in range(y_range[0], y_range[1] + 1):
        chart_dims = top_dimensions(-y, xs)
        for x in xs:
            report.dimensions[(x, y)] = (hilbert(x, y), chart_dims[x])
    log.info("cross_check_finished", cells=len(report.dimensions), mismatches=report.mismatches)
    return report
