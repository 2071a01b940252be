"""Cellular chains with Mackey functor coefficients.

C_n(J) = M(X_n x G/J). Restriction and transfer between levels are the pullback
and pushforward along X_n x G/K -> X_n x G/J; the Weyl action is right
translation on G/J. The differential at each level is the span of the cellular
boundary.
"""

from __future__ import annotations

from functools import cached_property

from mackeycalc.algebra.grouptab import Element
from mackeycalc.bredon.cells import CellComplex
from mackeycalc.common import get_logger
from mackeycalc.mackey.functor import MackeyFunctor, MackeyMorphism
from mackeycalc.mackey.gsets import GSet, Point, evaluate, pullback, pushforward, span_matrix

log = get_logger(__name__)


class RealizedComplex:
    """Chain complex of Mackey functors C_n = M(X_n x -) for a cell complex X.

    Coefficients are normalized first, so every chain group is presented by a
    diagonal relation matrix.
    """

    def __init__(self, cells: CellComplex, coefficients: MackeyFunctor) -> None:
        if cells.table.group_id != coefficients.table.group_id:
            raise ValueError(
                f"Cells over {cells.table.group_id} cannot take coefficients over {coefficients.table.group_id}"
            )
        self.cells = cells
        self.table = cells.table
        self.coefficients = coefficients.normalized()[0]
        self._spaces: dict[tuple[int, str], GSet] = {}
        self._functors: dict[int, MackeyFunctor] = {}
        self._differentials: dict[int, MackeyMorphism] = {}

    @cached_property
    def degrees(self) -> list[int]:
        return self.cells.degrees()

    def space(self, n: int, sub: str) -> GSet:
        """X_n x G/sub, with points (cell, coset)."""
        key = (n, sub)
        if key not in self._spaces:
            self._spaces[key] = self.cells.cell_set(n).times(GSet.orbit(self.table, sub))
        return self._spaces[key]

    def chain_functor(self, n: int) -> MackeyFunctor:
        if n in self._functors:
            return self._functors[n]
        t, m = self.table, self.coefficients
        levels = {j: evaluate(m, self.space(n, j)) for j in t.subgroups}
        restrictions, transfers = {}, {}
        for small, big in t.pairs():
            x, y = self.space(n, small), self.space(n, big)

            def collapse(pc: tuple[Point, Element], big: str = big) -> tuple[Point, Element]:
                return (pc[0], t.coset_rep(pc[1], big))

            restrictions[(small, big)] = pullback(m, x, y, collapse)
            transfers[(small, big)] = pushforward(m, x, y, collapse)
        weyl = {}
        for j in t.subgroups:
            x = self.space(n, j)
            for g in t.elements:

                def translate(pc: tuple[Point, Element], g: Element = g, j: str = j) -> tuple[Point, Element]:
                    return (pc[0], t.coset_rep(t.add(g, pc[1]), j))

                weyl[(j, g)] = pushforward(m, x, x, translate)
        functor = MackeyFunctor(t, levels, restrictions, transfers, weyl, f"C_{n}")
        self._functors[n] = functor
        return functor

    def differential(self, n: int) -> MackeyMorphism:
        """d_n : C_n -> C_(n-1)."""
        if n in self._differentials:
            return self._differentials[n]
        source, target = self.chain_functor(n), self.chain_functor(n - 1)
        components = {}
        for j in self.table.subgroups:

            def boundary(pc: tuple[Point, Element]) -> list[tuple[tuple[Point, Element], int]]:
                return [((q, pc[1]), e) for q, e in self.cells.d(n, pc[0])]

            components[j] = span_matrix(self.coefficients, self.space(n, j), self.space(n - 1, j), boundary)
        d = MackeyMorphism(source, target, components)
        self._differentials[n] = d
        return d

    def violations(self) -> list[str]:
        """Ill-defined differentials, non-natural differentials, or d o d != 0."""
        problems = []
        for n in self.degrees:
            d = self.differential(n)
            problems += [f"d_{n}: {v}" for v in d.violations()]
            if n - 1 in self.degrees:
                dd = d.then(self.differential(n - 1))
                for j in self.table.subgroups:
                    if not dd.component(j).is_zero():
                        problems.append(f"d_{n - 1} o d_{n} != 0 at level {j}")
        return problems


def realize(cells: CellComplex, coefficients: MackeyFunctor) -> RealizedComplex:
    rc = RealizedComplex(cells, coefficients)
    log.debug(
        "complex_realized",
        group=rc.table.group_id,
        coefficients=coefficients.name,
        degrees=rc.degrees,
    )
    return rc
