"""Finite G-sets and Mackey functors evaluated on them.

A Mackey functor extends to finite G-sets by M(X) = sum over orbits of
M(G/stabilizer). Equivariant maps of permutation modules Z[X] -> Z[Y] act through
spans: a point p hitting y = h.q with coefficient c contributes
c * res^{H_p}_{I} . w_h . tr^{H_q}_{I} (I = H_p n H_q), once per H_p-orbit of such y.
Pushforward, pullback, Weyl translation and cellular differentials all use this rule.
"""

from __future__ import annotations

from collections.abc import Callable, Hashable, Iterable, Sequence
from functools import cached_property
from typing import TYPE_CHECKING

from mackeycalc.algebra.grouptab import Element, GroupTable
from mackeycalc.algebra.zlattice import AbPresentation, IntMatrix

if TYPE_CHECKING:
    from mackeycalc.mackey.functor import MackeyFunctor

Point = Hashable
Terms = Iterable[tuple[Point, int]]


class GSet:
    """A finite set with an action of an elementary abelian 2-group."""

    def __init__(
        self,
        table: GroupTable,
        points: Sequence[Point],
        act: Callable[[Element, Point], Point],
    ) -> None:
        self.table = table
        self.points: tuple[Point, ...] = tuple(points)
        index = set(self.points)
        if len(index) != len(self.points):
            raise ValueError("G-set points must be distinct")
        self._action: dict[tuple[Element, Point], Point] = {}
        for g in table.elements:
            for p in self.points:
                image = act(g, p)
                if image not in index:
                    raise ValueError(f"Action of {g} sends {p!r} outside the set")
                self._action[(g, p)] = image

    # -- constructors ---------------------------------------------------------

    @classmethod
    def orbit(cls, table: GroupTable, sub: str) -> GSet:
        """G/sub, with points the canonical coset representatives."""
        return cls(table, table.cosets(sub), lambda g, c: table.coset_rep(table.add(g, c), sub))

    @classmethod
    def point(cls, table: GroupTable) -> GSet:
        return cls.orbit(table, table.top)

    @classmethod
    def empty(cls, table: GroupTable) -> GSet:
        return cls(table, (), lambda g, p: p)

    def times(self, other: GSet) -> GSet:
        """Cartesian product with the diagonal action; points are pairs."""
        points = [(p, q) for p in self.points for q in other.points]
        return GSet(self.table, points, lambda g, pq: (self.act(g, pq[0]), other.act(g, pq[1])))

    def restricted(self, embedding_table: GroupTable, elements: dict[Element, Element]) -> GSet:
        """The same points as a set over a subgroup's table."""
        return GSet(embedding_table, self.points, lambda g, p: self.act(elements[g], p))

    # -- action ---------------------------------------------------------------

    def act(self, g: Element, p: Point) -> Point:
        return self._action[(g, p)]

    def __len__(self) -> int:
        return len(self.points)

    @cached_property
    def _orbit_data(self) -> tuple[list[Point], dict[Point, tuple[int, Element]]]:
        reps: list[Point] = []
        where: dict[Point, tuple[int, Element]] = {}
        for p in self.points:
            if p in where:
                continue
            reps.append(p)
            for g in self.table.elements:
                q = self.act(g, p)
                if q not in where:
                    where[q] = (len(reps) - 1, g)
        return reps, where

    @property
    def orbit_reps(self) -> list[Point]:
        return self._orbit_data[0]

    def locate(self, p: Point) -> tuple[int, Element]:
        """(orbit index, h) with p = h . rep, h the first such element."""
        return self._orbit_data[1][p]

    def stabilizer(self, p: Point) -> str:
        return self.table.id_of(g for g in self.table.elements if self.act(g, p) == p)

    @cached_property
    def stabilizers(self) -> list[str]:
        """Stabilizer ids of the orbit representatives."""
        return [self.stabilizer(p) for p in self.orbit_reps]


# =============================================================================
# Evaluation
# =============================================================================


def offsets(m: MackeyFunctor, x: GSet) -> list[int]:
    """Start index of each orbit's block inside the generators of M(X)."""
    starts, total = [], 0
    for sub in x.stabilizers:
        starts.append(total)
        total += m.levels[sub].generator_count
    return [*starts, total]


def evaluate(m: MackeyFunctor, x: GSet) -> AbPresentation:
    """M(X) as the direct sum of the orbit levels, in orbit order."""
    if not x.stabilizers:
        return AbPresentation.zero()
    first, *rest = (m.levels[sub] for sub in x.stabilizers)
    return first.direct_sum(*rest)


def span_matrix(m: MackeyFunctor, x: GSet, y: GSet, image: Callable[[Point], Terms]) -> IntMatrix:
    """Matrix of M(X) -> M(Y) for the equivariant linear map p -> sum c * y."""
    t = m.table
    rows, cols = offsets(m, x), offsets(m, y)
    out = [[0] * cols[-1] for _ in range(rows[-1])]
    blocks: dict[tuple[str, Element, str], IntMatrix] = {}
    for i, p in enumerate(x.orbit_reps):
        hp = x.stabilizers[i]
        terms: dict[Point, int] = {}
        for q, c in image(p):
            terms[q] = terms.get(q, 0) + c
        seen: set[Point] = set()
        for q, c in terms.items():
            if q in seen or c == 0:
                continue
            orbit = {y.act(k, q) for k in t.subgroup(hp)}
            if any(terms.get(other, 0) != c for other in orbit):
                raise ValueError(f"Map is not equivariant at {p!r}: uneven coefficients on the orbit of {q!r}")
            seen |= orbit
            j, h = y.locate(q)
            hq = y.stabilizers[j]
            key = (hp, h, hq)
            if key not in blocks:
                meet = t.intersection(hp, hq)
                blocks[key] = m.res_matrix(meet, hp) @ m.weyl_matrix(meet, h) @ m.tr_matrix(meet, hq)
            block = blocks[key]
            for a in range(block.rows):
                row = out[rows[i] + a]
                for b in range(block.cols):
                    row[cols[j] + b] += c * block.data[a][b]
    return IntMatrix.of(out, cols=cols[-1])


def pushforward(m: MackeyFunctor, x: GSet, y: GSet, f: Callable[[Point], Point]) -> IntMatrix:
    """M(X) -> M(Y) along an equivariant map (the covariant, transfer-like direction)."""
    return span_matrix(m, x, y, lambda p: [(f(p), 1)])


def pullback(m: MackeyFunctor, x: GSet, y: GSet, f: Callable[[Point], Point]) -> IntMatrix:
    """M(Y) -> M(X) along an equivariant map X -> Y (the restriction-like direction)."""
    fibers: dict[Point, list[Point]] = {}
    for p in x.points:
        fibers.setdefault(f(p), []).append(p)
    return span_matrix(m, y, x, lambda q: [(p, 1) for p in fibers.get(q, [])])
