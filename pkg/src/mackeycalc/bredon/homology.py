"""Bredon homology and cohomology of representation spheres.

Each level of a realized complex is first shrunk by cancelling pairs of cyclic
summands joined by an invertible matrix entry (Gaussian elimination). The
comparison maps to and from the reduced complex carry the restrictions,
transfers and Weyl actions down to homology.
"""

from __future__ import annotations

from dataclasses import dataclass

from mackeycalc.algebra.grouptab import GroupTable
from mackeycalc.algebra.zlattice import AbHom, AbPresentation, HomologyGroup, IntMatrix, homology as group_homology
from mackeycalc.bredon.cells import CellComplex, RepDegree, sphere_complex, virtual_sphere_complex
from mackeycalc.bredon.realize import RealizedComplex, realize
from mackeycalc.common import get_logger
from mackeycalc.mackey.functor import MackeyFunctor, dual

log = get_logger(__name__)

Sparse = dict[int, int]


def _clean(vector: Sparse, orders: list[int]) -> Sparse:
    out = {}
    for i, x in vector.items():
        if orders[i]:
            x %= orders[i]
        if x:
            out[i] = x
    return out


def _axpy(target: Sparse, k: int, source: Sparse) -> None:
    for i, x in source.items():
        target[i] = target.get(i, 0) + k * x


def _invertible(u: int, d: int) -> int | None:
    """Inverse of u modulo d (d = 0 meaning Z), or None."""
    if d == 0:
        return u if u in (1, -1) else None
    try:
        return pow(u, -1, d)
    except ValueError:
        return None


@dataclass
class ReducedLevel:
    """One level of a realized complex after cancellation.

    ``lift[n]`` maps reduced C_n into the original C_n and ``project[n]`` maps
    back; both are chain maps and project o lift is the identity.
    """

    chains: dict[int, AbPresentation]
    differentials: dict[int, AbHom]
    lift: dict[int, IntMatrix]
    project: dict[int, IntMatrix]

    def homology(self, n: int) -> HomologyGroup:
        chain = self.chains.get(n, AbPresentation.zero())
        outgoing = self.differentials.get(n)
        incoming = self.differentials.get(n + 1)
        return group_homology(chain, outgoing, incoming)


def reduce_level(rc: RealizedComplex, sub: str) -> ReducedLevel:
    """Cancel invertible pairs in the chain complex C_*(sub)."""
    degrees = rc.degrees
    orders = {n: rc.chain_functor(n).levels[sub].diagonal_orders() for n in degrees}
    alive = {n: list(range(len(orders[n]))) for n in degrees}
    d: dict[int, dict[int, Sparse]] = {}
    for n in degrees:
        matrix = rc.differential(n).components[sub] if n - 1 in orders else None
        d[n] = {}
        for r in alive[n]:
            row = {c: x for c, x in enumerate(matrix.data[r]) if x} if matrix is not None else {}
            d[n][r] = _clean(row, orders[n - 1]) if matrix is not None else {}
    lift = {n: {g: {g: 1} for g in alive[n]} for n in degrees}
    project = {n: {g: {g: 1} for g in alive[n]} for n in degrees}

    def find_pivot(n: int) -> tuple[int, int, int, int] | None:
        for x in alive[n]:
            for y, u in d[n][x].items():
                if orders[n][x] == orders[n - 1][y]:
                    inverse = _invertible(u, orders[n - 1][y])
                    if inverse is not None:
                        return x, y, u, inverse
        return None

    cancelled = 0
    for n in degrees:
        if n - 1 not in orders:
            continue
        while (pivot := find_pivot(n)) is not None:
            x, y, _, inverse = pivot
            row_x = d[n][x]
            for b in alive[n]:
                if b == x or y not in d[n][b]:
                    continue
                k = d[n][b][y] * inverse
                _axpy(d[n][b], -k, row_x)
                d[n][b].pop(y, None)
                d[n][b] = _clean(d[n][b], orders[n - 1])
                _axpy(lift[n][b], -k, lift[n][x])
                lift[n][b] = _clean(lift[n][b], orders[n])
            rest = {c: v for c, v in row_x.items() if c != y}
            for o, vector in project[n - 1].items():
                a = vector.pop(y, 0)
                if a:
                    _axpy(vector, -a * inverse, rest)
                    project[n - 1][o] = _clean(vector, orders[n - 1])
            for vector in project[n].values():
                vector.pop(x, None)
            if n + 1 in d:
                for row in d[n + 1].values():
                    row.pop(x, None)
            alive[n].remove(x)
            alive[n - 1].remove(y)
            del d[n][x], lift[n][x], lift[n - 1][y]
            d[n - 1].pop(y, None)
            cancelled += 1

    chains, differentials, lifts, projects = {}, {}, {}, {}
    for n in degrees:
        chains[n] = AbPresentation.from_divisors([orders[n][g] for g in alive[n]])
        lifts[n] = IntMatrix.of(
            ([lift[n][g].get(o, 0) for o in range(len(orders[n]))] for g in alive[n]), cols=len(orders[n])
        )
        projects[n] = IntMatrix.of(
            ([project[n][o].get(g, 0) for g in alive[n]] for o in range(len(orders[n]))), cols=len(alive[n])
        )
    for n in degrees:
        if n - 1 in chains:
            rows = [[d[n][g].get(c, 0) for c in alive[n - 1]] for g in alive[n]]
            differentials[n] = AbHom(chains[n], chains[n - 1], IntMatrix.of(rows, cols=len(alive[n - 1])))
    log.debug(
        "level_reduced",
        level=sub,
        cancelled=cancelled,
        ranks={n: len(alive[n]) for n in degrees if alive[n]},
    )
    return ReducedLevel(chains, differentials, lifts, projects)


def homology_functors(rc: RealizedComplex, degrees: list[int] | None = None) -> dict[int, MackeyFunctor]:
    """H_n(X; M) as Mackey functors for the requested degrees (all cell degrees by default)."""
    t = rc.table
    wanted = rc.degrees if degrees is None else degrees
    reduced = {j: reduce_level(rc, j) for j in t.subgroups}
    result = {}
    for n in wanted:
        if n not in rc.degrees:
            result[n] = MackeyFunctor.zero(t, "0")
            continue
        groups = {j: reduced[j].homology(n) for j in t.subgroups}
        chain = rc.chain_functor(n)

        def induced(src: str, dst: str, matrix: IntMatrix) -> IntMatrix:
            through = reduced[src].lift[n] @ matrix @ reduced[dst].project[n]
            hs, hd = groups[src], groups[dst]
            rows = [
                hd.class_of(hd.cycles.target.reduce(through.apply(hs.representative(e))))
                for e in IntMatrix.identity(hs.group.generator_count).data
            ]
            return IntMatrix.of(rows, cols=hd.group.generator_count)

        restrictions = {(s, b): induced(b, s, chain.restrictions[(s, b)]) for s, b in t.pairs()}
        transfers = {(s, b): induced(s, b, chain.transfers[(s, b)]) for s, b in t.pairs()}
        weyl = {(j, g): induced(j, j, chain.weyl[(j, g)]) for j in t.subgroups for g in t.elements}
        levels = {j: groups[j].group for j in t.subgroups}
        result[n] = MackeyFunctor(t, levels, restrictions, transfers, weyl, f"H_{n}").canonical()
    return result


def complex_for(table: GroupTable, v: RepDegree) -> CellComplex:
    return sphere_complex(table, v) if v.is_actual() else virtual_sphere_complex(table, v)


def homology(v: RepDegree, m: MackeyFunctor, n: int) -> MackeyFunctor:
    """Reduced Bredon homology H_n(S^V; M); negative sign multiplicities use dual cells."""
    rc = realize(complex_for(m.table, v), m)
    result = homology_functors(rc, [n])[n]
    return result.with_name(f"H_{n}(S^{{{v.label()}}}; {m.name})")


def cohomology(v: RepDegree, m: MackeyFunctor, n: int) -> MackeyFunctor:
    """Reduced Bredon cohomology H^n(S^V; M).

    Finite coefficients go through Pontryagin duality, dual(H_n(S^V; dual M)).
    Otherwise the dual cells of S^V compute it directly as H_(-n) of S^(-V).
    """
    name = f"H^{n}(S^{{{v.label()}}}; {m.name})"
    if m.is_finite():
        return dual(homology(v, dual(m), n)).with_name(name)
    return cohomology_by_cells(v, m, n).with_name(name)


def cohomology_by_cells(v: RepDegree, m: MackeyFunctor, n: int) -> MackeyFunctor:
    negated = RepDegree(-v.trivial, {h: -k for h, k in v.signs.items()})
    return homology(negated, m, -n)
