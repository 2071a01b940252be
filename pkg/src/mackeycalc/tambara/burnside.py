"""The Burnside Tambara functor.

Level J is the Burnside ring A(J), free on the orbits J/K (K <= J, in table order,
so J/J = 1 comes first). Products, restrictions and transfers are orbit counts;
norms are computed through ghost coordinates (marks), where they are products.
"""

from __future__ import annotations

from functools import cache

from mackeycalc.algebra.grouptab import GroupTable, get_table
from mackeycalc.algebra.zlattice import AbPresentation, IntMatrix, Vector, unit
from mackeycalc.common import get_logger
from mackeycalc.mackey.functor import MackeyFunctor
from mackeycalc.tambara.green import GreenFunctor, SymbolicNorm, TambaraFunctor

log = get_logger(__name__)


def orbit_basis(table: GroupTable, level: str) -> list[str]:
    """Subgroups K of ``level`` indexing the orbit basis level/K."""
    return [k for k in table.subgroups if table.is_subgroup(k, level)]


def orbit_label(table: GroupTable, level: str, k: str) -> str:
    if k == level:
        return "1"
    if table.group_id == "C2":
        return "t"
    if table.group_id == "K4" and level == table.top:
        return "t_Lt_D" if k == table.bottom else f"t_{k}"
    return f"s_{level}"


def marks(table: GroupTable, level: str, x: Vector) -> dict[str, int]:
    """Ghost coordinates: |X^L| for every L <= level."""
    basis = orbit_basis(table, level)
    return {
        sub: sum(c * table.index(k, level) for c, k in zip(x, basis, strict=True) if table.is_subgroup(sub, k))
        for sub in basis
    }


def from_marks(table: GroupTable, level: str, ghost: dict[str, int]) -> Vector:
    """Inverse of ``marks``; raises if the ghost vector is not in the image."""
    basis = orbit_basis(table, level)
    coeffs: dict[str, int] = {}
    for sub in basis:  # largest subgroups first
        rest = ghost[sub] - sum(
            coeffs[k] * table.index(k, level) for k in coeffs if table.is_subgroup(sub, k)
        )
        size = table.index(sub, level)
        if rest % size:
            raise ValueError(f"Ghost vector {ghost} is not the image of a Burnside element of {level}")
        coeffs[sub] = rest // size
    return tuple(coeffs[k] for k in basis)


def burnside_norm(table: GroupTable, small: str, big: str, x: Vector) -> Vector:
    """nm^big_small via marks: |nm(X)^L| = |X^(L n small)| ** [big : L.small]."""
    ghost = marks(table, small, x)
    values = {
        sub: ghost[table.intersection(sub, small)] ** table.index(table.join(sub, small), big)
        for sub in orbit_basis(table, big)
    }
    return from_marks(table, big, values)


@cache
def burnside(group_id: str) -> TambaraFunctor:
    """The Burnside Tambara functor of e, C2 or K4."""
    table = get_table(group_id)
    bases = {j: orbit_basis(table, j) for j in table.subgroups}
    levels = {
        j: AbPresentation.from_relations(
            len(bases[j]), [], [orbit_label(table, j, k) for k in bases[j]]
        )
        for j in table.subgroups
    }

    def position(level: str, k: str) -> int:
        return bases[level].index(k)

    restrictions, transfers = {}, {}
    for small, big in table.pairs():
        rows = []
        for k in bases[big]:
            row = [0] * len(bases[small])
            row[position(small, table.intersection(small, k))] += table.index(table.join(small, k), big)
            rows.append(row)
        restrictions[(small, big)] = IntMatrix.of(rows, cols=len(bases[small]))
        transfers[(small, big)] = IntMatrix.of(
            [unit(position(big, k), len(bases[big])) for k in bases[small]], cols=len(bases[big])
        )
    weyl = {
        (j, g): IntMatrix.identity(len(bases[j])) for j in table.subgroups for g in table.elements
    }
    mackey = MackeyFunctor(table, levels, restrictions, transfers, weyl, "A")

    products = {}
    for j in table.subgroups:
        products[j] = tuple(
            tuple(
                tuple(
                    table.index(table.join(a, b), j) if k == table.intersection(a, b) else 0
                    for k in bases[j]
                )
                for b in bases[j]
            )
            for a in bases[j]
        )
    units = {j: unit(0, len(bases[j])) for j in table.subgroups}
    norms = {
        (small, big): SymbolicNorm(
            lambda x, s=small, b=big: burnside_norm(table, s, b, x),
            f"marks: |nm(X)^L| = |X^(L n {small})|^[{big}:L{small}]",
        )
        for small, big in table.covers()
    }
    log.debug("burnside_built", group=group_id, ranks={j: len(bases[j]) for j in table.subgroups})
    return TambaraFunctor(GreenFunctor(mackey, units, products), norms)
