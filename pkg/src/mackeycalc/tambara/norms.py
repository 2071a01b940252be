"""Norms of the constant F2 as quotients of the Burnside Tambara functor."""

from __future__ import annotations

from functools import cache

from mackeycalc.algebra.grouptab import GroupTable
from mackeycalc.algebra.zlattice import Vector, unit
from mackeycalc.common import get_logger
from mackeycalc.tambara.burnside import burnside, orbit_basis
from mackeycalc.tambara.green import TambaraFunctor, rebase
from mackeycalc.tambara.ideals import ideal_generate, quotient

log = get_logger(__name__)


def norm_name(table: GroupTable, sub: str) -> str:
    if sub == table.top:
        return "F2"
    return f"N{sub}{table.top if table.group_id == 'K4' else table.group_id}_F2"


def _named_generators(table: GroupTable, sub: str, t: TambaraFunctor) -> dict[str, tuple[list[Vector], list[str]]]:
    """Printed generators: 1 on cyclic levels, b_L, b_R or c = t + 2 on the top level."""
    bases: dict[str, tuple[list[Vector], list[str]]] = {}
    for j in table.subgroups:
        level = t.level(j)
        n = level.generator_count
        one = unit(0, n)
        if len(level.elementary_divisors()) <= 1:
            bases[j] = ([one], ["1"])
            continue
        if table.group_id == "K4" and j == table.top:
            basis = orbit_basis(table, j)

            def shifted(h: str) -> Vector:
                return tuple(2 if i == 0 else (1 if k == h else 0) for i, k in enumerate(basis))

            if sub == table.bottom:
                bases[j] = ([one, shifted("L"), shifted("R")], ["1", "b_L", "b_R"])
            else:
                other = [h for h in "LDR" if h != sub][-1]
                bases[j] = ([one, shifted(other)], ["1", "c"])
    return bases


@cache
def norm_constant_f2(table: GroupTable, sub: str) -> TambaraFunctor:
    """n_sub^G(F2): the Burnside functor modulo the Tambara ideal generated by 2 at level ``sub``."""
    a = burnside(table.group_id)
    two = a.green.scalar(sub, 2)
    ideal = ideal_generate(a, [(sub, two)])
    name = norm_name(table, sub)
    q = quotient(a, ideal, name)
    result = rebase(q, _named_generators(table, sub, q), name)
    log.info("norm_built", group=table.group_id, subgroup=sub, levels=[result.level(j).describe() for j in table.subgroups])
    return result


def norm_value(t: TambaraFunctor, small: str, big: str, x: Vector) -> Vector:
    """nm^big_small(x) in canonical coordinates."""
    return t.norm(small, big, x)
