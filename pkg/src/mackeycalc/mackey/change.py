"""Change of groups: restriction, induction, inflation and geometric fixed points."""

from __future__ import annotations

from mackeycalc.algebra.grouptab import GroupTable
from mackeycalc.algebra.zlattice import AbPresentation, IntMatrix
from mackeycalc.common import get_logger
from mackeycalc.mackey.functor import MackeyFunctor
from mackeycalc.mackey.gsets import GSet, evaluate, pullback, pushforward

log = get_logger(__name__)


def restrict(sub: str, m: MackeyFunctor) -> MackeyFunctor:
    """Restriction to a subgroup: keep the levels below ``sub`` and the elements of ``sub``."""
    emb = m.table.subgroup_table(sub)
    t, ids = emb.table, emb.ids
    return MackeyFunctor(
        t,
        {s: m.levels[ids[s]] for s in t.subgroups},
        {(a, b): m.res_matrix(ids[a], ids[b]) for a, b in t.pairs()},
        {(a, b): m.tr_matrix(ids[a], ids[b]) for a, b in t.pairs()},
        {(s, g): m.weyl_matrix(ids[s], emb.elements[g]) for s in t.subgroups for g in t.elements},
        f"res_{sub}({m.name})" if sub != m.table.top else m.name,
    )


def induce(table: GroupTable, sub: str, n: MackeyFunctor) -> MackeyFunctor:
    """Induction of a functor on ``sub`` up to ``table``: (ind N)(G/J) = N(G/J as a sub-set)."""
    emb = table.subgroup_table(sub)
    if n.table.group_id != emb.table.group_id:
        raise ValueError(f"Induction from {sub} needs a {emb.table.group_id}-functor, got {n.table.group_id}")
    orbits = {j: GSet.orbit(table, j).restricted(emb.table, dict(emb.elements)) for j in table.subgroups}

    def project(big: str):
        return lambda c: table.coset_rep(c, big)

    def translate(j: str, g):
        return lambda c: table.coset_rep(table.add(g, c), j)

    levels = {j: evaluate(n, orbits[j]) for j in table.subgroups}
    restrictions = {
        (small, big): pullback(n, orbits[small], orbits[big], project(big)) for small, big in table.pairs()
    }
    transfers = {
        (small, big): pushforward(n, orbits[small], orbits[big], project(big)) for small, big in table.pairs()
    }
    weyl = {
        (j, g): pushforward(n, orbits[j], orbits[j], translate(j, g))
        for j in table.subgroups
        for g in table.elements
    }
    name = f"up_{sub}({n.name})" if table.group_id == "K4" else f"up({n.name})"
    log.debug("functor_induced", source=n.name, subgroup=sub)
    return MackeyFunctor(table, levels, restrictions, transfers, weyl, name)


def inflate(table: GroupTable, sub: str, m: MackeyFunctor) -> MackeyFunctor:
    """Inflation along G -> G/sub: levels containing ``sub`` copy M, the rest are zero."""
    quotient = table.quotient_table(sub)
    if m.table.group_id != quotient.table.group_id:
        raise ValueError(f"Inflation along {sub} needs a {quotient.table.group_id}-functor, got {m.table.group_id}")
    back = {ambient: q for q, ambient in quotient.ids.items()}

    def level(j: str) -> AbPresentation:
        return m.levels[back[j]] if j in back else AbPresentation.zero()

    def gens(j: str) -> int:
        return level(j).generator_count

    restrictions, transfers = {}, {}
    for small, big in table.pairs():
        if small in back and big in back:
            restrictions[(small, big)] = m.res_matrix(back[small], back[big])
            transfers[(small, big)] = m.tr_matrix(back[small], back[big])
        else:
            restrictions[(small, big)] = IntMatrix.zeros(gens(big), gens(small))
            transfers[(small, big)] = IntMatrix.zeros(gens(small), gens(big))
    weyl = {
        (j, g): m.weyl_matrix(back[j], quotient.project[g]) if j in back else IntMatrix.identity(0)
        for j in table.subgroups
        for g in table.elements
    }
    levels = {j: level(j) for j in table.subgroups}
    return MackeyFunctor(table, levels, restrictions, transfers, weyl, f"phi*_{sub}({m.name})")


def geometric_fixed(m: MackeyFunctor, sub: str) -> MackeyFunctor:
    """Quotient every level containing ``sub`` by transfers from subgroups not containing it."""
    t = m.table
    quotient = t.quotient_table(sub)
    qt, ids = quotient.table, quotient.ids
    levels = {}
    for q in qt.subgroups:
        j = ids[q]
        level = m.levels[j]
        rows = list(level.relations.data)
        for small in t.proper_subgroups(j):
            if not t.is_subgroup(sub, small):
                rows.extend(m.tr_matrix(small, j).data)
        levels[q] = AbPresentation.from_relations(level.generator_count, rows, level.labels)
    lift = {}
    for g in t.elements:
        lift.setdefault(quotient.project[g], g)
    result = MackeyFunctor(
        qt,
        levels,
        {(a, b): m.res_matrix(ids[a], ids[b]) for a, b in qt.pairs()},
        {(a, b): m.tr_matrix(ids[a], ids[b]) for a, b in qt.pairs()},
        {(q, g): m.weyl_matrix(ids[q], lift[g]) for q in qt.subgroups for g in qt.elements},
        f"Phi^{sub}({m.name})",
    )
    log.debug("geometric_fixed_points", functor=m.name, subgroup=sub, levels=[lv.describe() for lv in levels.values()])
    return result
