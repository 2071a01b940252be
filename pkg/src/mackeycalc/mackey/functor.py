"""Mackey functors over a group table and their morphisms.

A Mackey functor stores one presented group per subgroup, a restriction and a
transfer matrix for every proper inclusion H < J, and a Weyl action matrix for
every pair (J, g). Matrices follow the row convention of ``zlattice``: the matrix
of res^J_H has one row per generator of M(J).
"""

from __future__ import annotations

import dataclasses
from collections.abc import Mapping, Sequence
from dataclasses import dataclass

from mackeycalc.algebra import zlattice
from mackeycalc.algebra.grouptab import Element, GroupTable
from mackeycalc.algebra.zlattice import AbHom, AbPresentation, IntMatrix, dual_hom, dual_presentation
from mackeycalc.common import get_logger
from mackeycalc.common.errors import MackeyAxiomError

log = get_logger(__name__)

MatrixSpec = IntMatrix | Sequence[Sequence[int]]
LevelSpec = AbPresentation | Sequence[int]


def _as_matrix(spec: MatrixSpec, rows: int, cols: int, what: str) -> IntMatrix:
    matrix = spec if isinstance(spec, IntMatrix) else IntMatrix.of(spec, cols=cols)
    if (matrix.rows, matrix.cols) != (rows, cols):
        raise ValueError(f"{what} must be {rows}x{cols}, got {matrix.rows}x{matrix.cols}")
    return matrix


@dataclass(eq=False)
class MackeyFunctor:
    """Lewis diagram: levels, restrictions, transfers and Weyl actions."""

    table: GroupTable
    levels: dict[str, AbPresentation]
    restrictions: dict[tuple[str, str], IntMatrix]
    transfers: dict[tuple[str, str], IntMatrix]
    weyl: dict[tuple[str, Element], IntMatrix]
    name: str = ""

    def __post_init__(self) -> None:
        t = self.table
        missing = [sub for sub in t.subgroups if sub not in self.levels]
        if missing:
            raise ValueError(f"Missing levels {missing} for {t.group_id}")
        for small, big in t.pairs():
            m, n = self.levels[big].generator_count, self.levels[small].generator_count
            _as_matrix(self.restrictions[(small, big)], m, n, f"res^{big}_{small}")
            _as_matrix(self.transfers[(small, big)], n, m, f"tr^{big}_{small}")
        for sub in t.subgroups:
            n = self.levels[sub].generator_count
            for g in t.elements:
                _as_matrix(self.weyl[(sub, g)], n, n, f"Weyl action of {g} on {sub}")

    # -- construction ---------------------------------------------------------

    @classmethod
    def build(
        cls,
        table: GroupTable,
        levels: Mapping[str, LevelSpec],
        res: Mapping[tuple[str, str], MatrixSpec] | None = None,
        tr: Mapping[tuple[str, str], MatrixSpec] | None = None,
        weyl: Mapping[tuple[str, Element], MatrixSpec] | None = None,
        name: str = "",
    ) -> MackeyFunctor:
        """Build from level data and maps along index-2 steps.

        Levels may be presentations or divisor lists; missing levels are zero.
        Missing covering maps are zero, longer composites are derived, and
        missing Weyl matrices are generated from the given ones (identity otherwise).
        """
        res, tr, weyl = dict(res or {}), dict(tr or {}), dict(weyl or {})
        unknown = [sub for sub in levels if sub not in table.subgroups]
        if unknown:
            raise ValueError(f"Unknown subgroup: {unknown[0]}. Available: {list(table.subgroups)}")
        lv: dict[str, AbPresentation] = {}
        for sub in table.subgroups:
            spec = levels.get(sub, AbPresentation.zero())
            lv[sub] = spec if isinstance(spec, AbPresentation) else AbPresentation.from_divisors(spec)

        def gens(sub: str) -> int:
            return lv[sub].generator_count

        restrictions: dict[tuple[str, str], IntMatrix] = {}
        transfers: dict[tuple[str, str], IntMatrix] = {}
        for small, big in sorted(table.pairs(), key=lambda p: table.index(*p)):
            key = (small, big)
            if table.index(small, big) == 2:
                restrictions[key] = _as_matrix(
                    res.get(key, IntMatrix.zeros(gens(big), gens(small))), gens(big), gens(small), f"res^{big}_{small}"
                )
                transfers[key] = _as_matrix(
                    tr.get(key, IntMatrix.zeros(gens(small), gens(big))), gens(small), gens(big), f"tr^{big}_{small}"
                )
                continue
            mid = next(k for k in table.proper_subgroups(big) if (small, k) in table.covers())
            restrictions[key] = (
                _as_matrix(res[key], gens(big), gens(small), f"res^{big}_{small}")
                if key in res
                else restrictions[(mid, big)] @ restrictions[(small, mid)]
            )
            transfers[key] = (
                _as_matrix(tr[key], gens(small), gens(big), f"tr^{big}_{small}")
                if key in tr
                else transfers[(small, mid)] @ transfers[(mid, big)]
            )

        actions: dict[tuple[str, Element], IntMatrix] = {}
        for sub in table.subgroups:
            n = gens(sub)
            given = {
                g: _as_matrix(m, n, n, f"Weyl action of {g} on {sub}")
                for (s, g), m in weyl.items()
                if s == sub
            }
            for g in table.subgroup(sub):
                given.setdefault(g, IntMatrix.identity(n))
            changed = True
            while changed:
                changed = False
                for g, h in [(g, h) for g in list(given) for h in list(given)]:
                    k = table.add(g, h)
                    if k not in given:
                        given[k] = given[g] @ given[h]
                        changed = True
            for g in table.elements:
                actions[(sub, g)] = given.get(g, IntMatrix.identity(n))

        return cls(table, lv, restrictions, transfers, actions, name)

    @classmethod
    def zero(cls, table: GroupTable, name: str = "0") -> MackeyFunctor:
        return cls.build(table, {}, name=name)

    def with_name(self, name: str) -> MackeyFunctor:
        return dataclasses.replace(self, name=name)

    # -- accessors ------------------------------------------------------------

    def level(self, sub: str) -> AbPresentation:
        self.table.subgroup(sub)
        return self.levels[sub]

    def res_matrix(self, small: str, big: str) -> IntMatrix:
        if small == big:
            return IntMatrix.identity(self.level(big).generator_count)
        if (small, big) not in self.restrictions:
            raise ValueError(f"{small} is not a proper subgroup of {big}")
        return self.restrictions[(small, big)]

    def tr_matrix(self, small: str, big: str) -> IntMatrix:
        if small == big:
            return IntMatrix.identity(self.level(big).generator_count)
        if (small, big) not in self.transfers:
            raise ValueError(f"{small} is not a proper subgroup of {big}")
        return self.transfers[(small, big)]

    def weyl_matrix(self, sub: str, g: Element) -> IntMatrix:
        return self.weyl[(sub, g)]

    def res(self, small: str, big: str) -> AbHom:
        """res^big_small : M(big) -> M(small)."""
        return AbHom(self.level(big), self.level(small), self.res_matrix(small, big))

    def tr(self, small: str, big: str) -> AbHom:
        """tr^big_small : M(small) -> M(big)."""
        return AbHom(self.level(small), self.level(big), self.tr_matrix(small, big))

    def conj(self, sub: str, g: Element) -> AbHom:
        return AbHom(self.level(sub), self.level(sub), self.weyl_matrix(sub, g))

    def support(self) -> list[str]:
        return [sub for sub in self.table.subgroups if not self.levels[sub].is_trivial()]

    def is_zero(self) -> bool:
        return not self.support()

    def is_finite(self) -> bool:
        return all(self.levels[sub].is_finite() for sub in self.table.subgroups)

    def describe(self) -> str:
        parts = [f"{sub}: {self.levels[sub].describe()}" for sub in self.table.subgroups]
        return f"{self.name or 'M'} [{', '.join(parts)}]"

    # -- normal form ----------------------------------------------------------

    def normalized(self) -> tuple[MackeyFunctor, MackeyMorphism, MackeyMorphism]:
        """Isomorphic functor with Smith-diagonal levels, plus the isomorphisms both ways."""
        simple = {sub: self.levels[sub].simplify() for sub in self.table.subgroups}
        levels = {sub: simple[sub][0] for sub in simple}

        def move(matrix: IntMatrix, src: str, dst: str) -> IntMatrix:
            return simple[src][2].matrix @ matrix @ simple[dst][1].matrix

        restrictions = {key: move(m, key[1], key[0]) for key, m in self.restrictions.items()}
        transfers = {key: move(m, key[0], key[1]) for key, m in self.transfers.items()}
        weyl = {key: move(m, key[0], key[0]) for key, m in self.weyl.items()}
        normal = MackeyFunctor(self.table, levels, restrictions, transfers, weyl, self.name)
        normal = normal.canonical()
        to_normal = MackeyMorphism(self, normal, {sub: simple[sub][1].matrix for sub in simple})
        from_normal = MackeyMorphism(normal, self, {sub: simple[sub][2].matrix for sub in simple})
        return normal, to_normal, from_normal

    def canonical(self) -> MackeyFunctor:
        """Same functor with every matrix row reduced in its target level."""

        def reduce(matrix: IntMatrix, target: str) -> IntMatrix:
            level = self.levels[target]
            return IntMatrix.of((level.reduce(row) for row in matrix.data), cols=matrix.cols)

        return MackeyFunctor(
            self.table,
            dict(self.levels),
            {key: reduce(m, key[0]) for key, m in self.restrictions.items()},
            {key: reduce(m, key[1]) for key, m in self.transfers.items()},
            {key: reduce(m, key[0]) for key, m in self.weyl.items()},
            self.name,
        )

    # -- equality -------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MackeyFunctor):
            return NotImplemented
        return (
            self.table.group_id == other.table.group_id
            and self.name == other.name
            and self.levels == other.levels
            and self.restrictions == other.restrictions
            and self.transfers == other.transfers
            and self.weyl == other.weyl
        )

    __hash__ = None  # type: ignore[assignment]


# =============================================================================
# Axioms
# =============================================================================


def _first_difference(lhs: AbHom, rhs: AbHom) -> str:
    for i in range(lhs.source.generator_count):
        a, b = lhs.apply(lhs.matrix.row(i)), rhs.apply(rhs.matrix.row(i))
        if not lhs.target.equal(a, b):
            return f"generator {i}: {a} != {b}"
    return "no witness"


def validate(m: MackeyFunctor) -> list[str]:
    """List every violated Mackey axiom with a witness; empty means valid."""
    t = m.table
    problems: list[str] = []
    for small, big in t.pairs():
        if not m.res(small, big).is_well_defined():
            problems.append(f"res^{big}_{small} is not well defined")
        if not m.tr(small, big).is_well_defined():
            problems.append(f"tr^{big}_{small} is not well defined")
    for sub in t.subgroups:
        for g in t.elements:
            if not m.conj(sub, g).is_well_defined():
                problems.append(f"Weyl action of {g} on {sub} is not well defined")
    if problems:
        return problems

    for sub in t.subgroups:
        identity = AbHom.identity(m.level(sub))
        for g in t.subgroup(sub):
            if not m.conj(sub, g).equals(identity):
                problems.append(f"{g} in {sub} acts nontrivially on level {sub}")
        for g in t.elements:
            for h in t.elements:
                lhs = m.conj(sub, g).then(m.conj(sub, h))
                rhs = m.conj(sub, t.add(g, h))
                if not lhs.equals(rhs):
                    problems.append(f"Weyl action on {sub} is not a group action at {g}, {h}")

    for small, big in t.pairs():
        for mid in t.proper_subgroups(big):
            if mid == small or not t.is_subgroup(small, mid):
                continue
            if not m.res(small, big).equals(m.res(mid, big).then(m.res(small, mid))):
                problems.append(f"res^{big}_{small} != res^{mid}_{small} o res^{big}_{mid}")
            if not m.tr(small, big).equals(m.tr(small, mid).then(m.tr(mid, big))):
                problems.append(f"tr^{big}_{small} != tr^{big}_{mid} o tr^{mid}_{small}")
        for g in t.elements:
            lhs = m.conj(big, g).then(m.res(small, big))
            rhs = m.res(small, big).then(m.conj(small, g))
            if not lhs.equals(rhs):
                problems.append(f"res^{big}_{small} is not equivariant for {g}: {_first_difference(lhs, rhs)}")
            lhs = m.conj(small, g).then(m.tr(small, big))
            rhs = m.tr(small, big).then(m.conj(big, g))
            if not lhs.equals(rhs):
                problems.append(f"tr^{big}_{small} is not equivariant for {g}: {_first_difference(lhs, rhs)}")

    for big in t.subgroups:
        for a in [big, *t.proper_subgroups(big)]:
            for b in [big, *t.proper_subgroups(big)]:
                lhs = m.tr(b, big).then(m.res(a, big))
                meet = t.intersection(a, b)
                rhs = AbHom.zero(m.level(b), m.level(a))
                for g in t.double_cosets(a, b, within=big):
                    rhs = rhs + m.res(meet, b).then(m.conj(meet, g)).then(m.tr(meet, a))
                if not lhs.equals(rhs):
                    problems.append(
                        f"double coset formula fails for res^{big}_{a} tr^{big}_{b}: "
                        f"{_first_difference(lhs, rhs)}"
                    )
    return problems


def require_valid(m: MackeyFunctor) -> MackeyFunctor:
    problems = validate(m)
    if problems:
        log.warning("mackey_functor_invalid", name=m.name, violations=len(problems))
        raise MackeyAxiomError(m.name, problems)
    return m


# =============================================================================
# Morphisms
# =============================================================================


@dataclass(eq=False)
class MackeyMorphism:
    """Levelwise homomorphisms source(H) -> target(H)."""

    source: MackeyFunctor
    target: MackeyFunctor
    components: dict[str, IntMatrix]

    def __post_init__(self) -> None:
        if self.source.table.group_id != self.target.table.group_id:
            raise ValueError("Morphism between functors over different groups")
        for sub in self.source.table.subgroups:
            _as_matrix(
                self.components[sub],
                self.source.levels[sub].generator_count,
                self.target.levels[sub].generator_count,
                f"component at {sub}",
            )

    @classmethod
    def identity(cls, m: MackeyFunctor) -> MackeyMorphism:
        return cls(m, m, {sub: IntMatrix.identity(m.levels[sub].generator_count) for sub in m.table.subgroups})

    @classmethod
    def zero(cls, source: MackeyFunctor, target: MackeyFunctor) -> MackeyMorphism:
        return cls(
            source,
            target,
            {
                sub: IntMatrix.zeros(source.levels[sub].generator_count, target.levels[sub].generator_count)
                for sub in source.table.subgroups
            },
        )

    def component(self, sub: str) -> AbHom:
        return AbHom(self.source.level(sub), self.target.level(sub), self.components[sub])

    def then(self, other: MackeyMorphism) -> MackeyMorphism:
        """The composite ``other o self``."""
        return MackeyMorphism(
            self.source,
            other.target,
            {sub: self.components[sub] @ other.components[sub] for sub in self.source.table.subgroups},
        )

    def violations(self) -> list[str]:
        t = self.source.table
        problems = [
            f"component at {sub} is not well defined"
            for sub in t.subgroups
            if not self.component(sub).is_well_defined()
        ]
        if problems:
            return problems
        s, m = self.source, self.target
        for small, big in t.pairs():
            if not self.component(big).then(m.res(small, big)).equals(s.res(small, big).then(self.component(small))):
                problems.append(f"does not commute with res^{big}_{small}")
            if not self.component(small).then(m.tr(small, big)).equals(s.tr(small, big).then(self.component(big))):
                problems.append(f"does not commute with tr^{big}_{small}")
        for sub in t.subgroups:
            for g in t.elements:
                if not self.component(sub).then(m.conj(sub, g)).equals(s.conj(sub, g).then(self.component(sub))):
                    problems.append(f"does not commute with the action of {g} on {sub}")
        return problems

    def validate(self) -> MackeyMorphism:
        problems = self.violations()
        if problems:
            raise MackeyAxiomError(f"morphism {self.source.name} -> {self.target.name}", problems)
        return self

    def is_isomorphism(self) -> bool:
        return all(self.component(sub).is_isomorphism() for sub in self.source.table.subgroups)


# =============================================================================
# Constructions
# =============================================================================


def direct_sum(*functors: MackeyFunctor, name: str | None = None) -> MackeyFunctor:
    """Levelwise direct sum."""
    if not functors:
        raise ValueError("direct_sum needs at least one functor")
    t = functors[0].table
    if any(f.table.group_id != t.group_id for f in functors):
        raise ValueError("Cannot add Mackey functors over different groups")

    def blocks(pick) -> IntMatrix:
        return IntMatrix.block_diagonal([pick(f) for f in functors])

    return MackeyFunctor(
        t,
        {sub: functors[0].levels[sub].direct_sum(*(f.levels[sub] for f in functors[1:])) for sub in t.subgroups},
        {key: blocks(lambda f, key=key: f.restrictions[key]) for key in functors[0].restrictions},
        {key: blocks(lambda f, key=key: f.transfers[key]) for key in functors[0].transfers},
        {key: blocks(lambda f, key=key: f.weyl[key]) for key in functors[0].weyl},
        name if name is not None else " + ".join(f.name or "M" for f in functors),
    )


def kernel(f: MackeyMorphism) -> tuple[MackeyFunctor, MackeyMorphism]:
    """Levelwise kernel with induced restrictions, transfers and Weyl actions."""
    t = f.source.table
    parts = {sub: zlattice.kernel(f.component(sub)) for sub in t.subgroups}
    levels = {sub: parts[sub][0] for sub in t.subgroups}
    inc = {sub: parts[sub][1] for sub in t.subgroups}
    restrictions = {
        (small, big): inc[big].then(f.source.res(small, big)).lift_through(inc[small]).matrix
        for small, big in t.pairs()
    }
    transfers = {
        (small, big): inc[small].then(f.source.tr(small, big)).lift_through(inc[big]).matrix
        for small, big in t.pairs()
    }
    weyl = {
        (sub, g): inc[sub].then(f.source.conj(sub, g)).lift_through(inc[sub]).matrix
        for sub in t.subgroups
        for g in t.elements
    }
    name = f"ker({f.source.name} -> {f.target.name})"
    result = MackeyFunctor(t, levels, restrictions, transfers, weyl, name)
    return result, MackeyMorphism(result, f.source, {sub: inc[sub].matrix for sub in t.subgroups})


def cokernel(f: MackeyMorphism) -> tuple[MackeyFunctor, MackeyMorphism]:
    """Levelwise cokernel; the maps are the target's, read modulo the image."""
    t = f.target.table
    levels = {sub: zlattice.cokernel(f.component(sub))[0] for sub in t.subgroups}
    name = f"coker({f.source.name} -> {f.target.name})"
    result = MackeyFunctor(
        t, levels, dict(f.target.restrictions), dict(f.target.transfers), dict(f.target.weyl), name
    )
    projection = MackeyMorphism(
        f.target, result, {sub: IntMatrix.identity(levels[sub].generator_count) for sub in t.subgroups}
    )
    return result, projection


def _dual_name(name: str) -> str:
    if not name:
        return ""
    return name[:-1] if name.endswith("*") else f"{name}*"


def dual(m: MackeyFunctor) -> MackeyFunctor:
    """Levelwise Pontryagin dual; restrictions and transfers trade places."""
    t = m.table
    if not m.is_finite():
        raise ValueError(f"Dual needs finite levels; {m.describe()} has a free summand")
    return MackeyFunctor(
        t,
        {sub: dual_presentation(m.levels[sub]) for sub in t.subgroups},
        {(small, big): dual_hom(m.tr(small, big)).matrix for small, big in t.pairs()},
        {(small, big): dual_hom(m.res(small, big)).matrix for small, big in t.pairs()},
        {(sub, g): dual_hom(m.conj(sub, g)).matrix for sub in t.subgroups for g in t.elements},
        _dual_name(m.name),
    )


def hom_space(source: MackeyFunctor, target: MackeyFunctor) -> list[MackeyMorphism]:
    """Generators of the group of Mackey morphisms source -> target.

    Unknowns are the entries of one matrix per level. Well-definedness and the
    commutation with covering restrictions, transfers and Weyl actions are linear
    conditions valued in target levels, so the solutions form an integer kernel.
    """
    t = source.table
    subs = [sub for sub in t.subgroups if source.levels[sub].generator_count and target.levels[sub].generator_count]
    start: dict[str, int] = {}
    total = 0
    for sub in subs:
        start[sub] = total
        total += source.levels[sub].generator_count * target.levels[sub].generator_count

    def var(sub: str, i: int, k: int) -> int:
        return start[sub] + i * target.levels[sub].generator_count + k

    blocks: list[AbPresentation] = []
    columns: list[dict[int, int]] = []  # per constraint column: unknown -> coefficient

    def constraint(level: str) -> list[dict[int, int]]:
        blocks.append(target.levels[level])
        cols = [{} for _ in range(target.levels[level].generator_count)]
        columns.extend(cols)
        return cols

    def add(cols: list[dict[int, int]], eq: int, sub: str, i: int, k: int, coeff: int) -> None:
        """Adds coeff * X_sub[i, k] to constraint column ``eq``."""
        if coeff and sub in start:
            key = var(sub, i, k)
            cols[eq][key] = cols[eq].get(key, 0) + coeff

    # relations of source(J) map into relations of target(J)
    for sub in subs:
        for rel in source.levels[sub].relations.data:
            cols = constraint(sub)
            for i, r in enumerate(rel):
                for k in range(target.levels[sub].generator_count):
                    add(cols, k, sub, i, k, r)

    def commutes(a_src: str, a_dst: str, a_matrix: IntMatrix, m_matrix: IntMatrix) -> None:
        """A_map . X_dst - X_src . M_map = 0, one constraint per generator of A(src)."""
        for a in range(source.levels[a_src].generator_count):
            cols = constraint(a_dst)
            for i in range(source.levels[a_dst].generator_count):
                for k in range(target.levels[a_dst].generator_count):
                    add(cols, k, a_dst, i, k, a_matrix[a, i])
            for kk in range(target.levels[a_src].generator_count):
                for k in range(target.levels[a_dst].generator_count):
                    add(cols, k, a_src, a, kk, -m_matrix[kk, k])

    for small, big in t.covers():
        commutes(big, small, source.res_matrix(small, big), target.res_matrix(small, big))
        commutes(small, big, source.tr_matrix(small, big), target.tr_matrix(small, big))
    for sub in t.subgroups:
        for g in t.elements:
            if g not in t.subgroup(sub):
                commutes(sub, sub, source.weyl_matrix(sub, g), target.weyl_matrix(sub, g))

    if total == 0:
        return []
    constraints = blocks[0].direct_sum(*blocks[1:]) if blocks else AbPresentation.zero()
    matrix = IntMatrix.of(
        ([col.get(u, 0) for col in columns] for u in range(total)), cols=constraints.generator_count
    )
    _, inclusion = zlattice.kernel(AbHom(AbPresentation.free(total), constraints, matrix))
    morphisms = []
    for row in inclusion.matrix.data:
        components = {}
        for sub in t.subgroups:
            n, m = source.levels[sub].generator_count, target.levels[sub].generator_count
            if sub in start:
                flat = row[start[sub] : start[sub] + n * m]
                components[sub] = IntMatrix.of((flat[i * m : (i + 1) * m] for i in range(n)), cols=m)
            else:
                components[sub] = IntMatrix.zeros(n, m)
        morphisms.append(MackeyMorphism(source, target, components))
    log.debug("hom_space_computed", source=source.name, target=target.name, generators=len(morphisms))
    return morphisms
