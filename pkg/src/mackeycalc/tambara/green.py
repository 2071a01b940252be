"""Green and Tambara functors.

A Green functor adds a commutative ring structure to every level of a Mackey
functor, given by structure constants on the level generators. A Tambara functor
adds multiplicative norm maps along the index-2 inclusions; longer norms are
composites. Norms are either symbolic rules on coordinates or finite tables.
"""

from __future__ import annotations

import itertools
from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass

from mackeycalc.algebra.grouptab import GroupTable
from mackeycalc.algebra.zlattice import AbHom, AbPresentation, IntMatrix, Vector, kernel, unit, vec_add
from mackeycalc.common import get_logger
from mackeycalc.common.errors import MackeyAxiomError
from mackeycalc.mackey import change
from mackeycalc.mackey.functor import MackeyFunctor, validate

log = get_logger(__name__)

Products = tuple[tuple[Vector, ...], ...]


@dataclass(eq=False)
class GreenFunctor:
    """Mackey functor with unital commutative level rings."""

    mackey: MackeyFunctor
    units: dict[str, Vector]
    products: dict[str, Products]  # products[sub][i][j] = e_i * e_j

    @property
    def table(self) -> GroupTable:
        return self.mackey.table

    @property
    def name(self) -> str:
        return self.mackey.name

    def level(self, sub: str) -> AbPresentation:
        return self.mackey.level(sub)

    def unit(self, sub: str) -> Vector:
        return self.level(sub).reduce(self.units[sub])

    def multiply(self, sub: str, x: Vector, y: Vector) -> Vector:
        level = self.level(sub)
        constants = self.products[sub]
        out = level.zero_vector()
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if b:
                    out = vec_add(out, tuple(a * b * c for c in constants[i][j]))
        return level.reduce(out)

    def power(self, sub: str, x: Vector, n: int) -> Vector:
        result = self.unit(sub)
        for _ in range(n):
            result = self.multiply(sub, result, x)
        return result

    def scalar(self, sub: str, k: int) -> Vector:
        """The integer k as an element of the level ring."""
        return self.level(sub).reduce(tuple(k * c for c in self.units[sub]))

    def res(self, small: str, big: str, x: Vector) -> Vector:
        return self.mackey.res(small, big).apply(x)

    def tr(self, small: str, big: str, x: Vector) -> Vector:
        return self.mackey.tr(small, big).apply(x)

    def with_name(self, name: str) -> GreenFunctor:
        return GreenFunctor(self.mackey.with_name(name), self.units, self.products)

    # -- axioms ---------------------------------------------------------------

    def violations(self) -> list[str]:
        """Ring axioms on generators, res a ring map, Weyl by ring maps, Frobenius reciprocity."""
        problems = list(validate(self.mackey))
        t = self.table
        for sub in t.subgroups:
            level = self.level(sub)
            n = level.generator_count
            gens = [unit(i, n) for i in range(n)]
            one = self.unit(sub)
            for i, x in enumerate(gens):
                if not level.equal(self.multiply(sub, one, x), x):
                    problems.append(f"unit fails on generator {i} at {sub}")
                for j, y in enumerate(gens):
                    if not level.equal(self.multiply(sub, x, y), self.multiply(sub, y, x)):
                        problems.append(f"product not commutative at {sub} on ({i}, {j})")
                    for k, z in enumerate(gens):
                        lhs = self.multiply(sub, self.multiply(sub, x, y), z)
                        rhs = self.multiply(sub, x, self.multiply(sub, y, z))
                        if not level.equal(lhs, rhs):
                            problems.append(f"product not associative at {sub} on ({i}, {j}, {k})")
            for rel in level.relations.data:
                for i, x in enumerate(gens):
                    if not level.is_zero(self.multiply(sub, rel, x)):
                        problems.append(f"product at {sub} does not respect relation {rel}")
        for small, big in t.pairs():
            upper, lower = self.level(big), self.level(small)
            if not lower.equal(self.res(small, big, self.unit(big)), self.unit(small)):
                problems.append(f"res^{big}_{small} does not preserve the unit")
            ups = [unit(i, upper.generator_count) for i in range(upper.generator_count)]
            lows = [unit(i, lower.generator_count) for i in range(lower.generator_count)]
            for x in ups:
                for y in ups:
                    lhs = self.res(small, big, self.multiply(big, x, y))
                    rhs = self.multiply(small, self.res(small, big, x), self.res(small, big, y))
                    if not lower.equal(lhs, rhs):
                        problems.append(f"res^{big}_{small} is not multiplicative on {x}, {y}")
                for y in lows:
                    lhs = self.tr(small, big, self.multiply(small, self.res(small, big, x), y))
                    rhs = self.multiply(big, x, self.tr(small, big, y))
                    if not upper.equal(lhs, rhs):
                        problems.append(f"Frobenius reciprocity fails for {small} < {big} on {x}, {y}")
        for sub in t.subgroups:
            level = self.level(sub)
            gens = [unit(i, level.generator_count) for i in range(level.generator_count)]
            for g in t.cosets(sub)[1:]:
                act = self.mackey.conj(sub, g)
                for x in gens:
                    for y in gens:
                        if not level.equal(act(self.multiply(sub, x, y)), self.multiply(sub, act(x), act(y))):
                            problems.append(f"Weyl action of {g} at {sub} is not multiplicative")
        return problems

    def validate(self) -> GreenFunctor:
        problems = self.violations()
        if problems:
            raise MackeyAxiomError(self.name, problems)
        return self


# =============================================================================
# Norm maps
# =============================================================================


@dataclass(frozen=True)
class SymbolicNorm:
    """Norm given by a closed-form rule on coordinates (exact on every lift)."""

    rule: Callable[[Vector], Vector]
    description: str = ""
    kind: str = "symbolic"

    def __call__(self, x: Vector) -> Vector:
        return self.rule(tuple(x))


@dataclass(frozen=True)
class TabulatedNorm:
    """Norm stored as a total table on the canonical elements of a finite level."""

    source: AbPresentation
    values: Mapping[Vector, Vector]
    kind: str = "tabulated"

    def __call__(self, x: Vector) -> Vector:
        return self.values[self.source.reduce(x)]


NormMap = SymbolicNorm | TabulatedNorm


def sample_elements(level: AbPresentation, span: int = 2) -> list[Vector]:
    """Every element of a finite level; a coordinate box for an infinite one."""
    if level.is_finite():
        return level.elements()
    box = range(-span, span + 1)
    return [tuple(v) for v in itertools.product(box, repeat=level.generator_count)]


@dataclass(eq=False)
class TambaraFunctor:
    """Green functor with norms along every index-2 inclusion."""

    green: GreenFunctor
    norms: dict[tuple[str, str], NormMap]

    def __post_init__(self) -> None:
        missing = [pair for pair in self.table.covers() if pair not in self.norms]
        if missing:
            raise ValueError(f"Missing norms for {missing}")

    @property
    def table(self) -> GroupTable:
        return self.green.table

    @property
    def mackey(self) -> MackeyFunctor:
        return self.green.mackey

    @property
    def name(self) -> str:
        return self.green.name

    def level(self, sub: str) -> AbPresentation:
        return self.green.level(sub)

    def with_name(self, name: str) -> TambaraFunctor:
        return TambaraFunctor(self.green.with_name(name), self.norms)

    def norm(self, small: str, big: str, x: Vector) -> Vector:
        """nm^big_small(x), composing index-2 steps."""
        t = self.table
        x = self.level(small).reduce(x)
        if small == big:
            return x
        if (small, big) in self.norms:
            return self.level(big).reduce(self.norms[(small, big)](x))
        if (small, big) not in t.pairs():
            raise ValueError(f"{small} is not a proper subgroup of {big}")
        mid = next(k for k in t.proper_subgroups(big) if (small, k) in t.covers())
        return self.norm(mid, big, self.norm(small, mid, x))

    # -- axioms ---------------------------------------------------------------

    def violations(self, span: int = 2) -> list[str]:
        """Green axioms plus unitality, multiplicativity, index-2 reciprocity and res o nm."""
        problems = self.green.violations()
        t = self.table
        g = self.green
        for small, big in t.covers():
            lower, upper = self.level(small), self.level(big)
            gamma = self.mackey.conj(small, t.element_outside(small, big))
            if not upper.equal(self.norm(small, big, g.unit(small)), g.unit(big)):
                problems.append(f"nm^{big}_{small}(1) != 1")
            samples = sample_elements(lower, span)
            values = {x: self.norm(small, big, x) for x in samples}
            for a in samples:
                res_nm = g.res(small, big, values[a])
                if not lower.equal(res_nm, g.multiply(small, a, gamma(a))):
                    problems.append(f"res^{big}_{small} nm^{big}_{small}({a}) != a * gamma(a)")
                for b in samples:
                    ab = g.multiply(small, a, b)
                    if not upper.equal(self.norm(small, big, ab), g.multiply(big, values[a], values[b])):
                        problems.append(f"nm^{big}_{small} is not multiplicative on {a}, {b}")
                    lhs = self.norm(small, big, vec_add(a, b))
                    rhs = vec_add(
                        vec_add(values[a], values[b]),
                        g.tr(small, big, g.multiply(small, a, gamma(b))),
                    )
                    if not upper.equal(lhs, rhs):
                        problems.append(f"Tambara reciprocity fails for {small} < {big} on {a}, {b}")
        return problems

    def validate(self, span: int = 2) -> TambaraFunctor:
        problems = self.violations(span)
        if problems:
            raise MackeyAxiomError(self.name, problems)
        log.debug("tambara_validated", name=self.name)
        return self


# =============================================================================
# Change of basis, restriction, geometric fixed points
# =============================================================================


def transport(
    t: TambaraFunctor,
    to_new: Mapping[str, AbHom],
    from_new: Mapping[str, AbHom],
    name: str | None = None,
) -> TambaraFunctor:
    """Move every structure map along levelwise isomorphisms old -> new."""
    tab = t.table
    m = t.mackey
    levels = {sub: to_new[sub].target for sub in tab.subgroups}

    def move(matrix: IntMatrix, src: str, dst: str) -> IntMatrix:
        return from_new[src].matrix @ matrix @ to_new[dst].matrix

    mackey = MackeyFunctor(
        tab,
        levels,
        {key: move(mat, key[1], key[0]) for key, mat in m.restrictions.items()},
        {key: move(mat, key[0], key[1]) for key, mat in m.transfers.items()},
        {key: move(mat, key[0], key[0]) for key, mat in m.weyl.items()},
        name if name is not None else m.name,
    ).canonical()
    units = {sub: to_new[sub].apply(t.green.units[sub]) for sub in tab.subgroups}
    products: dict[str, Products] = {}
    for sub in tab.subgroups:
        basis = from_new[sub].matrix.data
        products[sub] = tuple(
            tuple(to_new[sub].apply(t.green.multiply(sub, x, y)) for y in basis) for x in basis
        )
    green = GreenFunctor(mackey, units, products)
    norms: dict[tuple[str, str], NormMap] = {}
    for small, big in tab.covers():
        source = levels[small]
        if source.is_finite():
            values = {
                x: to_new[big].apply(t.norm(small, big, from_new[small].apply(x))) for x in source.elements()
            }
            norms[(small, big)] = TabulatedNorm(source, values)
        else:
            norms[(small, big)] = SymbolicNorm(
                lambda x, s=small, b=big: to_new[b].apply(t.norm(s, b, from_new[s].matrix.apply(x)))
            )
    return TambaraFunctor(green, norms)


def rebase(
    t: TambaraFunctor, bases: Mapping[str, tuple[Iterable[Vector], Iterable[str]]], name: str | None = None
) -> TambaraFunctor:
    """Present the given levels on new generators (vectors in old coordinates) with labels."""
    to_new: dict[str, AbHom] = {}
    from_new: dict[str, AbHom] = {}
    for sub in t.table.subgroups:
        old = t.level(sub)
        if sub not in bases:
            to_new[sub] = AbHom.identity(old)
            from_new[sub] = AbHom.identity(old)
            continue
        vectors, labels = (list(part) for part in bases[sub])
        free = AbPresentation.free(len(vectors))
        spanning = AbHom.from_rows(free, old, vectors)
        _, inclusion = kernel(spanning)
        new = AbPresentation.from_relations(len(vectors), inclusion.matrix.data, labels)
        back = AbHom(new, old, spanning.matrix)
        rows = []
        for i in range(old.generator_count):
            pre = back.preimage(unit(i, old.generator_count))
            if pre is None:
                raise ValueError(f"New generators {vectors} do not span level {sub}")
            rows.append(pre)
        to_new[sub] = AbHom.from_rows(old, new, rows)
        from_new[sub] = back
    return transport(t, to_new, from_new, name)


def restrict_green(t: TambaraFunctor, sub: str) -> TambaraFunctor:
    """Restriction of a Tambara functor to a subgroup."""
    emb = t.table.subgroup_table(sub)
    ids = emb.ids
    mackey = change.restrict(sub, t.mackey)
    green = GreenFunctor(
        mackey,
        {s: t.green.units[ids[s]] for s in emb.table.subgroups},
        {s: t.green.products[ids[s]] for s in emb.table.subgroups},
    )
    norms = {
        (a, b): SymbolicNorm(lambda x, a=a, b=b: t.norm(ids[a], ids[b], x))
        for a, b in emb.table.covers()
    }
    return TambaraFunctor(green, norms)


def green_geometric_fixed(t: TambaraFunctor | GreenFunctor, sub: str) -> GreenFunctor:
    """Geometric fixed points: quotient by transfers from subgroups not containing ``sub``."""
    green = t.green if isinstance(t, TambaraFunctor) else t
    quotient = green.table.quotient_table(sub)
    mackey = change.geometric_fixed(green.mackey, sub)
    return GreenFunctor(
        mackey,
        {q: green.units[quotient.ids[q]] for q in quotient.table.subgroups},
        {q: green.products[quotient.ids[q]] for q in quotient.table.subgroups},
    )
