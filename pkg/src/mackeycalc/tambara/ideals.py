"""Tambara ideals by fixpoint closure, and quotient Tambara functors."""

from __future__ import annotations

import random
from collections.abc import Iterable
from dataclasses import dataclass

from mackeycalc.algebra.zlattice import AbPresentation, Lattice, Vector, unit, vec_add, vec_scale
from mackeycalc.common import get_logger
from mackeycalc.common.config import get_settings
from mackeycalc.common.errors import InfiniteLevelError, MackeyAxiomError, NotInLevelError
from mackeycalc.mackey.functor import MackeyFunctor
from mackeycalc.tambara.green import GreenFunctor, TabulatedNorm, TambaraFunctor

log = get_logger(__name__)


@dataclass
class TambaraIdeal:
    """Per-level sublattices of the level coordinates, with the generators whose norms were absorbed.

    Each lattice contains the relations of its level, so membership is tested on
    coordinate vectors directly.
    """

    tambara: TambaraFunctor
    lattices: dict[str, Lattice]
    generators: dict[str, list[Vector]]

    def contains(self, sub: str, x: Vector) -> bool:
        return tuple(x) in self.lattices[sub]

    def basis(self, sub: str) -> list[Vector]:
        return self.lattices[sub].basis()

    def is_zero(self) -> bool:
        return all(
            Lattice(self.tambara.level(sub).generator_count, self.tambara.level(sub).relations.data)
            == self.lattices[sub]
            for sub in self.tambara.table.subgroups
        )

    def describe(self) -> dict[str, list[Vector]]:
        return {sub: self.basis(sub) for sub in self.tambara.table.subgroups}

    def violations(self) -> list[str]:
        """Closure failures: one more round of the generating steps would grow some level."""
        t = self.tambara
        trial = {sub: lat.copy() for sub, lat in self.lattices.items()}
        grown = _closure_round(t, trial, {sub: [] for sub in trial})
        return [f"ideal at {sub} is not closed" for sub in grown]


def _closure_round(
    t: TambaraFunctor, lattices: dict[str, Lattice], generators: dict[str, list[Vector]]
) -> list[str]:
    """One pass of ring saturation, transfer, restriction and norm; returns the levels that grew."""
    table = t.table
    g = t.green
    grown: set[str] = set()

    def push(sub: str, vectors: Iterable[Vector]) -> None:
        if lattices[sub].extend(vectors):
            grown.add(sub)

    for sub in table.subgroups:
        n = t.level(sub).generator_count
        ring = [unit(i, n) for i in range(n)]
        push(sub, [g.multiply(sub, v, e) for v in lattices[sub].basis() for e in ring])
    for small, big in table.covers():
        push(big, [g.tr(small, big, v) for v in lattices[small].basis()])
        push(small, [g.res(small, big, v) for v in lattices[big].basis()])
    for small, big in table.covers():
        for v in lattices[small].basis():
            if v not in generators[small]:
                generators[small].append(v)
        push(big, [t.norm(small, big, v) for v in lattices[small].basis()])
    return sorted(grown)


def ideal_generate(t: TambaraFunctor, gens: Iterable[tuple[str, Vector]]) -> TambaraIdeal:
    """Smallest Tambara ideal containing ``gens`` (pairs of level id and coordinate vector).

    Norms are taken of lattice basis vectors only; by reciprocity the norm of a sum
    differs from the sum of norms by transfers already in the ideal, and
    nm(k x) = nm(k) nm(x), so this is the full closure.
    """
    table = t.table
    lattices = {
        sub: Lattice(t.level(sub).generator_count, t.level(sub).relations.data) for sub in table.subgroups
    }
    generators: dict[str, list[Vector]] = {sub: [] for sub in table.subgroups}
    for sub, x in gens:
        level = t.level(sub)
        if len(x) != level.generator_count:
            raise NotInLevelError(f"Generator {x} does not belong to level {sub} ({level.generator_count} coordinates)")
        lattices[sub].add(tuple(x))
        generators[sub].append(tuple(x))
    rounds = 0
    while True:
        rounds += 1
        grown = _closure_round(t, lattices, generators)
        log.debug("ideal_closure_round", round=rounds, grown=grown)
        if not grown:
            break
    log.info("ideal_closure_converged", functor=t.name, rounds=rounds)
    return TambaraIdeal(t, lattices, generators)


def quotient(t: TambaraFunctor, ideal: TambaraIdeal, name: str | None = None) -> TambaraFunctor:
    """T / I with induced structure; norms tabulated and checked on several lifts per class."""
    if ideal.is_zero():
        return t if name is None else t.with_name(name)
    settings = get_settings()
    table = t.table
    levels: dict[str, AbPresentation] = {}
    for sub in table.subgroups:
        old = t.level(sub)
        level = AbPresentation.from_relations(old.generator_count, ideal.basis(sub), old.labels)
        if not level.is_finite():
            raise InfiniteLevelError(sub, level.elementary_divisors())
        levels[sub] = level
    m = t.mackey
    mackey = MackeyFunctor(
        table, levels, dict(m.restrictions), dict(m.transfers), dict(m.weyl), name or f"{m.name}/I"
    ).canonical()
    green = GreenFunctor(mackey, dict(t.green.units), dict(t.green.products))

    rng = random.Random(settings.quotient_seed)
    norms = {}
    for small, big in table.covers():
        source, target = levels[small], levels[big]
        kernel_basis = ideal.basis(small)
        values: dict[Vector, Vector] = {}
        for x in source.elements():
            value = target.reduce(t.norm(small, big, x))
            for _ in range(settings.quotient_norm_samples if kernel_basis else 0):
                lift = x
                for v in kernel_basis:
                    lift = vec_add(lift, vec_scale(rng.randint(-3, 3), v))
                other = target.reduce(t.norm(small, big, lift))
                if other != value:
                    raise MackeyAxiomError(
                        mackey.name, [f"nm^{big}_{small} depends on the lift: {x} vs {lift}"]
                    )
            values[x] = value
        norms[(small, big)] = TabulatedNorm(source, values)
    log.info("quotient_built", functor=mackey.name, levels={s: levels[s].describe() for s in table.subgroups})
    return TambaraFunctor(green, norms)
