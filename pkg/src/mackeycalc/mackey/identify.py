"""Name a Mackey functor as a direct sum of catalog entries.

Identification runs in two stages. An additive fingerprint (primary decompositions
of levels and of images and kernels of the structure maps) narrows the candidate
multiplicities; each candidate is then confirmed by finding an explicit
isomorphism from the sum of catalog summands, searching random elements of the
morphism group.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache, reduce
from typing import Any

from mackeycalc.algebra import zlattice
from mackeycalc.algebra.zlattice import AbHom, AbPresentation, IntMatrix
from mackeycalc.common import get_logger
from mackeycalc.common.config import get_settings
from mackeycalc.mackey import catalog
from mackeycalc.mackey.functor import MackeyFunctor, MackeyMorphism, direct_sum, hom_space
from mackeycalc.mackey.serialize import dumps, loads, to_document

log = get_logger(__name__)

Fingerprint = Counter

UNIDENTIFIED = "unidentified"
IDENTIFY_CACHE_SIZE = 1024


@dataclass
class Identification:
    """Result of ``identify``; ``isomorphism`` runs from the sum of ``summands`` to the functor."""

    name: str
    summands: list[str]
    isomorphism: MackeyMorphism | None = None
    document: dict[str, Any] | None = field(default=None, repr=False)

    @property
    def identified(self) -> bool:
        return self.name != UNIDENTIFIED


# =============================================================================
# Fingerprints
# =============================================================================


def _stack(matrices: list[IntMatrix], horizontal: bool) -> IntMatrix:
    return reduce(lambda a, b: a.hstack(b) if horizontal else a.vstack(b), matrices)


def fingerprint(m: MackeyFunctor) -> Fingerprint:
    """Counter of (feature, prime power) pairs; additive under direct sums."""
    t = m.table
    counts: Fingerprint = Counter()

    def record(feature: tuple, group: AbPresentation) -> None:
        for power in group.primary_decomposition():
            counts[(feature, power)] += 1

    for sub in t.subgroups:
        record(("level", sub), m.levels[sub])
    for small, big in t.pairs():
        for kind, hom in (("res", m.res(small, big)), ("tr", m.tr(small, big))):
            record((kind, "image", small, big), zlattice.image(hom))
            record((kind, "kernel", small, big), zlattice.kernel(hom)[0])
    for sub in t.subgroups:
        below = t.proper_subgroups(sub)
        if not below:
            continue
        incoming = AbHom(
            reduce(AbPresentation.direct_sum, [m.levels[s] for s in below]),
            m.levels[sub],
            _stack([m.tr_matrix(s, sub) for s in below], horizontal=False),
        )
        record(("transfer_quotient", sub), zlattice.cokernel(incoming)[0])
        outgoing = AbHom(
            m.levels[sub],
            reduce(AbPresentation.direct_sum, [m.levels[s] for s in below]),
            _stack([m.res_matrix(s, sub) for s in below], horizontal=True),
        )
        record(("restriction_kernel", sub), zlattice.kernel(outgoing)[0])
        for g in t.cosets(sub)[1:]:
            moved = m.conj(sub, g) - AbHom.identity(m.levels[sub])
            record(("weyl", sub, g), zlattice.image(moved))
    return counts


# =============================================================================
# Search
# =============================================================================


def _decompositions(
    target: Fingerprint, atoms: list[tuple[str, Fingerprint]]
) -> list[list[tuple[str, int]]]:
    """All nonnegative multiplicity vectors whose fingerprints add up to ``target``."""
    suffix_keys: list[set] = [set() for _ in range(len(atoms) + 1)]
    for i in range(len(atoms) - 1, -1, -1):
        suffix_keys[i] = suffix_keys[i + 1] | set(atoms[i][1])
    found: list[list[tuple[str, int]]] = []

    def search(i: int, remaining: Fingerprint, chosen: list[tuple[str, int]]) -> None:
        live = {k for k, v in remaining.items() if v}
        if not live:
            found.append(list(chosen))
            return
        if i == len(atoms) or not live <= suffix_keys[i]:
            return
        name, fp = atoms[i]
        most = min(remaining.get(k, 0) // v for k, v in fp.items()) if fp else 0
        for mult in range(most, -1, -1):
            rest = Counter(remaining)
            for k, v in fp.items():
                rest[k] -= mult * v
            search(i + 1, rest, [*chosen, (name, mult)] if mult else chosen)

    search(0, target, [])
    return found


def _coefficient_bound(m: MackeyFunctor) -> int:
    exponents = [m.levels[sub].exponent() for sub in m.table.subgroups]
    if any(e == 0 for e in exponents):
        return 3
    return max(exponents + [2])


def find_isomorphism(
    source: MackeyFunctor, target: MackeyFunctor, rng: random.Random, trials: int
) -> MackeyMorphism | None:
    """Some isomorphism source -> target among random elements of the morphism group."""
    for sub in source.table.subgroups:
        if not zlattice.iso_test(source.levels[sub], target.levels[sub]):
            return None
    basis = hom_space(source, target)
    if not basis:
        return MackeyMorphism.zero(source, target) if source.is_zero() and target.is_zero() else None
    bound = _coefficient_bound(target)
    subs = source.table.subgroups

    def combine(coeffs: list[int]) -> MackeyMorphism:
        components = {}
        for sub in subs:
            total = basis[0].components[sub].scale(coeffs[0])
            for k, f in zip(coeffs[1:], basis[1:], strict=True):
                if k:
                    total = total + f.components[sub].scale(k)
            components[sub] = total
        return MackeyMorphism(source, target, components)

    candidates = [[1 if i == j else 0 for i in range(len(basis))] for j in range(len(basis))]
    for attempt in range(trials):
        coeffs = candidates[attempt] if attempt < len(candidates) else [rng.randrange(bound) for _ in basis]
        f = combine(coeffs)
        if f.is_isomorphism():
            return f
    return None


def display_name(summands: list[tuple[str, int]]) -> str:
    """Join summands with " + ", folding inflations along several of L, D, R (phi*_LDR, phi*_LR)."""
    if not summands:
        return "0"
    counts = dict(summands)
    parts: list[str] = []
    for name, _ in summands:
        while counts.get(name, 0):
            group = _inflation_group(name, counts)
            mult = min(counts[n] for n in group)
            label = name if len(group) == 1 else f"phi*_{''.join(n[5] for n in group)}{name[6:]}"
            parts.append(label if mult == 1 else f"{label}^{mult}")
            for n in group:
                counts[n] -= mult
    return " + ".join(parts)


def _inflation_group(name: str, counts: dict[str, int]) -> list[str]:
    if not (name.startswith("phi*_") and name[5] in "LDR" and name[6:7] == "("):
        return [name]
    group = [f"phi*_{h}{name[6:]}" for h in "LDR" if counts.get(f"phi*_{h}{name[6:]}", 0)]
    return group if len(group) > 1 else [name]


@lru_cache(maxsize=None)
def _atoms(group: str) -> tuple[tuple[str, Fingerprint], ...]:
    """Atom fingerprints, largest first."""
    fingerprints = ((e.name, fingerprint(e.value.normalized()[0])) for e in catalog.entries(group, atoms_only=True))
    return tuple(sorted(fingerprints, key=lambda item: -sum(item[1].values())))


def identify(m: MackeyFunctor) -> Identification:
    """Decompose ``m`` into catalog atoms, with a verified isomorphism."""
    import mackeycalc.mackey.definitions  # noqa: F401

    found = _identify_document(dumps(m.with_name("")))
    if found.isomorphism is None:
        log.info("identify_failed", functor=m.name)
        return Identification(UNIDENTIFIED, [], None, to_document(m))
    iso = MackeyMorphism(found.isomorphism.source, m, found.isomorphism.components)
    return Identification(found.name, found.summands, iso)


@lru_cache(maxsize=IDENTIFY_CACHE_SIZE)
def _identify_document(text: str) -> Identification:
    m = loads(text)
    settings = get_settings()
    if m.is_zero():
        return Identification("0", [], MackeyMorphism.zero(MackeyFunctor.zero(m.table), m))

    normal, _, from_normal = m.normalized()
    atoms = list(_atoms(m.table.group_id))
    order = {e.name: i for i, e in enumerate(catalog.entries(m.table.group_id))}
    candidates = _decompositions(fingerprint(normal), atoms)
    log.debug("identify_candidates", group=m.table.group_id, candidates=len(candidates))

    rng = random.Random(settings.identify_seed)
    result = Identification(UNIDENTIFIED, [], None, to_document(m))
    for candidate in candidates:
        summands = sorted(candidate, key=lambda item: order[item[0]])
        names = [name for name, mult in summands for _ in range(mult)]
        total = direct_sum(*(catalog.get_functor(m.table.group_id, n) for n in names))
        total_normal, to_total_normal, _ = total.normalized()
        iso = find_isomorphism(total_normal, normal, rng, settings.identify_max_trials)
        if iso is None:
            continue
        isomorphism = to_total_normal.then(iso).then(from_normal).validate()
        result = Identification(display_name(summands), names, isomorphism)
        break
    return result
