"""Subgroup data for the elementary abelian 2-groups e, C2 and K4.

Elements are bit tuples with componentwise addition mod 2: C2 = {(0,), (1,)} and
K4 = (Z/2)^2 with L = C2 x e, R = e x C2 and D the diagonal. Every group here is
abelian, so conjugation is trivial and double cosets are cosets of products.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from functools import cached_property

from mackeycalc.algebra.zlattice import IntMatrix
from mackeycalc.common import get_logger

log = get_logger(__name__)

Element = tuple[int, ...]


@dataclass(frozen=True)
class OrbitMultiset:
    """Disjoint union of orbits G/H, as (subgroup id, multiplicity) pairs."""

    terms: tuple[tuple[str, int], ...]

    def cardinality(self, table: GroupTable) -> int:
        return sum(mult * table.index(sub) for sub, mult in self.terms)


@dataclass(frozen=True)
class GroupTable:
    """Static subgroup lattice of an elementary abelian 2-group.

    ``subgroup_list`` is ordered from the whole group down to the trivial subgroup.
    """

    group_id: str
    rank: int
    subgroup_list: tuple[tuple[str, frozenset[Element]], ...]

    # -- lookup ---------------------------------------------------------------

    @cached_property
    def _by_id(self) -> dict[str, frozenset[Element]]:
        return dict(self.subgroup_list)

    @cached_property
    def _by_set(self) -> dict[frozenset[Element], str]:
        return {members: sub for sub, members in self.subgroup_list}

    @property
    def subgroups(self) -> tuple[str, ...]:
        return tuple(sub for sub, _ in self.subgroup_list)

    @property
    def top(self) -> str:
        return self.subgroup_list[0][0]

    @property
    def bottom(self) -> str:
        return self.subgroup_list[-1][0]

    @cached_property
    def elements(self) -> tuple[Element, ...]:
        return tuple(itertools.product((0, 1), repeat=self.rank))

    @property
    def identity(self) -> Element:
        return (0,) * self.rank

    def subgroup(self, sub: str) -> frozenset[Element]:
        if sub not in self._by_id:
            raise ValueError(f"Unknown subgroup: {sub}. Available: {list(self.subgroups)}")
        return self._by_id[sub]

    def id_of(self, members: Iterable[Element]) -> str:
        key = frozenset(members)
        if key not in self._by_set:
            raise ValueError(f"{sorted(key)} is not a subgroup of {self.group_id}")
        return self._by_set[key]

    def order(self, sub: str | None = None) -> int:
        return len(self.subgroup(sub or self.top))

    # -- lattice --------------------------------------------------------------

    def is_subgroup(self, small: str, big: str) -> bool:
        """small <= big."""
        return self.subgroup(small) <= self.subgroup(big)

    def index(self, small: str, big: str | None = None) -> int:
        big = big or self.top
        if not self.is_subgroup(small, big):
            raise ValueError(f"{small} is not a subgroup of {big}")
        return self.order(big) // self.order(small)

    def proper_subgroups(self, big: str) -> list[str]:
        return [sub for sub in self.subgroups if sub != big and self.is_subgroup(sub, big)]

    def pairs(self) -> list[tuple[str, str]]:
        """All (H, J) with H a proper subgroup of J."""
        return [(small, big) for big in self.subgroups for small in self.proper_subgroups(big)]

    def covers(self) -> list[tuple[str, str]]:
        """Pairs (H, J) with H maximal in J (always index 2 here)."""
        return [(small, big) for small, big in self.pairs() if self.index(small, big) == 2]

    def intersection(self, a: str, b: str) -> str:
        return self.id_of(self.subgroup(a) & self.subgroup(b))

    def join(self, a: str, b: str) -> str:
        return self.id_of(self.add(x, y) for x in self.subgroup(a) for y in self.subgroup(b))

    def element_outside(self, small: str, big: str) -> Element:
        """Some element of ``big`` not in ``small``."""
        for g in sorted(self.subgroup(big)):
            if g not in self.subgroup(small):
                return g
        raise ValueError(f"{small} is not a proper subgroup of {big}")

    # -- elements and cosets --------------------------------------------------

    @staticmethod
    def add(g: Element, h: Element) -> Element:
        return tuple((a + b) % 2 for a, b in zip(g, h, strict=True))

    def coset_rep(self, g: Element, sub: str) -> Element:
        """Canonical (smallest) representative of g + sub."""
        return min(self.add(g, h) for h in self.subgroup(sub))

    def cosets(self, sub: str, within: str | None = None) -> list[Element]:
        """Sorted canonical representatives of within/sub."""
        within = within or self.top
        if not self.is_subgroup(sub, within):
            raise ValueError(f"{sub} is not a subgroup of {within}")
        return sorted({self.coset_rep(g, sub) for g in self.subgroup(within)})

    def double_cosets(self, a: str, b: str, within: str | None = None) -> list[Element]:
        """Representatives of a\\within/b; for abelian groups these are cosets of ab."""
        return self.cosets(self.join(a, b), within)

    def orbit_product(self, a: str, b: str) -> OrbitMultiset:
        """Orbit decomposition of G/a x G/b."""
        count = len(self.double_cosets(a, b))
        return OrbitMultiset(((self.intersection(a, b), count),))

    def table_of_marks(self) -> IntMatrix:
        """Rows are orbits G/H, columns subgroups J; entry |(G/H)^J|."""
        return IntMatrix.of(
            [
                [self.index(orbit) if self.is_subgroup(fixer, orbit) else 0 for fixer in self.subgroups]
                for orbit in self.subgroups
            ],
            cols=len(self.subgroups),
        )

    # -- related tables -------------------------------------------------------

    def subgroup_table(self, sub: str) -> SubgroupEmbedding:
        """The table of ``sub`` itself, embedded back into this group."""
        members = self.subgroup(sub)
        if sub == self.top:
            return SubgroupEmbedding(
                self, {s: s for s in self.subgroups}, {g: g for g in self.elements}
            )
        if len(members) == 1:
            return SubgroupEmbedding(TRIVIAL, {"e": sub}, {(): self.identity})
        if len(members) == 2:
            (generator,) = [g for g in members if any(g)]
            return SubgroupEmbedding(
                C2, {"C2": sub, "e": self.bottom}, {(0,): self.identity, (1,): generator}
            )
        raise ValueError(f"No table for subgroup {sub} of {self.group_id}")

    def quotient_table(self, sub: str) -> QuotientMap:
        """The table of G/sub, with subgroups identified with those containing ``sub``."""
        if sub == self.bottom:
            return QuotientMap(self, {s: s for s in self.subgroups}, {g: g for g in self.elements})
        if sub == self.top:
            return QuotientMap(TRIVIAL, {"e": sub}, {g: () for g in self.elements})
        if self.index(sub) == 2:
            members = self.subgroup(sub)
            return QuotientMap(
                C2,
                {"C2": self.top, "e": sub},
                {g: ((0,) if g in members else (1,)) for g in self.elements},
            )
        raise ValueError(f"No quotient table for {self.group_id}/{sub}")


@dataclass(frozen=True)
class SubgroupEmbedding:
    """A subgroup's own table with its subgroup ids and elements mapped into the ambient group."""

    table: GroupTable
    ids: Mapping[str, str]
    elements: Mapping[Element, Element]


@dataclass(frozen=True)
class QuotientMap:
    """Table of a quotient G/H; ``ids`` sends quotient subgroups to subgroups containing H."""

    table: GroupTable
    ids: Mapping[str, str]
    project: Mapping[Element, Element]

    def ambient(self, sub: str) -> str:
        return self.ids[sub]


TRIVIAL = GroupTable("e", 0, (("e", frozenset({()})),))

C2 = GroupTable(
    "C2",
    1,
    (
        ("C2", frozenset({(0,), (1,)})),
        ("e", frozenset({(0,)})),
    ),
)

K4 = GroupTable(
    "K4",
    2,
    (
        ("K", frozenset({(0, 0), (1, 0), (0, 1), (1, 1)})),
        ("L", frozenset({(0, 0), (1, 0)})),
        ("D", frozenset({(0, 0), (1, 1)})),
        ("R", frozenset({(0, 0), (0, 1)})),
        ("e", frozenset({(0, 0)})),
    ),
)

_TABLES = {"e": TRIVIAL, "C2": C2, "K4": K4}


def get_table(group_id: str) -> GroupTable:
    """Look up a group table by id."""
    if group_id not in _TABLES:
        raise ValueError(f"Unknown group: {group_id}. Available: {list(_TABLES)}")
    return _TABLES[group_id]


def element_label(g: Element) -> str:
    """Bit-string label used in documents ("" for the trivial group)."""
    return "".join(str(bit) for bit in g)


def parse_element(label: str) -> Element:
    return tuple(int(ch) for ch in label)
