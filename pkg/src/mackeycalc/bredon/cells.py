"""Equivariant cell structures on representation spheres.

S^{m sigma_H} has one fixed 0-cell and, in each degree 1..m, one orbit G/H of two
cells swapped by the generator outside H. Reduced cellular boundaries:

    d(1, c) = pt
    d(i, c) = (i-1, c) + (-1)^(i+1) (i-1, gamma c)     (i >= 2)

Smash products take products of cells with Koszul signs; negative multiplicities
use dual cells, placing X_n in degree -n with the transposed boundary.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field

from mackeycalc.algebra.grouptab import GroupTable
from mackeycalc.common import get_logger
from mackeycalc.mackey.gsets import GSet, Point

log = get_logger(__name__)

Boundary = dict[Point, tuple[tuple[Point, int], ...]]


@dataclass(frozen=True)
class RepDegree:
    """trivial * 1 + sum of sign multiplicities; signs are keyed by the kernel of the character."""

    trivial: int = 0
    signs: Mapping[str, int] = field(default_factory=dict)

    @classmethod
    def rho_bar(cls, table: GroupTable, k: int = 1, trivial: int = 0) -> RepDegree:
        """k copies of the reduced regular representation (sigma for C2, sigma_L + sigma_D + sigma_R for K4)."""
        return cls(trivial, {h: k for h in sign_kernels(table)})

    def is_actual(self) -> bool:
        return all(m >= 0 for m in self.signs.values())

    def fixed(self, table: GroupTable, sub: str) -> RepDegree:
        """V^sub as a representation of G/sub: signs whose kernel contains ``sub``."""
        quotient = table.quotient_table(sub)
        back = {ambient: q for q, ambient in quotient.ids.items()}
        signs = {back[h]: m for h, m in self.signs.items() if table.is_subgroup(sub, h)}
        return RepDegree(self.trivial, {h: m for h, m in signs.items() if h != quotient.table.top})

    def dimension(self) -> int:
        return self.trivial + sum(self.signs.values())

    def label(self) -> str:
        parts = [str(self.trivial)] if self.trivial else []
        parts += [f"{m}s_{h}" for h, m in sorted(self.signs.items()) if m]
        return " + ".join(parts) or "0"


def sign_kernels(table: GroupTable) -> list[str]:
    """Index-2 subgroups, one per nontrivial sign character."""
    return [sub for sub in table.subgroups if sub != table.top and table.index(sub) == 2]


@dataclass
class CellComplex:
    """Cells per degree as G-sets, with boundaries as integer combinations of cells one degree down."""

    table: GroupTable
    cells: dict[int, GSet]
    boundary: dict[int, Boundary]

    def degrees(self) -> list[int]:
        return sorted(self.cells)

    def cell_set(self, n: int) -> GSet:
        return self.cells.get(n) or GSet.empty(self.table)

    def d(self, n: int, p: Point) -> tuple[tuple[Point, int], ...]:
        return self.boundary.get(n, {}).get(p, ())

    def orbit_counts(self) -> dict[int, list[str]]:
        """Stabilizers of the cell orbits in each degree."""
        return {n: list(self.cells[n].stabilizers) for n in self.degrees()}

    def violations(self) -> list[str]:
        """Cells whose boundary of boundary is nonzero, or with non-equivariant boundaries."""
        problems = []
        for n in self.degrees():
            for p in self.cells[n].points:
                total: dict[Point, int] = {}
                for q, c in self.d(n, p):
                    for r, e in self.d(n - 1, q):
                        total[r] = total.get(r, 0) + c * e
                if any(total.values()):
                    problems.append(f"d(d({p!r})) != 0 in degree {n}")
                for g in self.table.elements:
                    moved = sorted((self.cells[n - 1].act(g, q), c) for q, c in self.d(n, p))
                    direct = sorted(self.d(n, self.cells[n].act(g, p)))
                    if moved != direct:
                        problems.append(f"boundary of {p!r} is not equivariant under {g}")
                        break
        return problems


def point_complex(table: GroupTable) -> CellComplex:
    """S^0: a single fixed cell in degree 0."""
    return CellComplex(table, {0: GSet(table, ["pt"], lambda g, p: p)}, {0: {"pt": ()}})


def sign_sphere(table: GroupTable, sub: str, m: int) -> CellComplex:
    """Reduced cells of S^{m sigma_sub}."""
    if m < 0:
        raise ValueError(f"Sphere multiplicity must be nonnegative, got {m}")
    gamma = table.element_outside(sub, table.top)
    cosets = table.cosets(sub)

    def act(g, p):
        if p == "pt":
            return p
        i, c = p
        return (i, table.coset_rep(table.add(g, c), sub))

    cells = {0: GSet(table, ["pt"], act)}
    boundary: dict[int, Boundary] = {0: {"pt": ()}}
    for i in range(1, m + 1):
        cells[i] = GSet(table, [(i, c) for c in cosets], act)
        boundary[i] = {}
        for c in cosets:
            if i == 1:
                boundary[i][(i, c)] = (("pt", 1),)
            else:
                other = table.coset_rep(table.add(gamma, c), sub)
                boundary[i][(i, c)] = (((i - 1, c), 1), ((i - 1, other), -1 if i % 2 == 0 else 1))
    return CellComplex(table, cells, boundary)


def dual_complex(c: CellComplex) -> CellComplex:
    """Dual cells: X_n in degree -n, boundary transposed."""
    cells = {-n: gset for n, gset in c.cells.items()}
    boundary: dict[int, Boundary] = {}
    for n, gset in c.cells.items():
        incoming: dict[Point, list[tuple[Point, int]]] = {p: [] for p in gset.points}
        for p in c.cell_set(n + 1).points:
            for q, coeff in c.d(n + 1, p):
                incoming[q].append((p, coeff))
        boundary[-n] = {p: tuple(terms) for p, terms in incoming.items()}
    return CellComplex(c.table, cells, boundary)


def smash(a: CellComplex, b: CellComplex) -> CellComplex:
    """Product cells (i, p, j, q) in degree i + j with d(p x q) = dp x q + (-1)^i p x dq."""
    table = a.table
    parts: dict[int, list[tuple[int, int]]] = {}
    for i in a.degrees():
        for j in b.degrees():
            parts.setdefault(i + j, []).append((i, j))
    cells: dict[int, GSet] = {}
    boundary: dict[int, Boundary] = {}
    for n, splits in sorted(parts.items()):
        points = [(i, p, j, q) for i, j in splits for p in a.cells[i].points for q in b.cells[j].points]

        def act(g, cell):
            i, p, j, q = cell
            return (i, a.cells[i].act(g, p), j, b.cells[j].act(g, q))

        cells[n] = GSet(table, points, act)
        boundary[n] = {}
        for i, p, j, q in points:
            terms = [((i - 1, p2, j, q), c) for p2, c in a.d(i, p)]
            terms += [((i, p, j - 1, q2), (-1 if i % 2 else 1) * c) for q2, c in b.d(j, q)]
            boundary[n][(i, p, j, q)] = tuple(terms)
    return CellComplex(table, cells, boundary)


def shift(c: CellComplex, k: int) -> CellComplex:
    """Suspension by k trivial coordinates."""
    sign = -1 if k % 2 else 1
    return CellComplex(
        c.table,
        {n + k: gset for n, gset in c.cells.items()},
        {n + k: {p: tuple((q, sign * e) for q, e in terms) for p, terms in bd.items()} for n, bd in c.boundary.items()},
    )


def sphere_complex(table: GroupTable, v: RepDegree) -> CellComplex:
    """Reduced cellular chains of S^V for an actual representation V."""
    if not v.is_actual():
        raise ValueError(f"Negative sign multiplicity in {v.label()}; use virtual_sphere_complex")
    return virtual_sphere_complex(table, v)


def virtual_sphere_complex(table: GroupTable, v: RepDegree) -> CellComplex:
    """Cells of S^V for a virtual V, with dual cells for the negative part."""
    kernels = sign_kernels(table)
    unknown = [h for h in v.signs if h not in kernels]
    if unknown:
        raise ValueError(f"Unknown sign character: {unknown[0]}. Available: {kernels}")
    result = point_complex(table)
    for h in kernels:
        m = v.signs.get(h, 0)
        if m > 0:
            result = smash(result, sign_sphere(table, h, m))
        elif m < 0:
            result = smash(result, dual_complex(sign_sphere(table, h, -m)))
    if v.trivial:
        result = shift(result, v.trivial)
    log.debug("sphere_cells", group=table.group_id, degree=v.label(), cells={n: len(x) for n, x in result.cells.items()})
    return result
