"""The bigraded ring pi_{x + y rho_bar} of H(F2) over K4 in the positive cone.

Seven generators modulo nine quadratic relations, worked out one bidegree at a
time: enumerate the monomials of the bidegree, span the relation multiples by
F2 row reduction, and keep the monomials that are not leading terms as the basis.
"""

from __future__ import annotations

import itertools
from collections.abc import Sequence
from dataclasses import dataclass
from functools import cache

from mackeycalc.common import get_logger

log = get_logger(__name__)

GENERATORS: dict[str, tuple[int, int]] = {
    "a": (0, -1),
    "x_L": (1, -1),
    "y_D": (1, -1),
    "z_R": (1, -1),
    "v_L": (2, -1),
    "w_R": (2, -1),
    "u": (3, -1),
}

# Leading terms are chosen with this precedence: monomials with fewer factors of a
# first, then by exponents read in this order.
_PRECEDENCE = ("u", "w_R", "v_L", "z_R", "y_D", "x_L")

Monomial = tuple[int, ...]  # exponents in GENERATORS order
Polynomial = frozenset[Monomial]  # F2 coefficients: the support

NAMES = tuple(GENERATORS)


def monomial(*factors: str) -> Monomial:
    unknown = [f for f in factors if f not in GENERATORS]
    if unknown:
        raise ValueError(f"Unknown generator: {unknown[0]}. Available: {list(GENERATORS)}")
    return tuple(factors.count(name) for name in NAMES)


def polynomial(*terms: Sequence[str]) -> Polynomial:
    """Sum over F2 of the given monomials (each a sequence of generator names)."""
    support: set[Monomial] = set()
    for term in terms:
        support ^= {monomial(*term)}
    return frozenset(support)


def bidegree(m: Monomial) -> tuple[int, int]:
    return (
        sum(e * GENERATORS[n][0] for e, n in zip(m, NAMES, strict=True)),
        sum(e * GENERATORS[n][1] for e, n in zip(m, NAMES, strict=True)),
    )


def times(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def format_monomial(m: Monomial) -> str:
    if not any(m):
        return "1"
    parts = []
    for e, name in zip(m, NAMES, strict=True):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_polynomial(p: Polynomial) -> str:
    return " + ".join(format_monomial(m) for m in sorted(p, key=_order_key, reverse=True)) or "0"


def _order_key(m: Monomial) -> tuple[int, ...]:
    exponents = dict(zip(NAMES, m, strict=True))
    return (-exponents["a"], *(exponents[n] for n in _PRECEDENCE))


RELATIONS: tuple[Polynomial, ...] = (
    polynomial(("x_L", "y_D"), ("a", "w_R")),
    polynomial(("y_D", "z_R"), ("a", "v_L")),
    polynomial(("x_L", "z_R"), ("a", "v_L"), ("a", "w_R")),
    polynomial(("x_L", "v_L"), ("a", "u")),
    polynomial(("w_R", "z_R"), ("a", "u")),
    polynomial(("v_L", "y_D"), ("y_D", "w_R"), ("a", "u")),
    polynomial(("v_L", "v_L"), ("y_D", "u"), ("z_R", "u")),
    polynomial(("v_L", "w_R"), ("y_D", "u")),
    polynomial(("w_R", "w_R"), ("x_L", "u"), ("y_D", "u")),
)


def relation_bidegrees() -> list[set[tuple[int, int]]]:
    """Bidegrees of the terms of each relation; each set has one element when homogeneous."""
    return [{bidegree(m) for m in rel} for rel in RELATIONS]


@cache
def monomials(x: int, y: int) -> tuple[Monomial, ...]:
    """All monomials of bidegree (x, y), largest leading-term precedence first."""
    if y > 0:
        return ()
    k = -y
    found = set()
    for combo in itertools.combinations_with_replacement(NAMES, k):
        if sum(GENERATORS[n][0] for n in combo) == x:
            found.add(monomial(*combo))
    return tuple(sorted(found, key=_order_key, reverse=True))


@dataclass(frozen=True)
class GradedBasis:
    """Quotient basis of one bidegree with the reduced relation rows.

    Vectors are Python ints over the monomials of the bidegree: bit i stands for
    ``monomials[len - 1 - i]``, so the leading monomial is the highest set bit.
    """

    x: int
    y: int
    monomials: tuple[Monomial, ...]
    pivots: dict[int, int]

    @property
    def basis(self) -> list[Monomial]:
        n = len(self.monomials)
        return [m for i, m in enumerate(self.monomials) if (n - 1 - i) not in self.pivots]

    def bit(self, m: Monomial) -> int:
        return len(self.monomials) - 1 - self.monomials.index(m)

    def vector(self, p: Polynomial) -> int:
        v = 0
        for m in p:
            v ^= 1 << self.bit(m)
        return v

    def reduce(self, v: int) -> int:
        for b in sorted(self.pivots, reverse=True):
            if v >> b & 1:
                v ^= self.pivots[b]
        return v

    def expand(self, v: int) -> Polynomial:
        n = len(self.monomials)
        return frozenset(self.monomials[n - 1 - b] for b in range(n) if v >> b & 1)


@cache
def graded_basis(x: int, y: int) -> GradedBasis:
    mons = monomials(x, y)
    n = len(mons)
    index = {m: n - 1 - i for i, m in enumerate(mons)}
    pivots: dict[int, int] = {}
    for rel in RELATIONS:
        rx, ry = bidegree(next(iter(rel)))
        for cofactor in monomials(x - rx, y - ry):
            row = 0
            for term in rel:
                row ^= 1 << index[times(term, cofactor)]
            while row:
                top = row.bit_length() - 1
                if top in pivots:
                    row ^= pivots[top]
                else:
                    pivots[top] = row
                    break
    # back-substitute so pivot rows are fully reduced
    for b in sorted(pivots):
        row = pivots[b]
        for c in sorted(pivots, reverse=True):
            if c < b and row >> c & 1:
                row ^= pivots[c]
        pivots[b] = row
    return GradedBasis(x, y, mons, pivots)


def hilbert(x: int, y: int) -> int:
    """F2-dimension of the bidegree (x, y) part of the quotient ring."""
    return len(graded_basis(x, y).basis)


def normal_form(p: Polynomial | Sequence[str]) -> Polynomial:
    """Expansion of a homogeneous polynomial (or a single monomial word) in the quotient basis."""
    if not isinstance(p, frozenset):
        p = polynomial(tuple(p))
    if not p:
        return p
    degrees = {bidegree(m) for m in p}
    if len(degrees) != 1:
        raise ValueError(f"Polynomial {format_polynomial(p)} is not homogeneous: {sorted(degrees)}")
    x, y = degrees.pop()
    b = graded_basis(x, y)
    return b.expand(b.reduce(b.vector(p)))


def multiply(p: Polynomial, q: Polynomial) -> Polynomial:
    out: set[Monomial] = set()
    for a in p:
        for b in q:
            out ^= {times(a, b)}
    return normal_form(frozenset(out))


def basis_table(x_range: tuple[int, int], y_range: tuple[int, int]) -> dict[tuple[int, int], list[str]]:
    """Printed basis monomials for every bidegree of a window."""
    table = {}
    for y in range(y_range[0], y_range[1] + 1):
        for x in range(x_range[0], x_range[1] + 1):
            basis = graded_basis(x, y).basis
            if basis:
                table[(x, y)] = [format_monomial(m) for m in basis]
    log.debug("basis_table_built", cells=len(table))
    return table
