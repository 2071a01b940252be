"""The six-variable ring F2[a_L, a_D, a_R, t_L, t_D, t_R] / (a_L t_D t_R + t_L a_D t_R + t_L t_D a_R).

a_H sits in degree -sigma_H and t_H in 1 - sigma_H. The seven-generator ring is
the part graded on Z{1, rho_bar}; ``subring_violations`` checks that its relations
hold here, and ``reference_hilbert`` counts standard monomials per bidegree.
"""

from __future__ import annotations

import itertools
from functools import cache, reduce
from operator import mul

from sympy import Expr, GroebnerBasis, LM, Poly, expand, groebner, symbols

from mackeycalc.common import get_logger
from mackeycalc.gradedring.presentation import NAMES, RELATIONS, Polynomial, format_polynomial

log = get_logger(__name__)

a_L, a_D, a_R, t_L, t_D, t_R = symbols("a_L a_D a_R t_L t_D t_R")
VARIABLES = (a_L, a_D, a_R, t_L, t_D, t_R)
RELATION = a_L * t_D * t_R + t_L * a_D * t_R + t_L * t_D * a_R
ORDER = "grevlex"

SUBRING_MAP: dict[str, Expr] = {
    "a": a_L * a_D * a_R,
    "x_L": t_L * a_D * a_R,
    "y_D": a_L * t_D * a_R,
    "z_R": a_L * a_D * t_R,
    "v_L": a_L * t_D * t_R,
    "w_R": t_L * t_D * a_R,
    "u": t_L * t_D * t_R,
}


@cache
def reference_basis() -> GroebnerBasis:
    return groebner([RELATION], *VARIABLES, modulus=2, order=ORDER)


def image(p: Polynomial) -> Expr:
    """Image of a seven-generator polynomial in the six-variable ring."""
    terms = [
        reduce(mul, (SUBRING_MAP[name] ** e for name, e in zip(NAMES, m, strict=True)), 1)
        for m in p
    ]
    return expand(sum(terms))


def subring_violations() -> list[str]:
    """Relations of the seven-generator presentation that fail in the reference ring."""
    g = reference_basis()
    bad = []
    for rel in RELATIONS:
        _, remainder = g.reduce(image(rel))
        if not Poly(remainder, *VARIABLES, modulus=2).is_zero:
            bad.append(format_polynomial(rel))
    log.debug("subring_checked", relations=len(RELATIONS), failures=len(bad))
    return bad


@cache
def _leading_exponents() -> tuple[int, ...]:
    lead = LM(RELATION, *VARIABLES, order=ORDER)
    return Poly(lead, *VARIABLES).monoms()[0]


def reference_hilbert(x: int, y: int) -> int:
    """Standard monomials of degree x + y rho_bar: exponents a_H = -y - j_H, t_H = j_H, sum j_H = x."""
    k = -y
    if k < 0:
        return 0
    lead = _leading_exponents()
    count = 0
    for j in itertools.product(range(k + 1), repeat=3):
        if sum(j) != x:
            continue
        exponents = (k - j[0], k - j[1], k - j[2], *j)
        if not all(e >= f for e, f in zip(exponents, lead, strict=True)):
            count += 1
    return count
