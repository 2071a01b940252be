"""Multiplicative annotations attached to chart manifests."""

from __future__ import annotations

from typing import Any

from mackeycalc.gradedring.presentation import format_monomial, graded_basis, monomial, normal_form, times

RAINBOW_GENERATORS = ("x_L", "y_D", "z_R")

THETA_CELL = (-3, 1)

NORM_NOTES = {
    "NeK_F2": [
        "v_L and w_R are absent, together with their rainbow",
        "x_L, y_D and z_R are absent, though their restrictions appear",
        "4, b_L and b_R in pi_0 of the top level are infinitely a-divisible",
        "rainbows are multiplication by the generators of pi_{2-2rho_bar}, matching x_L^2, y_D^2, z_R^2 up to a-multiples",
    ],
    "NDK_F2": [
        "x_L + z_R is present in pi_{1-rho_bar}",
        "arcs on the diagonal x + y = 1 are multiplication by the generator of pi_{2-2rho_bar}, y_D^2 modulo a",
    ],
}


def _inside(cell: tuple[int, int], xs: range, ys: range) -> bool:
    return cell[0] in xs and cell[1] in ys


def ring_annotations(x_range: tuple[int, int], y_range: tuple[int, int]) -> list[dict[str, Any]]:
    """Basis choices, a-lines and rainbows for constant F2, plus the class Theta."""
    xs = range(x_range[0], x_range[1] + 1)
    ys = range(y_range[0], y_range[1] + 1)
    a = monomial("a")
    out: list[dict[str, Any]] = []
    for y in ys:
        if y > 0:
            continue
        for x in xs:
            basis = graded_basis(x, y).basis
            if not basis:
                continue
            out.append({"kind": "basis", "cell": [x, y], "monomials": [format_monomial(m) for m in basis]})
            for m in basis:
                product = normal_form(frozenset({times(a, m)}))
                if product and _inside((x, y - 1), xs, ys):
                    out.append({"kind": "a_line", "from": [x, y], "to": [x, y - 1], "source": format_monomial(m)})
                for g in RAINBOW_GENERATORS:
                    target = (x + 1, y - 1)
                    product = normal_form(frozenset({times(monomial(g), m)}))
                    if len(product) == 1 and _inside(target, xs, ys):
                        out.append(
                            {
                                "kind": "rainbow",
                                "generator": g,
                                "from": [x, y],
                                "to": list(target),
                                "source": format_monomial(m),
                                "product": format_monomial(next(iter(product))),
                            }
                        )
    if _inside(THETA_CELL, xs, ys):
        out.append(
            {
                "kind": "class",
                "name": "Theta",
                "cell": list(THETA_CELL),
                "note": "infinitely divisible by every multiplicative generator of the positive cone",
            }
        )
    return out


def chart_annotations(coefficient: str, x_range: tuple[int, int], y_range: tuple[int, int]) -> list[dict[str, Any]]:
    """Annotations for a K4 chart of the named coefficient functor."""
    if coefficient == "F2":
        return ring_annotations(x_range, y_range)
    return [{"kind": "note", "text": text} for text in NORM_NOTES.get(coefficient, [])]
