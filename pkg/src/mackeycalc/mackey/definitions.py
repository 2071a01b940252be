"""Catalog definitions.

This module defines all named Mackey functors. Import it to register them.
Matrices use the row convention: res^J_H has one row per generator of M(J).
"""

from mackeycalc.algebra.grouptab import C2, K4, TRIVIAL
from mackeycalc.mackey.catalog import get_functor, mackey_entry
from mackeycalc.mackey.change import induce, inflate
from mackeycalc.mackey.functor import MackeyFunctor, direct_sum

_ONE = [[1]]
_TWO = [[2]]
_INDEX_TWO = [("L", "K"), ("D", "K"), ("R", "K"), ("e", "L"), ("e", "D"), ("e", "R")]


# =============================================================================
# Trivial group
# =============================================================================


@mackey_entry("F2", "e", "The field with two elements")
def trivial_f2() -> MackeyFunctor:
    return MackeyFunctor.build(TRIVIAL, {"e": [2]})


@mackey_entry("Z", "e", "The integers")
def trivial_z() -> MackeyFunctor:
    return MackeyFunctor.build(TRIVIAL, {"e": [0]})


# =============================================================================
# C2
# =============================================================================


@mackey_entry("g", "C2", "F2 at the fixed level, zero underlying")
def c2_g() -> MackeyFunctor:
    return MackeyFunctor.build(C2, {"C2": [2]})


@mackey_entry("f", "C2", "F2 at the underlying level only")
def c2_f() -> MackeyFunctor:
    return MackeyFunctor.build(C2, {"e": [2]})


@mackey_entry("F2", "C2", "Constant F2: res = 1, tr = 0")
def c2_f2() -> MackeyFunctor:
    return MackeyFunctor.build(C2, {"C2": [2], "e": [2]}, res={("e", "C2"): _ONE})


@mackey_entry("F2*", "C2", "Dual constant F2: res = 0, tr = 1")
def c2_f2_dual() -> MackeyFunctor:
    return MackeyFunctor.build(C2, {"C2": [2], "e": [2]}, tr={("e", "C2"): _ONE})


@mackey_entry("NeC2_F2", "C2", "Norm of F2: Z/4 over Z/2, res = 1, tr = 2")
def c2_norm() -> MackeyFunctor:
    return MackeyFunctor.build(C2, {"C2": [4], "e": [2]}, res={("e", "C2"): _ONE}, tr={("e", "C2"): _TWO})


@mackey_entry("up(F2)", "C2", "Induced F2: F2 over F2^2 with the swap action")
def c2_induced() -> MackeyFunctor:
    return induce(C2, "e", get_functor("e", "F2"))


@mackey_entry("Z", "C2", "Constant Z: res = 1, tr = 2")
def c2_z() -> MackeyFunctor:
    return MackeyFunctor.build(C2, {"C2": [0], "e": [0]}, res={("e", "C2"): _ONE}, tr={("e", "C2"): _TWO})


@mackey_entry("Z*", "C2", "Dual constant Z: res = 2, tr = 1")
def c2_z_dual() -> MackeyFunctor:
    return MackeyFunctor.build(C2, {"C2": [0], "e": [0]}, res={("e", "C2"): _TWO}, tr={("e", "C2"): _ONE})


# =============================================================================
# K4
# =============================================================================


def _constant(divisor: int, res: int, tr: int) -> MackeyFunctor:
    return MackeyFunctor.build(
        K4,
        {sub: [divisor] for sub in K4.subgroups},
        res={pair: [[res]] for pair in _INDEX_TWO},
        tr={pair: [[tr]] for pair in _INDEX_TWO},
    )


@mackey_entry("F2", "K4", "Constant F2: res = 1, tr = 0")
def k4_f2() -> MackeyFunctor:
    return _constant(2, 1, 0)


@mackey_entry("F2*", "K4", "Dual constant F2: res = 0, tr = 1")
def k4_f2_dual() -> MackeyFunctor:
    return _constant(2, 0, 1)


@mackey_entry("Z", "K4", "Constant Z: res = 1, tr = 2")
def k4_z() -> MackeyFunctor:
    return _constant(0, 1, 2)


@mackey_entry("Z*", "K4", "Dual constant Z: res = 2, tr = 1")
def k4_z_dual() -> MackeyFunctor:
    return _constant(0, 2, 1)


@mackey_entry("B(2,0)", "K4", "Z/4 on top, F2 at L, D, R, zero underlying; res = 1, tr = 2")
def k4_b20() -> MackeyFunctor:
    return MackeyFunctor.build(
        K4,
        {"K": [4], "L": [2], "D": [2], "R": [2]},
        res={(h, "K"): _ONE for h in "LDR"},
        tr={(h, "K"): _TWO for h in "LDR"},
    )


@mackey_entry("E", "K4", "Cokernel of F2* -> NeK_F2")
def k4_e() -> MackeyFunctor:
    return MackeyFunctor.build(
        K4,
        {"K": [4, 2, 2], "L": [2], "D": [2], "R": [2]},
        res={(h, "K"): [[1], [0], [0]] for h in "LDR"},
        tr={
            ("L", "K"): [[2, 1, 0]],
            ("D", "K"): [[2, 1, 1]],
            ("R", "K"): [[2, 0, 1]],
        },
    )


@mackey_entry("NeK_F2", "K4", "Norm from e to K4 of F2", atom=False)
def k4_norm_e() -> MackeyFunctor:
    from mackeycalc.tambara.norms import norm_constant_f2

    return norm_constant_f2(K4, "e").mackey


@mackey_entry("NDK_F2", "K4", "Norm from D to K4 of constant F2", atom=False)
def k4_norm_d() -> MackeyFunctor:
    from mackeycalc.tambara.norms import norm_constant_f2

    return norm_constant_f2(K4, "D").mackey


def _register_inflations(c2_name: str, description: str) -> None:
    for h in "LDR":
        mackey_entry(f"phi*_{h}({c2_name})", "K4", f"{description} inflated along K4 -> K4/{h}")(
            lambda h=h: inflate(K4, h, get_functor("C2", c2_name))
        )


_register_inflations("F2", "Constant F2")
_register_inflations("F2*", "Dual constant F2")
_register_inflations("f", "Underlying F2")


@mackey_entry("mg", "K4", "F2^2 on top restricting by p1, sum, p2 to F2 at L, D, R")
def k4_mg() -> MackeyFunctor:
    return MackeyFunctor.build(
        K4,
        {"K": [2, 2], "L": [2], "D": [2], "R": [2]},
        res={("L", "K"): [[1], [0]], ("D", "K"): [[1], [1]], ("R", "K"): [[0], [1]]},
    )


@mackey_entry("mg*", "K4", "Dual of mg: transfers i1, diagonal, i2")
def k4_mg_dual() -> MackeyFunctor:
    return MackeyFunctor.build(
        K4,
        {"K": [2, 2], "L": [2], "D": [2], "R": [2]},
        tr={("L", "K"): [[1, 0]], ("D", "K"): [[1, 1]], ("R", "K"): [[0, 1]]},
    )


@mackey_entry("n_D", "K4", "F2 at K, L and R; res = 1 from K")
def k4_n_d() -> MackeyFunctor:
    return MackeyFunctor.build(
        K4, {"K": [2], "L": [2], "R": [2]}, res={("L", "K"): _ONE, ("R", "K"): _ONE}
    )


@mackey_entry("n_D*", "K4", "F2 at K, L and R; tr = 1 into K")
def k4_n_d_dual() -> MackeyFunctor:
    return MackeyFunctor.build(
        K4, {"K": [2], "L": [2], "R": [2]}, tr={("L", "K"): _ONE, ("R", "K"): _ONE}
    )


@mackey_entry("v_D*", "K4", "F2 at L, R and e; tr = 1 from e")
def k4_v_d_dual() -> MackeyFunctor:
    return MackeyFunctor.build(
        K4, {"L": [2], "R": [2], "e": [2]}, tr={("e", "L"): _ONE, ("e", "R"): _ONE}
    )


@mackey_entry("g", "K4", "F2 at the top level only")
def k4_g() -> MackeyFunctor:
    return MackeyFunctor.build(K4, {"K": [2]})


def _register_sums(c2_name: str) -> None:
    mackey_entry(
        f"phi*_LDR({c2_name})", "K4", f"Sum of the three inflations of {c2_name}", atom=False
    )(lambda: direct_sum(*(get_functor("K4", f"phi*_{h}({c2_name})") for h in "LDR")))


_register_sums("F2")
_register_sums("F2*")
_register_sums("f")
