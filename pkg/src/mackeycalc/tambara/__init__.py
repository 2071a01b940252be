"""Green and Tambara functors, Tambara ideals and norms of the constant F2."""

from mackeycalc.tambara.burnside import burnside
from mackeycalc.tambara.green import (
    GreenFunctor,
    TambaraFunctor,
    green_geometric_fixed,
    rebase,
    restrict_green,
)
from mackeycalc.tambara.ideals import TambaraIdeal, ideal_generate, quotient
from mackeycalc.tambara.norms import norm_constant_f2, norm_value

__all__ = [
    "GreenFunctor",
    "TambaraFunctor",
    "TambaraIdeal",
    "burnside",
    "green_geometric_fixed",
    "ideal_generate",
    "norm_constant_f2",
    "norm_value",
    "quotient",
    "rebase",
    "restrict_green",
]
