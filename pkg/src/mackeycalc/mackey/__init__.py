"""Mackey functors over e, C2 and K4.

Provides Lewis diagrams, their morphisms, change-of-group functors, the catalog
of named functors and identification against it.
"""

# Import definitions to register catalog entries
from mackeycalc.mackey import definitions as _definitions  # noqa: F401
from mackeycalc.mackey.catalog import CatalogEntry, get_entry, get_functor, list_entries, register_entry
from mackeycalc.mackey.change import geometric_fixed, induce, inflate, restrict
from mackeycalc.mackey.functor import (
    MackeyFunctor,
    MackeyMorphism,
    cokernel,
    direct_sum,
    dual,
    hom_space,
    kernel,
    require_valid,
    validate,
)
from mackeycalc.mackey.identify import Identification, identify

__all__ = [
    "CatalogEntry",
    "Identification",
    "MackeyFunctor",
    "MackeyMorphism",
    "cokernel",
    "direct_sum",
    "dual",
    "geometric_fixed",
    "get_entry",
    "get_functor",
    "hom_space",
    "identify",
    "induce",
    "inflate",
    "kernel",
    "list_entries",
    "register_entry",
    "require_valid",
    "restrict",
    "validate",
]
