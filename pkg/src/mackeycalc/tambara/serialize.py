"""Tambara functor documents (format ``mackeycalc.tambara/1``).

The Lewis diagram of the underlying Mackey functor plus units, structure
constants and norms. Tabulated norms list every (element, norm) pair; symbolic
norms are only supported for the Burnside rule and are stored by name.
"""

import json
from typing import Any

from mackeycalc.algebra.zlattice import Vector
from mackeycalc.mackey import serialize as lewis
from mackeycalc.tambara.burnside import burnside_norm
from mackeycalc.tambara.green import GreenFunctor, NormMap, SymbolicNorm, TabulatedNorm, TambaraFunctor

FORMAT = "mackeycalc.tambara/1"


def to_document(t: TambaraFunctor) -> dict[str, Any]:
    norms: dict[str, Any] = {}
    for (small, big), norm in t.norms.items():
        if isinstance(norm, TabulatedNorm):
            values = sorted([list(x), list(v)] for x, v in norm.values.items())
            norms[f"{small}<{big}"] = {"kind": "tabulated", "values": values}
        else:
            norms[f"{small}<{big}"] = {"kind": "symbolic", "rule": "burnside"}
    return {
        "format": FORMAT,
        "mackey": lewis.to_document(t.mackey),
        "units": {sub: list(v) for sub, v in t.green.units.items()},
        "products": {
            sub: [[list(v) for v in row] for row in rows] for sub, rows in t.green.products.items()
        },
        "norms": norms,
    }


def from_document(doc: dict[str, Any]) -> TambaraFunctor:
    if doc.get("format") != FORMAT:
        raise ValueError(f"Unknown document format: {doc.get('format')}. Expected: {FORMAT}")
    mackey = lewis.from_document(doc["mackey"])
    table = mackey.table
    units = {sub: tuple(v) for sub, v in doc["units"].items()}
    products = {
        sub: tuple(tuple(tuple(v) for v in row) for row in rows) for sub, rows in doc["products"].items()
    }
    norms: dict[tuple[str, str], NormMap] = {}
    for key, spec in doc["norms"].items():
        small, _, big = key.partition("<")
        if spec["kind"] == "tabulated":
            values: dict[Vector, Vector] = {tuple(x): tuple(v) for x, v in spec["values"]}
            norms[(small, big)] = TabulatedNorm(mackey.level(small), values)
        elif spec.get("rule") == "burnside":
            norms[(small, big)] = SymbolicNorm(lambda x, s=small, b=big: burnside_norm(table, s, b, x))
        else:
            raise ValueError(f"Unknown norm rule: {spec.get('rule')}. Available: ['burnside']")
    return TambaraFunctor(GreenFunctor(mackey, units, products), norms)


def dumps(t: TambaraFunctor) -> str:
    return json.dumps(to_document(t), sort_keys=True, indent=2) + "\n"


def loads(text: str) -> TambaraFunctor:
    return from_document(json.loads(text))
