"""Lewis-diagram documents (format ``mackeycalc.lewis/1``).

A document is JSON with sorted keys: levels with their presentation, restriction
and transfer matrices keyed "H<J", and non-identity Weyl matrices keyed "J@bits".
"""

import json
from typing import Any

from mackeycalc.algebra.grouptab import element_label, get_table, parse_element
from mackeycalc.algebra.zlattice import AbPresentation, IntMatrix
from mackeycalc.mackey.functor import MackeyFunctor

FORMAT = "mackeycalc.lewis/1"


def level_document(level: AbPresentation) -> dict[str, Any]:
    return {
        "generators": level.generator_count,
        "relations": level.relations.tolist(),
        "divisors": level.elementary_divisors(),
        "labels": list(level.labels),
    }


def level_from_document(doc: dict[str, Any]) -> AbPresentation:
    return AbPresentation.from_relations(doc["generators"], doc["relations"], doc.get("labels", ()))


def to_document(m: MackeyFunctor) -> dict[str, Any]:
    t = m.table
    weyl = {}
    for (sub, g), matrix in m.weyl.items():
        if matrix != IntMatrix.identity(matrix.rows):
            weyl[f"{sub}@{element_label(g)}"] = matrix.tolist()
    return {
        "format": FORMAT,
        "group": t.group_id,
        "name": m.name,
        "levels": {sub: level_document(m.levels[sub]) for sub in t.subgroups},
        "res": {f"{small}<{big}": m.restrictions[(small, big)].tolist() for small, big in t.pairs()},
        "tr": {f"{small}<{big}": m.transfers[(small, big)].tolist() for small, big in t.pairs()},
        "weyl": weyl,
    }


def from_document(doc: dict[str, Any]) -> MackeyFunctor:
    if doc.get("format") != FORMAT:
        raise ValueError(f"Unknown document format: {doc.get('format')}. Expected: {FORMAT}")
    t = get_table(doc["group"])
    levels = {sub: level_from_document(doc["levels"][sub]) for sub in t.subgroups}

    def gens(sub: str) -> int:
        return levels[sub].generator_count

    def pairs(key: str, rows_of, cols_of) -> dict[tuple[str, str], IntMatrix]:
        out = {}
        for small, big in t.pairs():
            rows = doc[key][f"{small}<{big}"]
            out[(small, big)] = IntMatrix.of(rows, cols=cols_of(small, big))
            if out[(small, big)].rows != rows_of(small, big):
                raise ValueError(f"{key} matrix {small}<{big} has the wrong number of rows")
        return out

    restrictions = pairs("res", lambda s, b: gens(b), lambda s, b: gens(s))
    transfers = pairs("tr", lambda s, b: gens(s), lambda s, b: gens(b))
    weyl = {(sub, g): IntMatrix.identity(gens(sub)) for sub in t.subgroups for g in t.elements}
    for key, rows in doc.get("weyl", {}).items():
        sub, _, bits = key.partition("@")
        weyl[(sub, parse_element(bits))] = IntMatrix.of(rows, cols=gens(sub))
    return MackeyFunctor(t, levels, restrictions, transfers, weyl, doc.get("name", ""))


def dumps(m: MackeyFunctor) -> str:
    """Canonical text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(to_document(m), sort_keys=True, indent=2) + "\n"


def loads(text: str) -> MackeyFunctor:
    return from_document(json.loads(text))
