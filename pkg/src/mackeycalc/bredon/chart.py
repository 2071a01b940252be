"""Charts of pi_{x + y rho_bar} of Eilenberg-Mac Lane spectra.

Cell (x, y) is H_x of S^{-y rho_bar} with coefficients M: ordinary cells for
y <= 0 and dual cells for y > 0, so the negative cone is read off the same engine.
A row shares one realized complex for every x.
"""

from __future__ import annotations

import hashlib
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any

from mackeycalc.bredon.cells import RepDegree, virtual_sphere_complex
from mackeycalc.bredon.homology import homology_functors
from mackeycalc.bredon.realize import realize
from mackeycalc.common import get_logger
from mackeycalc.common.config import get_settings
from mackeycalc.mackey.functor import MackeyFunctor
from mackeycalc.mackey.identify import identify
from mackeycalc.mackey.serialize import dumps, to_document

if TYPE_CHECKING:
    from mackeycalc.charts.cache import ChartCache

log = get_logger(__name__)

FORMAT = "mackeycalc.chart/1"


@dataclass
class ChartCell:
    x: int
    y: int
    name: str
    summands: list[str]
    levels: dict[str, str]
    top_rank: int
    verified: bool = True
    shaded: bool = False
    lewis: dict[str, Any] | None = None
    functor: MackeyFunctor | None = field(default=None, repr=False, compare=False)

    @property
    def is_zero(self) -> bool:
        return self.name == "0"

    def to_document(self) -> dict[str, Any]:
        return {
            "x": self.x,
            "y": self.y,
            "name": self.name,
            "summands": list(self.summands),
            "levels": dict(self.levels),
            "top_rank": self.top_rank,
            "verified": self.verified,
            "shaded": self.shaded,
            "lewis": self.lewis,
        }

    @classmethod
    def from_document(cls, doc: dict[str, Any]) -> ChartCell:
        return cls(
            doc["x"],
            doc["y"],
            doc["name"],
            list(doc["summands"]),
            dict(doc["levels"]),
            doc["top_rank"],
            doc.get("verified", True),
            doc.get("shaded", False),
            doc.get("lewis"),
        )


@dataclass
class ChartManifest:
    group: str
    coefficient: str
    x_range: tuple[int, int]
    y_range: tuple[int, int]
    cells: dict[tuple[int, int], ChartCell]
    annotations: list[dict[str, Any]] = field(default_factory=list)
    provenance: dict[str, Any] = field(default_factory=dict)

    def cell(self, x: int, y: int) -> ChartCell:
        if (x, y) not in self.cells:
            raise KeyError(f"Chart cell not found: ({x}, {y})")
        return self.cells[(x, y)]

    @property
    def xs(self) -> list[int]:
        return list(range(self.x_range[0], self.x_range[1] + 1))

    @property
    def ys(self) -> list[int]:
        return list(range(self.y_range[0], self.y_range[1] + 1))

    def shaded_cells(self) -> list[tuple[int, int]]:
        return sorted(key for key, c in self.cells.items() if c.shaded)

    def to_document(self) -> dict[str, Any]:
        return {
            "format": FORMAT,
            "group": self.group,
            "coefficient": self.coefficient,
            "x_range": list(self.x_range),
            "y_range": list(self.y_range),
            "cells": [self.cells[key].to_document() for key in sorted(self.cells, key=lambda k: (k[1], k[0]))],
            "shaded": [list(key) for key in self.shaded_cells()],
            "annotations": self.annotations,
            "provenance": self.provenance,
        }

    @classmethod
    def from_document(cls, doc: dict[str, Any]) -> ChartManifest:
        if doc.get("format") != FORMAT:
            raise ValueError(f"Unknown document format: {doc.get('format')}. Expected: {FORMAT}")
        cells = [ChartCell.from_document(c) for c in doc["cells"]]
        return cls(
            doc["group"],
            doc["coefficient"],
            tuple(doc["x_range"]),
            tuple(doc["y_range"]),
            {(c.x, c.y): c for c in cells},
            list(doc.get("annotations", [])),
            dict(doc.get("provenance", {})),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_document(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def loads(cls, text: str) -> ChartManifest:
        return cls.from_document(json.loads(text))


def coefficient_digest(m: MackeyFunctor) -> str:
    return hashlib.sha256(dumps(m).encode()).hexdigest()


def _cell(x: int, y: int, functor: MackeyFunctor, verified: bool = True) -> ChartCell:
    found = identify(functor)
    top = functor.level(functor.table.top)
    return ChartCell(
        x,
        y,
        found.name,
        found.summands,
        {sub: functor.levels[sub].describe() for sub in functor.table.subgroups},
        len(top.elementary_divisors()),
        verified,
        lewis=None if found.identified else to_document(functor),
        functor=functor,
    )


def chart_row(m: MackeyFunctor, y: int, xs: list[int]) -> list[ChartCell]:
    """Cells (x, y) for every x, from one realized complex of S^{-y rho_bar}."""
    v = RepDegree.rho_bar(m.table, -y)
    rc = realize(virtual_sphere_complex(m.table, v), m)
    functors = homology_functors(rc, xs)
    row = [_cell(x, y, functors[x]) for x in xs]
    log.debug("chart_row_computed", coefficient=m.name, y=y, cells=[c.name for c in row])
    return row


def graded_cell(m: MackeyFunctor, v: RepDegree, n: int) -> ChartCell:
    """pi_{n + V} for an arbitrary (virtual) V; mixed-sign degrees are flagged unverified."""
    negated = RepDegree(-v.trivial, {h: -k for h, k in v.signs.items()})
    rc = realize(virtual_sphere_complex(m.table, negated), m)
    functor = homology_functors(rc, [n])[n]
    signs = [k for k in v.signs.values() if k]
    verified = all(k > 0 for k in signs) or all(k < 0 for k in signs)
    return _cell(n, 0, functor, verified)


def _compute_rows(m: MackeyFunctor, ys: list[int], xs: list[int], workers: int) -> dict[int, list[ChartCell]]:
    if workers > 1 and len(ys) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = {y: pool.submit(chart_row, m, y, xs) for y in ys}
            return {y: futures[y].result() for y in ys}
    return {y: chart_row(m, y, xs) for y in ys}


def chart(
    m: MackeyFunctor,
    x_range: tuple[int, int],
    y_range: tuple[int, int],
    *,
    shade_against: ChartManifest | None = None,
    cache: ChartCache | None = None,
    workers: int | None = None,
    annotations: list[dict[str, Any]] | None = None,
) -> ChartManifest:
    """The chart of pi_{x + y rho_bar} HM over inclusive ranges of x and y.

    A cell is shaded when it identifies with the same name as the corresponding
    cell of ``shade_against``.
    """
    if x_range[0] > x_range[1] or y_range[0] > y_range[1]:
        raise ValueError(f"Empty chart range: x {x_range}, y {y_range}")
    settings = get_settings()
    xs = list(range(x_range[0], x_range[1] + 1))
    ys = list(range(y_range[0], y_range[1] + 1))
    digest = coefficient_digest(m)
    log.info("chart_started", coefficient=m.name, group=m.table.group_id, x_range=x_range, y_range=y_range)

    rows: dict[int, list[ChartCell]] = {}
    cached_rows: dict[int, list[ChartCell]] = {}
    pending: list[int] = []
    for y in ys:
        cached = cache.load_row(digest, y, xs) if cache is not None else None
        if cached is None:
            pending.append(y)
        elif cache is not None and cache.should_verify():
            cached_rows[y] = cached
            pending.append(y)
        else:
            rows[y] = cached

    computed = _compute_rows(m, pending, xs, workers or settings.chart_workers)
    for y in pending:
        row = computed[y]
        if y in cached_rows:
            stale = [(c.x, c.y) for c, old in zip(row, cached_rows[y], strict=True) if c.name != old.name]
            if stale:
                log.warning("chart_cache_mismatch", coefficient=m.name, cells=stale)
        if cache is not None:
            cache.store_row(digest, y, row)
        rows[y] = row

    cells = {(c.x, c.y): c for row in rows.values() for c in row}
    if shade_against is not None:
        for key, c in cells.items():
            other = shade_against.cells.get(key)
            c.shaded = other is not None and c.name != "unidentified" and other.name == c.name
    manifest = ChartManifest(
        m.table.group_id,
        m.name,
        x_range,
        y_range,
        cells,
        list(annotations or []),
        {"engine": "mackeycalc", "coefficient_sha256": digest, "cells": len(cells)},
    )
    log.info("chart_finished", coefficient=m.name, cells=len(cells), computed_rows=len(pending))
    return manifest


def c2_chart(m: MackeyFunctor, x_range: tuple[int, int], y_range: tuple[int, int], **kwargs: Any) -> ChartManifest:
    """The same chart over C2, where rho_bar is the sign representation."""
    if m.table.group_id != "C2":
        raise ValueError(f"c2_chart needs a C2 Mackey functor, got one over {m.table.group_id}")
    return chart(m, x_range, y_range, **kwargs)
