"""Chart and diagram rendering using Jinja2.

Supports four outputs:
- chart: manifest -> ASCII grid or SVG
- lewis: Mackey functor -> text Lewis diagram
- green: Green functor -> Lewis diagram plus units and products
- tambara: Tambara functor -> the same plus norm tables
"""

from pathlib import Path
from typing import Any

import jinja2

from mackeycalc.algebra.grouptab import element_label
from mackeycalc.algebra.zlattice import IntMatrix
from mackeycalc.bredon.chart import ChartManifest
from mackeycalc.common import get_logger
from mackeycalc.mackey.functor import MackeyFunctor
from mackeycalc.tambara.green import GreenFunctor, TabulatedNorm, TambaraFunctor

log = get_logger(__name__)

# Template directory
TEMPLATE_DIR = Path(__file__).parent / "templates"

FORMATS = {"txt": "chart.txt.j2", "svg": "chart.svg.j2"}

CELL_SIZE = 64

_env: jinja2.Environment | None = None


def _get_env() -> jinja2.Environment:
    """Get or create the Jinja2 environment."""
    global _env
    if _env is None:
        _env = jinja2.Environment(
            loader=jinja2.FileSystemLoader(TEMPLATE_DIR),
            autoescape=jinja2.select_autoescape(["svg", "xml"]),
            trim_blocks=True,
            lstrip_blocks=True,
            keep_trailing_newline=True,
        )
        _env.filters["cell"] = _filter_cell
        _env.filters["matrix"] = _filter_matrix
        _env.filters["vector"] = _filter_vector
    return _env


def _filter_cell(name: str | None, width: int = 14) -> str:
    """Fixed-width label: '.' for zero, '?' for unidentified."""
    if name is None or name == "0":
        label = "."
    elif name == "unidentified":
        label = "?"
    else:
        label = name
    if len(label) > width:
        label = label[: width - 1] + "~"
    return label.center(width)


def _filter_matrix(matrix: IntMatrix) -> str:
    if matrix.rows == 0 or matrix.cols == 0:
        return "0"
    return "[" + "; ".join(" ".join(str(x) for x in row) for row in matrix.data) + "]"


def _filter_vector(vector: tuple[int, ...] | list[int]) -> str:
    return "(" + ", ".join(str(x) for x in vector) + ")"


def render_template(template_name: str, data: dict[str, Any]) -> str:
    """Render a Jinja2 template with data."""
    env = _get_env()
    template = env.get_template(template_name)
    return template.render(**data)


def _chart_context(manifest: ChartManifest) -> dict[str, Any]:
    rows = []
    for row_index, y in enumerate(reversed(manifest.ys)):
        cells = []
        for col_index, x in enumerate(manifest.xs):
            c = manifest.cells.get((x, y))
            cells.append(
                {
                    "x": x,
                    "y": y,
                    "name": c.name if c else None,
                    "shaded": bool(c and c.shaded),
                    "verified": c.verified if c else True,
                    "left": (col_index + 1) * CELL_SIZE,
                    "top": row_index * CELL_SIZE,
                }
            )
        rows.append({"y": y, "cells": cells})
    return {
        "manifest": manifest,
        "rows": rows,
        "xs": manifest.xs,
        "size": CELL_SIZE,
        "width": (len(manifest.xs) + 1) * CELL_SIZE,
        "height": (len(manifest.ys) + 1) * CELL_SIZE,
        "notes": [a for a in manifest.annotations if a.get("kind") in ("note", "class")],
    }


def render_chart(manifest: ChartManifest, fmt: str = "txt") -> str:
    """Render a chart manifest as an ASCII grid ("txt") or an SVG document ("svg")."""
    if fmt not in FORMATS:
        raise ValueError(f"Unknown chart format: {fmt}. Available: {list(FORMATS)}")
    log.info("rendering_chart", coefficient=manifest.coefficient, format=fmt, cells=len(manifest.cells))
    content = render_template(FORMATS[fmt], _chart_context(manifest))
    log.info("chart_rendered", coefficient=manifest.coefficient, format=fmt, length=len(content))
    return content


def _lewis_context(m: MackeyFunctor) -> dict[str, Any]:
    t = m.table
    return {
        "name": m.name or "M",
        "group": t.group_id,
        "levels": [(sub, m.levels[sub].describe(), ", ".join(m.levels[sub].labels)) for sub in t.subgroups],
        "maps": [(small, big, m.restrictions[(small, big)], m.transfers[(small, big)]) for small, big in t.covers()],
        "weyl": [
            (sub, element_label(g), m.weyl[(sub, g)])
            for sub in t.subgroups
            for g in t.elements
            if g not in t.subgroup(sub) and m.weyl[(sub, g)] != IntMatrix.identity(m.levels[sub].generator_count)
        ],
    }


def render_lewis(m: MackeyFunctor) -> str:
    """Text Lewis diagram: levels, covering restrictions and transfers, nontrivial Weyl actions."""
    return render_template("lewis.txt.j2", _lewis_context(m))


def _green_context(g: GreenFunctor) -> dict[str, Any]:
    table = g.table
    context = _lewis_context(g.mackey)
    context["units"] = [(sub, g.units[sub]) for sub in table.subgroups]
    context["products"] = [
        (sub, i, j, g.products[sub][i][j])
        for sub in table.subgroups
        for i in range(g.level(sub).generator_count)
        for j in range(i, g.level(sub).generator_count)
    ]
    return context


def render_green(g: GreenFunctor) -> str:
    """Lewis diagram plus units and products."""
    return render_template("tambara.txt.j2", _green_context(g))


def render_tambara(t: TambaraFunctor) -> str:
    """Lewis diagram of the underlying Mackey functor, then units, products and norms."""
    context = _green_context(t.green)
    norms = []
    for (small, big), norm in t.norms.items():
        if isinstance(norm, TabulatedNorm):
            values = sorted(norm.values.items())
            norms.append((small, big, "tabulated", values))
        else:
            norms.append((small, big, norm.description or "symbolic", []))
    context["norms"] = norms
    return render_template("tambara.txt.j2", context)
