"""Chart rendering and the chart row cache."""

from mackeycalc.charts.cache import ChartCache
from mackeycalc.charts.renderer import (
    render_chart,
    render_green,
    render_lewis,
    render_tambara,
    render_template,
)

__all__ = ["ChartCache", "render_chart", "render_green", "render_lewis", "render_tambara", "render_template"]
