"""Tests for chart computation, the row cache and rendering."""

import pytest

from mackeycalc.bredon.chart import ChartManifest, c2_chart, chart, chart_row, coefficient_digest
from mackeycalc.charts import ChartCache, render_chart, render_green, render_lewis, render_tambara


@pytest.fixture
def f2_c2_chart(c2_functor):
    return c2_chart(c2_functor("F2"), (-2, 2), (-1, 1), workers=1)


class TestChart:
    def test_origin_is_the_coefficient(self, f2_c2_chart):
        assert f2_c2_chart.cell(0, 0).name == "F2"
        assert f2_c2_chart.cell(0, 0).verified

    def test_every_cell_is_computed(self, f2_c2_chart):
        assert len(f2_c2_chart.cells) == 15
        assert f2_c2_chart.provenance["cells"] == 15

    def test_missing_cell(self, f2_c2_chart):
        with pytest.raises(KeyError, match="Chart cell not found"):
            f2_c2_chart.cell(5, 5)

    def test_empty_range(self, c2_functor):
        with pytest.raises(ValueError, match="Empty chart range"):
            chart(c2_functor("F2"), (1, 0), (0, 0))

    def test_c2_chart_needs_c2(self, k4_functor):
        with pytest.raises(ValueError, match="needs a C2 Mackey functor"):
            c2_chart(k4_functor("F2"), (0, 0), (0, 0))

    def test_k4_cells_on_the_cones(self, k4_functor):
        ne = chart(k4_functor("NeK_F2"), (3, 3), (-1, -1), workers=1)
        assert ne.cell(3, -1).name == "F2"
        nd = chart(k4_functor("NDK_F2"), (-3, -3), (1, 1), workers=1)
        assert nd.cell(-3, 1).name == "F2*"

    def test_norm_coefficients_over_c2(self, c2_functor):
        row = chart_row(c2_functor("NeC2_F2"), 0, [0])
        assert row[0].name == "NeC2_F2"

    def test_shading_marks_agreeing_cells(self, c2_functor, f2_c2_chart):
        other = c2_chart(c2_functor("NeC2_F2"), (-2, 2), (-1, 1), workers=1, shade_against=f2_c2_chart)
        for key, c in other.cells.items():
            assert c.shaded == (c.name == f2_c2_chart.cells[key].name and c.name != "unidentified")
        assert not other.cell(0, 0).shaded

    def test_manifest_document_round_trip(self, f2_c2_chart):
        text = f2_c2_chart.dumps()
        again = ChartManifest.loads(text)
        assert again.dumps() == text
        assert again.cell(0, 0).name == "F2"

    def test_manifest_rejects_unknown_format(self):
        with pytest.raises(ValueError, match="Unknown document format"):
            ChartManifest.from_document({"format": "mackeycalc.lewis/1"})


class TestChartCache:
    def test_store_and_load(self, mock_settings, c2_functor):
        m = c2_functor("F2")
        cache = ChartCache()
        assert cache.directory == mock_settings.cache_path
        digest = coefficient_digest(m)
        row = chart_row(m, 0, [-1, 0, 1])
        path = cache.store_row(digest, 0, row)
        assert path.exists()
        assert cache.load_row(digest, 0, [-1, 0, 1]) == row

    def test_misses(self, mock_settings, c2_functor):
        m = c2_functor("F2")
        cache = ChartCache()
        digest = coefficient_digest(m)
        cache.store_row(digest, 0, chart_row(m, 0, [0]))
        assert cache.load_row(digest, 1, [0]) is None
        assert cache.load_row(digest, 0, [0, 1]) is None
        assert cache.load_row(coefficient_digest(c2_functor("g")), 0, [0]) is None

    def test_corrupt_entry_is_ignored(self, mock_settings, c2_functor):
        cache = ChartCache()
        digest = coefficient_digest(c2_functor("F2"))
        path = cache.path_for(digest, 0, [0])
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text("{not json")
        assert cache.load_row(digest, 0, [0]) is None

    def test_verify_fraction(self, mock_settings):
        assert ChartCache().should_verify()
        assert not ChartCache(verify_fraction=0.0).should_verify()
        with pytest.raises(ValueError, match="verify_fraction"):
            ChartCache(verify_fraction=1.5)

    def test_clear(self, mock_settings, c2_functor):
        m = c2_functor("F2")
        cache = ChartCache()
        assert cache.clear() == 0
        cache.store_row(coefficient_digest(m), 0, chart_row(m, 0, [0]))
        assert cache.clear() == 1
        assert list(cache.directory.glob("*.json")) == []

    def test_chart_reuses_and_verifies_rows(self, mock_settings, c2_functor):
        m = c2_functor("F2")
        cache = ChartCache()
        first = c2_chart(m, (-1, 1), (0, 1), cache=cache, workers=1)
        assert len(list(cache.directory.glob("*.json"))) == 2
        second = c2_chart(m, (-1, 1), (0, 1), cache=cache, workers=1)
        assert second.dumps() == first.dumps()

    def test_unverified_hits_are_trusted(self, mock_settings, c2_functor):
        m = c2_functor("F2")
        trusting = ChartCache(verify_fraction=0.0)
        first = c2_chart(m, (0, 0), (0, 0), cache=trusting, workers=1)
        again = c2_chart(m, (0, 0), (0, 0), cache=trusting, workers=1)
        assert again.cell(0, 0) == first.cell(0, 0)


class TestRendering:
    def test_ascii_grid(self, f2_c2_chart):
        text = render_chart(f2_c2_chart)
        lines = text.splitlines()
        assert lines[0] == "pi_{x+y rho_bar} H(F2) over C2"
        assert lines[1].startswith("   1 |")
        assert "F2" in lines[2]
        assert "* agrees" not in text

    def test_ascii_grid_legend_for_shading(self, c2_functor, f2_c2_chart):
        shaded = c2_chart(c2_functor("F2"), (-2, 2), (-1, 1), workers=1, shade_against=f2_c2_chart)
        assert "* agrees with the reference chart" in render_chart(shaded)

    def test_svg(self, f2_c2_chart):
        svg = render_chart(f2_c2_chart, "svg")
        assert svg.startswith("<svg")
        assert ">F2<" in svg

    def test_unknown_format(self, f2_c2_chart):
        with pytest.raises(ValueError, match="Unknown chart format"):
            render_chart(f2_c2_chart, "png")

    def test_annotations_render_as_notes(self, c2_functor):
        m = c2_functor("F2")
        manifest = c2_chart(m, (0, 0), (0, 0), workers=1, annotations=[{"kind": "note", "text": "hello"}])
        assert "note: hello" in render_chart(manifest)

    def test_lewis_diagram(self, k4_functor):
        text = render_lewis(k4_functor("F2"))
        assert text.startswith("F2 over K4")
        assert "res^K_L = [1]" in text
        assert "tr^K_L = [0]" in text

    def test_green_and_tambara(self, burnside_c2, norm_d):
        green = render_green(burnside_c2.green)
        assert "norms" not in green
        text = render_tambara(norm_d)
        assert "norms" in text
        assert text.startswith(render_lewis(norm_d.mackey).splitlines()[0])
