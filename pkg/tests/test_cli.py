"""Tests for the command-line interface."""

import argparse

import pytest

from mackeycalc.bredon.chart import ChartManifest
from mackeycalc.cli import main, parse_ideal, parse_range, parse_signs, resolve_coefficient
from mackeycalc.mackey.catalog import get_functor
from mackeycalc.mackey.serialize import dumps


class TestParsers:
    def test_parse_range(self):
        assert parse_range("-8..8") == (-8, 8)
        assert parse_range("3") == (3, 3)

    @pytest.mark.parametrize("text", ["a..b", "2..1", ""])
    def test_parse_range_rejects(self, text):
        with pytest.raises(argparse.ArgumentTypeError):
            parse_range(text)

    def test_parse_signs(self):
        assert parse_signs("L=1,D=-1") == {"L": 1, "D": -1}
        assert parse_signs("") == {}
        with pytest.raises(ValueError, match="Invalid sign multiplicity"):
            parse_signs("L")

    def test_parse_ideal(self, burnside_c2):
        assert parse_ideal(burnside_c2, ["zero"]) == []
        assert parse_ideal(burnside_c2, ["C2:2"]) == [("C2", (2, 0))]
        assert parse_ideal(burnside_c2, ["C2:2,-1"]) == [("C2", (2, -1))]
        with pytest.raises(ValueError, match="Unknown ideal generator"):
            parse_ideal(burnside_c2, ["L:1"])

    def test_resolve_coefficient_from_file(self, tmp_path):
        path = tmp_path / "g.json"
        path.write_text(dumps(get_functor("C2", "g")))
        assert resolve_coefficient("C2", str(path)).table.group_id == "C2"
        with pytest.raises(ValueError, match="not K4"):
            resolve_coefficient("K4", str(path))


class TestCommands:
    def test_catalog(self, capsys):
        main(["catalog", "--group", "C2"])
        out = capsys.readouterr().out
        assert "NeC2_F2" in out
        assert "K4" not in out

    def test_show(self, capsys):
        main(["show", "--group", "C2", "--coeff", "F2"])
        assert capsys.readouterr().out.startswith("F2 over C2")
        main(["show", "--group", "C2", "--coeff", "F2", "--json"])
        assert '"format": "mackeycalc.lewis/1"' in capsys.readouterr().out

    def test_unknown_coefficient_lists_the_catalog(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            main(["show", "--coeff", "no-such-functor"])
        assert excinfo.value.code == 1
        err = capsys.readouterr().err
        assert "Unknown coefficient" in err
        assert "  NeK_F2" in err

    def test_quotient(self, capsys):
        main(["quotient", "--group", "C2", "--ideal", "e:2", "--name", "Q"])
        out = capsys.readouterr().out
        assert out.startswith("Q over C2")
        assert "norms" in out

    def test_quotient_by_zero(self, capsys):
        main(["quotient", "--group", "C2", "--ideal", "zero"])
        assert "over C2" in capsys.readouterr().out

    def test_infinite_quotient_fails(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            main(["quotient", "--group", "C2", "--ideal", "C2:2,-1"])
        assert excinfo.value.code == 1
        assert "error:" in capsys.readouterr().err

    def test_norm(self, capsys):
        main(["norm", "--group", "K4", "--from", "D"])
        out = capsys.readouterr().out
        assert "K: Z/2 + Z/4 on 1, c" in out

    def test_fixedpoints_of_a_norm(self, capsys):
        main(["fixedpoints", "--norm", "e", "--at", "L"])
        assert "over C2" in capsys.readouterr().out

    def test_bredon(self, capsys):
        main(["bredon", "--coeff", "F2*", "--rho-bar", "1", "--degree", "3"])
        first = capsys.readouterr().out.splitlines()[0]
        assert first.endswith("= F2")

    def test_identify(self, tmp_path, capsys):
        path = tmp_path / "e.json"
        path.write_text(dumps(get_functor("K4", "E")))
        main(["identify", str(path)])
        assert capsys.readouterr().out.strip() == "E"

    def test_hilbert(self, capsys):
        main(["hilbert", "--x", "2..3", "--y=-2..-2"])
        lines = capsys.readouterr().out.splitlines()
        assert lines[0].startswith("(2, -2) dim 5:")
        assert lines[1].startswith("(3, -2) dim 4:")

    def test_chart_files(self, mock_settings, tmp_path):
        stem = tmp_path / "charts" / "f2"
        main(["c2chart", "--coeff", "F2", "--x=-1..1", "--y=0..1", "--out", str(stem)])
        manifest = ChartManifest.loads(stem.with_suffix(".json").read_text())
        assert manifest.cell(0, 0).name == "F2"
        assert stem.with_suffix(".txt").read_text().startswith("pi_{x+y rho_bar} H(F2) over C2")
        assert stem.with_suffix(".svg").exists()
        assert list(mock_settings.cache_path.glob("*.json"))

    def test_chart_to_stdout(self, mock_settings, capsys):
        main(["c2chart", "--coeff", "g", "--x=0..0", "--y=0..0", "--no-cache"])
        out = capsys.readouterr().out
        assert out.startswith("pi_{x+y rho_bar} H(g) over C2")
        assert not mock_settings.cache_path.exists()

    def test_missing_subcommand(self):
        with pytest.raises(SystemExit):
            main([])

    @pytest.mark.slow
    def test_validate(self, capsys):
        main(["validate"])
        assert capsys.readouterr().out == ""
