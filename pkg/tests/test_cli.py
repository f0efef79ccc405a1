from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from polyforge.canon import are_isomorphic, connected_graphs
from polyforge.cli import main, parse_input
from polyforge.generators import complete
from polyforge.graphio import ParseError, format_edgelist, format_graph6


def run(capsys, *argv) -> tuple[int, str]:
    code = main(list(argv))
    return code, capsys.readouterr().out


def run_json(capsys, *argv) -> tuple[int, dict]:
    code, out = run(capsys, "--format", "json", *argv)
    return code, json.loads(out)


class TestParseInput:
    def test_edgelist(self):
        assert parse_input("2 1\n0 1") == complete(2)

    def test_graph6(self):
        assert parse_input("C~") == complete(4)

    def test_loop(self):
        g = parse_input("3 1\n0 0")
        assert g.n == 3 and g.pairs() == [(0, 0)]

    def test_roundtrips(self):
        for g in connected_graphs(5):
            assert are_isomorphic(parse_input(format_edgelist(g)), g)
            assert format_graph6(parse_input(format_graph6(g))) == format_graph6(g)

    def test_garbage(self):
        with pytest.raises(ParseError):
            parse_input("3 2\n0 1")


class TestSubcommands:
    def test_flow_k4_text(self, capsys):
        code, out = run(capsys, "flow", "--inline", "C~")
        assert code == 0
        assert "x^3 - 6x^2 + 11x - 6" in out

    def test_tutte_c3_json(self, capsys):
        code, d = run_json(capsys, "tutte", "--inline", "3 3;0 1;1 2;0 2")
        assert code == 0
        t = d["results"]["T"]
        assert t["terms"] == [[0, 1, 1, 1], [1, 0, 1, 1], [2, 0, 1, 1]]
        assert t["text"] == "x^2 + x + y"
        assert d["results"]["special_values"]["spanning_trees"] == 3
        assert d["subcommand"] == "tutte" and d["input_digest"]

    @pytest.mark.parametrize("route", ["dc", "subset", "activities", "potts"])
    def test_tutte_routes(self, capsys, route):
        _, d = run_json(capsys, "tutte", "--route", route, "--inline", "C~")
        assert d["results"]["T"]["text"] == "x^3 + y^3 + 3x^2 + 4x*y + 3y^2 + 2x + 2y"

    def test_census_json(self, capsys):
        code, d = run_json(capsys, "census", "--order", "4")
        r = d["results"]
        assert code == 0
        assert (r["sigma_unreal"], r["w_unreal"], r["tau_unreal"]) == (0, 1, 0)

    def test_chromatic_roots(self, capsys):
        _, d = run_json(capsys, "chromatic", "--roots", "--inline", "C~")
        assert d["results"]["chromatic"]["text"] == "x^4 - 6x^3 + 11x^2 - 6x"
        assert len(d["results"]["chromatic"]["roots"]) == 4

    def test_potts(self, capsys, tmp_path):
        w = tmp_path / "w.txt"
        w.write_text("0 1/2\n")
        _, d = run_json(capsys, "potts", "--inline", "2 1;0 1", "--weights", str(w))
        assert d["results"]["Z"]["text"] == "q^2 + (1/2)q"
        _, d = run_json(capsys, "potts", "--inline", "2 1;0 1", "--weights", str(w), "--q", "2")
        assert d["results"]["Z"] == "5"

    def test_potts_weight_mismatch(self, capsys, tmp_path):
        w = tmp_path / "w.txt"
        w.write_text("7 1\n")
        code, _ = run(capsys, "potts", "--inline", "2 1;0 1", "--weights", str(w))
        assert code == 2

    def test_char_uniform(self, capsys):
        _, d = run_json(capsys, "char", "--uniform", "2", "4")
        assert d["results"]["characteristic"]["text"] == "x^2 - 4x + 3"

    def test_order(self, capsys):
        code, d = run_json(capsys, "order", "--strict", "--weak", "--inline", "4 3;1 3;2 3;2 4")
        assert code == 0
        assert d["results"]["strict"]["binomial_shifts"] == {"0": 1, "1": 3, "2": 1}
        assert d["results"]["weak"]["binomial_shifts"] == {"1": 1, "2": 3, "3": 1}

    def test_polys(self, capsys):
        _, d = run_json(capsys, "polys", "--inline", "4 4;0 1;1 2;2 3;0 3")
        assert d["results"]["w"]["text"] == "14x^4 + 8x^3 + 2x^2"

    def test_roots_w(self, capsys):
        _, d = run_json(capsys, "roots", "--of", "w", "--inline", "4 4;0 1;1 2;2 3;0 3")
        # 2x^2(7x^2 + 4x + 1) has the single real root 0
        assert len(d["results"]["w"]["roots"]) == 1

    def test_flow_timeout(self, capsys):
        k10 = format_graph6(complete(10))
        code, d = run_json(capsys, "--timeout", "1e-9", "flow", "--inline", k10)
        assert code == 1 and d["results"]["flow"]["completed"] is False

    def test_stdin(self, capsys, monkeypatch):
        monkeypatch.setattr(sys, "stdin", io.StringIO("C~\n"))
        code, out = run(capsys, "chromatic", "-")
        assert code == 0 and "x^4" in out

    def test_bad_input_exit_code(self, capsys):
        code, _ = run(capsys, "tutte", "--inline", "2 1;0 9")
        assert code == 2


class TestVerify:
    def test_tutte_on_k4(self, tmp_path, capsys):
        f = tmp_path / "k4.g6"
        f.write_text("C~\n")
        code, d = run_json(capsys, "verify", "tutte", "--corpus", str(f))
        assert code == 0
        names = {r["name"] for r in d["reports"]}
        assert {"tutte_convolution", "tutte_rational_identity", "stanley_negative", "read_rosenstiehl"} <= names
        assert all(r["status"] == "pass" for r in d["reports"])

    def test_order(self, capsys):
        code, d = run_json(capsys, "verify", "order", "--digraph-order", "4")
        assert code == 0 and d["summary"]["failed"] == 0

    def test_all_builtin(self, capsys):
        code, d = run_json(capsys, "verify", "all")
        assert code == 0
        assert d["summary"]["passed"]

    def test_deterministic_across_jobs(self, capsys):
        _, a = run_json(capsys, "verify", "flow", "--corpus", "order:5")
        _, b = run_json(capsys, "--jobs", "3", "verify", "flow", "--corpus", "order:5")
        _, c = run_json(capsys, "verify", "flow", "--corpus", "order:5")
        for d in (a, b, c):
            d.pop("timing_seconds")
        assert a == b == c


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "polyforge.cli", "flow", "--inline", "C~"],
                         capture_output=True, text=True, check=True).stdout
    assert "x^3 - 6x^2 + 11x - 6" in out
