import io
import json
from pathlib import Path

import pytest

from leftorth.cli import build_report, format_report, main, parse_input, render_input
from leftorth.errors import InputSyntaxError, SchemaError
from leftorth.models import SweepBounds, enumerate_catalog, standard_chain

GOLDEN = Path(__file__).parent / "golden"


def run(argv, stdin=None, monkeypatch=None):
    out, err = io.StringIO(), io.StringIO()
    if stdin is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = main(argv, out=out, err=err)
    return code, out.getvalue(), err.getvalue()


class TestParse:
    def test_double_line(self):
        c, d = parse_input(
            '{"components":[{"id":"E","self_intersection":1,"multiplicity":2}],"edges":[]}'
        )
        assert c.self_intersections == (1,) and d["E"] == 2

    def test_a2(self):
        c, d = parse_input(
            json.dumps(
                {
                    "components": [
                        {"id": "E1", "self_intersection": -2},
                        {"id": "E2", "self_intersection": -2},
                    ],
                    "edges": [["E1", "E2"]],
                }
            )
        )
        assert c.gram == ((-2, 1), (1, -2)) and d.multiplicities == (1, 1)

    def test_missing_field(self):
        with pytest.raises(SchemaError) as exc:
            parse_input('{"components":[{"id":"E"}],"edges":[]}')
        assert exc.value.field == "components[0].self_intersection"

    def test_syntax(self):
        with pytest.raises(InputSyntaxError) as exc:
            parse_input('{\n"components": [}')
        assert exc.value.line == 2

    def test_self_loop(self):
        with pytest.raises(SchemaError) as exc:
            parse_input('{"components":[{"id":"E","self_intersection":0}],"edges":[["E","E"]]}')
        assert exc.value.field == "edges"

    def test_float_rejected(self):
        with pytest.raises(SchemaError):
            parse_input('{"components":[{"id":"E","self_intersection":1.0}]}')

    def test_round_trip_over_catalog(self):
        for rec in enumerate_catalog(SweepBounds(3, 2, -1, 1, include_multiedges=True)):
            c, d = parse_input(render_input(rec.config, rec.divisor))
            assert c == rec.config and d == rec.divisor
            c, d = parse_input(json.dumps(rec.to_json()))
            assert c == rec.config and d == rec.divisor


class TestReport:
    def test_a3(self):
        c, d = standard_chain([-2, -2, -2])
        text = format_report(build_report(c, d))
        assert text.startswith(
            '{"lo":true,"slo":false,"p_a":0,"witness":{"kind":"slo_inequality",'
            '"subdivisor":{"E1":1,"E2":1,"E3":1},"p_a":0,"dd":-2}'
        )

    def test_genus_nonzero(self):
        c, d = parse_input('{"components":[{"id":"E","self_intersection":0,"multiplicity":2}]}')
        rep = build_report(c, d)
        assert rep["witness"] == {"kind": "genus_nonzero", "p_a": -1}
        assert list(rep) == ["lo", "slo", "p_a", "witness", "hodge_admissible"]

    @pytest.mark.parametrize("name", ["a3", "chain_0_3_2_3_0"])
    def test_golden(self, name):
        code, out, _ = run(["check", str(GOLDEN / f"{name}.json"), "--certificate"])
        assert code == 0
        assert out == (GOLDEN / f"{name}.check.json").read_text()


class TestExitCodes:
    def test_false_verdict_is_success(self, monkeypatch):
        doc = '{"components":[{"id":"E","self_intersection":0,"multiplicity":2}],"edges":[]}'
        code, out, _ = run(["check", "-"], doc, monkeypatch)
        assert code == 0 and json.loads(out)["lo"] is False

    def test_bad_input(self, monkeypatch):
        code, _, err = run(["check", "-"], '{"components":[{"id":"E"}]}', monkeypatch)
        assert code == 2 and "self_intersection" in err

    def test_zero_divisor(self, monkeypatch):
        doc = '{"components":[{"id":"E","self_intersection":0,"multiplicity":0}]}'
        assert run(["check", "-"], doc, monkeypatch)[0] == 2

    def test_cap(self, monkeypatch):
        c, d = standard_chain([-2] * 30)
        code, _, err = run(["check", "-", "--cap", "1000"], render_input(c, d), monkeypatch)
        assert code == 3 and "cap" in err

    def test_enumerate_cap(self):
        code = run(["enumerate", "--max-components", "4", "--multiplicity-max", "3", "--cap", "10"])[0]
        assert code == 3

    def test_enumerate_bad_bounds(self):
        assert run(["enumerate", "--max-components", "0"])[0] == 2


class TestCommands:
    def test_genus(self):
        code, out, _ = run(["genus", str(GOLDEN / "a3.json")])
        assert json.loads(out) == {"p_a": 0, "d_squared": -2, "dk": 0, "closed_form": 0, "magic_formula": True}

    def test_certificate(self):
        code, out, _ = run(["certificate", str(GOLDEN / "a3.json"), "--mode", "lo"])
        rep = json.loads(out)
        assert rep["verified"] and len(rep["certificate"]) == 3
        code, out, _ = run(["certificate", str(GOLDEN / "a3.json"), "--mode", "slo"])
        assert json.loads(out) == {"mode": "slo", "certificate": None, "verified": False}

    def test_hodge(self):
        code, out, _ = run(["hodge", str(GOLDEN / "chain_0_3_2_3_0.json")])
        assert json.loads(out)["n_pos"] == 2

    def test_enumerate_lines(self):
        code, out, _ = run(
            ["enumerate", "--max-components", "1", "--multiplicity-max", "2", "--r-min", "-1", "--r-max", "1"]
        )
        rows = [json.loads(line) for line in out.splitlines()]
        assert code == 0 and len(rows) == 6
        assert {(r["components"][0]["self_intersection"], r["components"][0]["multiplicity"]) for r in rows if r["lo"]} == {
            (-1, 1),
            (0, 1),
            (1, 1),
            (1, 2),
        }

    def test_gen_chain_and_random(self):
        code, out, _ = run(["gen", "chain", "--", "-2", "-2"])
        c, d = parse_input(out)
        assert c.gram == ((-2, 1), (1, -2))
        a = run(["gen", "random", "--seed", "5", "--n", "4"])[1]
        b = run(["gen", "random", "--seed", "5", "--n", "4"])[1]
        assert a == b and len(parse_input(a)[0]) == 4

    def test_pretty(self):
        code, out, _ = run(["check", str(GOLDEN / "a3.json"), "--output", "pretty"])
        assert out.startswith('{\n  "lo": true')
