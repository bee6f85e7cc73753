import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from subatomica import cli
from subatomica.errors import ParseError
from subatomica.parser import parse_element, parse_structure


SCHEMA = json.loads(
    (Path(__file__).resolve().parent.parent / "schemas" / "result.v1.json").read_text()
)


def run(argv):
    result, _ = cli.run_command(argv)
    return result


JSON_INVOCATIONS = [
    ["contains", "--monoid", "P", "--elem", "5/6"],
    ["contains", "--monoid", "maa", "--elem", "1/8"],
    ["divides", "--monoid", "numerical{gens=[2,3]}", "--b", "2", "--c", "5"],
    ["divides", "--structure", "poly{base=N0}", "--b", "1+x", "--c", "1+2x+x^2"],
    ["atoms", "--monoid", "MF", "--bound", "10"],
    ["is-atom", "--structure", "expsum{base=MF, r=2*e^0 + 1*e^(1/2)}"],
    ["is-atom", "--structure", "poly{base=QGe1}", "--elem", "x^2+13/6x+1"],
    ["factorize", "--structure", "poly{base=N0}", "--elem", "1+x+x^2+x^3+x^4+x^5"],
    ["factorize", "--monoid", "MF", "--elem", "5/4"],
    ["gcd", "--monoid", "numerical{gens=[2,3]}", "--elems", "5,6"],
    ["mcd", "--monoid", "numerical{gens=[2,3]}", "--elems", "5,6"],
    ["canon-decomp", "--elem", "1/8"],
    ["greatest-dyadic", "--elem", "21/80"],
    ["embed", "--structure", "expsum{base=MF, r=2*e^0 + 1*e^(1/2)}"],
    ["phi", "--structure", "lexconealg{f=3*X^(0,1) + X^(2,1)}"],
    ["ord-status", "--structure", "mixed{f=sqrt2*x^2}"],
    ["witness", "furstenberg", "--structure", "poly{base=N0}", "--elem", "2x+2"],
    ["witness", "furstenberg", "--monoid", "N", "--elem", "1/2"],
    ["witness", "almost-atomic", "--monoid", "MAA", "--elem", "1/8"],
    ["witness", "quasi-atomic", "--monoid", "MF", "--elem", "5/4"],
    ["ufm-check", "--structure", "N0", "--range", "2,50"],
    ["oracle", "--structure", "N0", "--elem", "12", "--depth", "3"],
    ["contains", "--monoid", "P", "--elem", "not a number ("],
    ["is-atom", "--structure", "poly{base=N0}", "--elem", "0"],
]


@pytest.mark.parametrize("argv", JSON_INVOCATIONS, ids=lambda a: " ".join(a[:2]))
def test_json_output_validates_against_schema(argv):
    res = run(argv)
    doc = {"status": res.status, "payload": res.payload, "citations": res.citations}
    doc = json.loads(json.dumps(doc))
    jsonschema.validate(doc, SCHEMA)
    assert res.exit_code == cli._EXIT[doc["status"]]


def test_exit_codes_consistent_across_scripted_invocations():
    # status <-> exit code table over a scripted batch of invocations
    count = 0
    for argv in JSON_INVOCATIONS:
        for flag in ([], ["--json"]):
            res = run(argv + flag)
            assert res.exit_code == cli._EXIT[res.status]
            assert res.status in cli._EXIT
            count += 1
    assert count >= 40


def test_known_exit_codes():
    assert run(["contains", "--monoid", "P", "--elem", "5/6"]).exit_code == 0
    assert run(["factorize", "--monoid", "MF", "--elem", "5/4"]).exit_code == 3
    assert run(["witness", "furstenberg", "--monoid", "N", "--elem", "1/2"]).exit_code == 3
    assert run(["contains", "--monoid", "P", "--elem", "x+("]).exit_code == 2


def test_check_suite_deterministic_and_idempotent(tmp_path):
    out1 = run(["check", "--suite", "paper"])
    out2 = run(["check", "--suite", "paper"])
    assert out1.status == out2.status == cli.OK
    assert out1.payload == out2.payload
    assert out1.payload["passed"] == out1.payload["total"]

    report = tmp_path / "report.tap"
    run(["check", "--suite", "paper", "--report", str(report)])
    text = report.read_text()
    assert text.startswith("1..")
    assert "not ok" not in text
    run(["check", "--suite", "paper", "--report", str(report)])
    assert report.read_text() == text


def test_entry_point_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "subatomica.cli", "mcd",
         "--monoid", "numerical{gens=[2,3]}", "--elems", "5,6", "--json"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    jsonschema.validate(doc, SCHEMA)
    assert doc["payload"]["mcd"] == ["2", "3"]
    assert doc["payload"]["gcd"] == []
    assert doc["payload"]["common"] == ["0", "2", "3"]


def test_precision_env_var(monkeypatch):
    monkeypatch.setenv("SUBATOMICA_PRECISION", "512")
    res = run(["is-atom", "--structure", "expsum{base=MF, r=2*e^0 + 1*e^(1/2)}"])
    assert res.status == cli.OK
    assert res.payload["is_atom"] is True


# ---------------------------------------------------------------------------
# Parser round trips

ROUND_TRIP_ELEMENTS = [
    ("poly{base=N0}", "1+2x+x^2"),
    ("poly{base=QGe1}", "x^2+13/6x+1"),
    ("poly{base=Z}", "x^3+1"),
    ("expsum{base=MF}", "2*e^0 + 3*e^(3/2)"),
    ("lexconealg", "3*X^(0,1) + 1*X^(2,1)"),
    ("mixed", "2 + x + (sqrt2)*x^2"),
]


@pytest.mark.parametrize("struct,text", ROUND_TRIP_ELEMENTS, ids=lambda v: str(v)[:20])
def test_parse_print_parse_round_trip(struct, text):
    ps = parse_structure(struct)
    e1 = parse_element(ps.structure, text)
    e2 = parse_element(ps.structure, str(e1))
    assert e1 == e2


def test_parse_errors_carry_position():
    with pytest.raises(ParseError) as ei:
        parse_structure("poly{base=N0, f=1+}")
    assert ei.value.column >= 1
