import inspect
import io
import json
import subprocess
import sys

import jsonschema
import pytest
from hypothesis import given, settings, strategies as st

from eulerchi import errors
from eulerchi.cli import COMMANDS, SCHEMAS, load_schema, run
from eulerchi.parsing import parse_system

CONIC = "field: Q\nvars: x,y\nx^2 + y^2 - 1\n"
CONIC5 = "field: F5\nvars: x1,x2\nx1^2 + x2^2 - 1\n"
QUINTIC = "field: Q\nvars: x, y\nx^5 + 1   # five lines\n"
PCONIC = "field: Q\nvars: z, x, y\nx^2 + y^2 - z^2\n"
LINES = "field: Q\nvars: x, y\nx\ny\nx + y - 1\n"


@pytest.fixture
def sysfile(tmp_path):
    def make(text, name="s.sys"):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return make


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def call_json(*argv):
    code, text = call(*argv, "--json")
    return code, json.loads(text)


# -- parsing ----------------------------------------------------------------------

def test_parse_examples():
    s = parse_system(CONIC)
    assert s.variables == ["x", "y"] and len(s.polys) == 1
    s5 = parse_system(CONIC5)
    assert s5.field.characteristic == 5 and s5.variables == ["x1", "x2"]
    with pytest.raises(errors.ParseError):
        parse_system("vars: x\nx^2")


def test_parse_errors_carry_positions():
    with pytest.raises(errors.ParseError) as info:
        parse_system("field: Q\nvars: x, y\nx^2 + 2y\n")
    assert "3" in str(info.value)
    with pytest.raises(errors.UndeclaredVariable):
        parse_system("field: Q\nvars: x\nx + w\n")
    with pytest.raises(errors.BadFieldSpec):
        parse_system("field: F6\nvars: x\nx\n")


def test_rational_literals():
    s = parse_system("field: Q\nvars: x\n1/2*x + 1/3\n")
    assert parse_system(s.to_text()) == s
    assert "1/3" in s.to_text()


@given(st.lists(st.tuples(st.integers(-30, 30), st.integers(1, 9), st.integers(0, 3), st.integers(0, 3)),
                min_size=1, max_size=5),
       st.sampled_from(["Q", "F7", "F5^2"]))
@settings(max_examples=40)
def test_round_trip(terms, field):
    body = " + ".join(f"({a}/{b})*x^{i}*y^{j}" if field == "Q" else f"{a}*x^{i}*y^{j}"
                      for a, b, i, j in terms)
    text = f"field: {field}\nvars: x, y\n{body}\n"
    s = parse_system(text)
    again = parse_system(s.to_text())
    assert again == s and again.to_text() == s.to_text()


# -- documented examples ------------------------------------------------------------

def test_motive_json(sysfile):
    code, doc = call_json("motive", sysfile(CONIC))
    assert code == 0
    assert {k: doc[k] for k in ("dimension", "degree", "euler", "motive")} == {
        "dimension": 1, "degree": 2, "euler": 0, "motive": [-2, 2]}
    assert doc["seed"] == 0


def test_euler_text(sysfile):
    assert call("euler", sysfile(QUINTIC)) == (0, "5\n")


def test_count(sysfile):
    assert call("count", sysfile(CONIC5), "--p", "5", "--ds", "1,2") == (0, "8\n")
    code, doc = call_json("count", sysfile(CONIC), "--p", "5", "--ds", "1,2")
    assert code == 0 and doc["count"] == 8 and doc["match"]


def test_other_subcommands(sysfile):
    f = sysfile(CONIC)
    assert call("gb", f)[1].strip() == "x^2 + y^2 - 1"
    code, doc = call_json("eliminate", sysfile("field: Q\nvars: x, y\nx^2+y^2-1\ny\n"), "--keep", "x")
    assert code == 0 and doc["basis"] == ["x^2 - 1"]
    code, doc = call_json("dim-deg", sysfile(PCONIC))
    assert (doc["dimension"], doc["degree"]) == (2, 2)
    assert call("proj-euler", sysfile(PCONIC)) == (0, "2\n")
    assert call("proj-motive", sysfile(PCONIC)) == (0, "2*L\n")
    code, doc = call_json("decompose", sysfile("field: Q\nvars: x,y,z\nx*z\ny*z\n"))
    assert [c["dimension"] for c in doc["components"]] == [2, 1]
    code, doc = call_json("arrangement", sysfile(LINES))
    assert doc["identity"] and doc["characteristic"] == [3, -3, 1] and doc["flats"] == 7
    code, doc = call_json("validate-ff", f, "--primes", "3,5", "--dmax", "2")
    assert code == 0 and all(v["match"] for v in doc["verdicts"])


SCHEMA_RUNS = [
    ("gb", CONIC, ()), ("eliminate", CONIC, ("--keep", "x")), ("dim-deg", PCONIC, ()),
    ("decompose", CONIC, ()), ("euler", CONIC, ()), ("motive", CONIC, ()),
    ("proj-euler", PCONIC, ()), ("proj-motive", PCONIC, ()), ("arrangement", LINES, ()),
    ("count", CONIC5, ("--p", "5", "--ds", "1,1")), ("validate-ff", CONIC, ("--primes", "5", "--dmax", "1")),
]


@pytest.mark.parametrize("command,text,extra", SCHEMA_RUNS, ids=[r[0] for r in SCHEMA_RUNS])
def test_json_matches_schema(sysfile, command, text, extra):
    code, doc = call_json(command, sysfile(text), *extra)
    assert code == 0
    jsonschema.validate(doc, load_schema(command))


def test_every_command_has_a_schema():
    assert set(COMMANDS) | {"error"} == set(SCHEMAS)
    for name in SCHEMAS:
        jsonschema.Draft202012Validator.check_schema(load_schema(name))


def test_motive_arrays_have_no_trailing_zeros(sysfile):
    _, doc = call_json("motive", sysfile("field: Q\nvars: x, y\nx^2 - 1\ny\n"))
    assert doc["motive"] == [2]
    _, doc = call_json("motive", sysfile("field: Q\nvars: x\n1\n"))
    assert doc["motive"] == []


# -- exit codes ------------------------------------------------------------------------

def test_input_errors_exit_2(sysfile, tmp_path):
    code, doc = call_json("motive", sysfile("vars: x\nx^2\n"))
    assert code == 2 and doc["error"] == "ParseError"
    jsonschema.validate(doc, load_schema("error"))
    assert call("motive", str(tmp_path / "missing.sys"))[0] == 2
    assert call("count", sysfile(CONIC5), "--p", "5", "--ds", "2,3")[0] == 2
    assert call("proj-motive", sysfile(CONIC))[0] == 2
    assert call("arrangement", sysfile(CONIC))[0] == 2
    assert call("eliminate", sysfile(CONIC), "--keep", "w")[0] == 2
    assert call("motive")[0] == 2


def test_engine_errors_exit_3(sysfile):
    code, doc = call_json("decompose", sysfile("field: F2\nvars: x, y, z\nx^2 - y\nz\n"))
    assert code == 3 and doc["error"] == "InseparableEliminant" and doc["exit_code"] == 3


def test_exit_codes_are_exhaustive():
    for name, cls in inspect.getmembers(errors, inspect.isclass):
        if issubclass(cls, errors.EulerChiError):
            expected = 3 if issubclass(cls, errors.EngineError) else 2
            assert errors.exit_code_for(cls("x")) == expected, name
    assert errors.exit_code_for(RuntimeError()) == 1


def test_console_entry_point(sysfile):
    proc = subprocess.run([sys.executable, "-m", "eulerchi", "euler", sysfile(QUINTIC)],
                          capture_output=True, text=True, timeout=60)
    assert proc.returncode == 0 and proc.stdout.strip() == "5"
