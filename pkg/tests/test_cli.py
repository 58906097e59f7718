import io
import json
import subprocess
import sys
from itertools import islice
from pathlib import Path

import pytest

from corpus import ltl_corpus, sps_corpus

from ltlschema.cli import run
from ltlschema.floor import floor_translate
from ltlschema.ltl import render_ltl
from ltlschema.schema import parse_schema, render_schema

RUNNING = "p[0] & bigand i . (p[i] -> p[i+1]) & !p[n]"
THREE_STATE = Path(__file__).parent.parent / "demos" / "data" / "three_state_ts.txt"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


def fields(text):
    return dict(line.split(": ", 1) for line in text.splitlines())


@pytest.fixture
def write(tmp_path):
    def _write(text, name="input.txt"):
        path = tmp_path / name
        path.write_text(text)
        return path
    return _write


# -- the documented examples -------------------------------------------------------

def test_translate_running_schema(write):
    code, out, _ = call("translate", "--to", "ltl", write(RUNNING))
    assert code == 0
    assert fields(out)["formula"] == render_ltl(floor_translate(parse_schema(RUNNING)))
    assert fields(out)["formula"].startswith("p & G (lt_n -> p -> X p) & !G (eq_n -> p) & lt_n U G !lt_n")


def test_sat_running_schema(write):
    code, out, _ = call("sat", "--side", "sps", "--bound", 8, write(RUNNING))
    assert code == 1
    assert fields(out)["status"] == "UNSAT up to n=8"


def test_mc_three_state_holds():
    code, out, err = call("mc", "--ts", THREE_STATE, "--prop", "G (p | q)", "--bound", 8)
    assert code == 0
    assert fields(out)["status"] == "holds up to n=8"
    assert err == ""


# -- other subcommands ---------------------------------------------------------------

def test_mc_violation_and_x_warning():
    code, out, err = call("mc", "--ts", THREE_STATE, "--prop", "G q")
    assert code == 1
    got = fields(out)
    assert got["status"] == "violated" and got["path"].split()[-1] == "3"
    code, _, err = call("mc", "--ts", THREE_STATE, "--prop", "G (p -> X (p | q))")
    assert code == 0 and "warning" in err


def test_translate_to_schema(write):
    code, out, _ = call("translate", "--to", "sps", write("G F p"))
    assert code == 0 and fields(out)["sps"] == "yes"
    code, out, _ = call("translate", "--to", "sps", "--method", "direct", write("F p"))
    assert code == 0 and fields(out)["sps"] == "no"
    code, out, _ = call("translate", "--to", "sps", "--method", "finite", write("X p -> F p"))
    assert fields(out)["schema"] == "p[1] -> bigor i = 0 .. n . (p[i])"
    for flag in ("--invert-time", "--fg", "--inline-prop"):
        code, out, _ = call("translate", "--to", "sps", flag, write("p U q"))
        assert code == 0 and fields(out)["sps"] == "yes"


def test_translate_options_to_ltl(write):
    for flag in ("--nnf", "--no-sugar"):
        code, out, _ = call("translate", "--to", "ltl", flag, write(RUNNING))
        assert code == 0 and "formula" in fields(out)


def test_instantiate(write):
    code, out, _ = call("instantiate", "--n", 1, write(RUNNING))
    assert code == 0
    assert fields(out)["instance"] == "p[0] & (p[0] -> p[1]) & !p[1]"
    assert call("instantiate", "--n", -1, write(RUNNING))[0] == 2


def test_size(write):
    code, out, _ = call("size", write("p[n+5]"))
    got = fields(out)
    assert code == 0 and got["max_int"] == "5" and "ratio" in got
    code, out, _ = call("size", write("G p"))
    assert code == 0 and set(fields(out)) == {"input_size", "output_size", "ratio"}
    code, out, _ = call("size", "--side", "ltl", write("p"))
    assert fields(out)["input_size"] == "1"


def test_eval(write):
    lasso = write("prefix: {p} ; loop: {q}", "lasso.txt")
    assert call("eval", "--interp", lasso, "p & X G q")[:2] == (0, "value: true\n")
    assert call("eval", "--interp", lasso, "--at", 1, "p")[:2] == (1, "value: false\n")
    model = write("n=1; p: 0,1;", "model.txt")
    assert call("eval", "--interp", model, "bigand_incl i . (p[i])")[0] == 0
    assert call("eval", "--interp", model, "--formula-file", write(RUNNING))[0] == 1
    assert call("eval", "--interp", model, "--at", 1, "p[0]")[0] == 2


# -- round trips and errors ---------------------------------------------------------

def test_schema_witness_round_trip(write):
    for s in islice(sps_corpus(), 25):
        path = write(render_schema(s))
        code, out, _ = call("sat", "--side", "sps", "--bound", 3, path)
        if code == 0:
            witness = write(fields(out)["witness"], "witness.txt")
            assert call("eval", "--interp", witness, "--formula-file", path)[0] == 0


def test_lasso_witness_round_trip(write):
    for phi in islice(ltl_corpus(), 25):
        path = write(render_ltl(phi))
        code, out, _ = call("sat", "--side", "ltl", "--bound", 3, path)
        assert code in (0, 1)
        if code == 0:
            witness = write(fields(out)["witness"], "witness.txt")
            assert call("eval", "--interp", witness, "--formula-file", path)[0] == 0
        else:
            assert fields(out)["status"] == "UNSAT up to k+l=3"


def test_json_output(write):
    code, out, _ = call("--json", "sat", "--side", "ltl", write("G F p"))
    assert code == 0
    assert json.loads(out) == {"status": "SAT", "bound": 6, "witness": "prefix: ; loop: {p}"}


@pytest.mark.parametrize("argv", [
    ["translate", "--to", "ltl", "/nonexistent/file"],
    ["sat", "--side", "sps", "--bound", "-1", "x"],
    ["frobnicate"],
    ["sat", "--side", "both", "x"],
    ["mc", "--ts", str(THREE_STATE), "--prop", "F p"],
    ["mc", "--ts", str(THREE_STATE)],
])
def test_usage_and_input_errors(argv, capsys):
    code, _, _ = call(*argv)
    assert code == 2


def test_parse_error_reported(write):
    code, out, err = call("translate", "--to", "ltl", write("p[0] &"))
    assert code == 2 and out == "" and err.startswith("error: ")


def test_deterministic(write):
    path = write("G (p -> X q) & F !q")
    assert call("sat", "--side", "ltl", path) == call("sat", "--side", "ltl", path)


def test_module_entry_point(write):
    proc = subprocess.run(
        [sys.executable, "-m", "ltlschema", "sat", "--side", "sps", "-"],
        input=RUNNING, capture_output=True, text=True,
    )
    assert proc.returncode == 1
    assert "status: UNSAT up to n=8" in proc.stdout
