"""Command line, report rendering and the table-driven corpus."""

import json
import subprocess
import sys

import pytest

from univalens.cli import main
from univalens.corpus import load_corpus, run_entry
from univalens.report import AnalysisReport, dumps, format_table


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


# --- report rendering ---------------------------------------------------------------------


def test_float_and_complex_formatting():
    text = dumps({"x": 0.1, "z": 1 + 2j, "n": float("inf"), "k": 3})
    data = json.loads(text)
    assert data["x"] == 0.1 and data["z"] == [1.0, 2.0] and data["n"] == "inf" and data["k"] == 3
    assert "0.10000000000000001" in text  # 17 significant digits


def test_report_field_order():
    rep = AnalysisReport("x", {"a": 1}, {"b": 2}, hint="consistent with: holomorphic", tolerance=1e-9,
                         citations=["rule"])
    assert list(json.loads(dumps(rep))) == ["command", "inputs", "tolerance", "results", "hint", "rules"]


def test_format_table_alignment():
    lines = format_table(["a", "bb"], [["xxx", "y"]]).splitlines()
    assert len({len(line.rstrip()) for line in lines[:2]}) == 1


# --- subcommands and exit codes ------------------------------------------------------------


def test_classify_table(capsys):
    code, out, _ = run(["classify", "--field", "x*y*(2*x,-y)", "--format", "text"], capsys)
    assert code == 0
    rows = [line.split() for line in out.splitlines()[2:4]]
    assert rows[0] == ["FiniteRamification", "x=0", "1", "1", "-2"]
    assert rows[1] == ["FiniteRamification", "y=0", "1", "-2", "-1/2"]


def test_classify_json(capsys):
    code, out, _ = run(["classify", "--field", "x*y*(2*x,-y)"], capsys)
    data = json.loads(out)
    assert code == 0 and data["results"]["local_model"]["kind"] == "FiniteRamification"
    assert data["rules"]


def test_parse_error_exit_code(capsys):
    code, _, err = run(["classify", "--field", "x*y*(2*x,-y"], capsys)
    assert code == 2 and "position" in err and "^" in err


def test_numeric_failure_exit_code(capsys):
    code, out, err = run(["reduce", "--field", "(2*y,3*x^2)", "--max-depth", "1"], capsys)
    assert code == 3 and "max_depth" in err
    assert json.loads(out)["results"]["error"]


def test_bad_input_exit_code(capsys):
    code, _, _ = run(["monodromy", "--loops", "[]"], capsys)
    assert code == 2


def test_affine_commands(capsys):
    code, out, _ = run(["affine", "signature", "--indices", "2,3,6", "--genus", "0"], capsys)
    assert code == 0 and json.loads(out)["results"]["uniformizable"] is True
    code, out, _ = run(["affine", "univalence1d", "--field", "z^2"], capsys)
    assert code == 0 and json.loads(out)["results"]["verdict"]["status"] == "Maximal"
    code, out, _ = run(["affine", "defect", "--chart1", "z", "--chart2", "root:4"], capsys)
    assert json.loads(out)["results"]["index"] == "4"


def test_continue_writes_samples(tmp_path, capsys):
    csv = tmp_path / "s.csv"
    code, out, _ = run(["continue", "--field", "(x^2,0)", "--start", "1,0", "--to", "0.5",
                        "--samples", str(csv)], capsys)
    assert code == 0 and json.loads(out)["results"]["result"]["outcome"] == "Completed"
    assert csv.read_text().startswith("t_re,t_im")


def test_continue_escape(capsys):
    code, out, _ = run(["continue", "--field", "(x^2,0)", "--start", "1,0", "--to", "2"], capsys)
    assert code == 0 and json.loads(out)["results"]["result"]["outcome"] == "EscapedToPoleLocus"


def test_riccati_monodromy_from_files(tmp_path, capsys):
    eq = tmp_path / "eq.json"
    loops = tmp_path / "loops.json"
    eq.write_text(json.dumps({"a": "0", "b": "1/(3*t)", "c": "0"}))
    loops.write_text(json.dumps([{"kind": "circle", "center": [0, 0], "radius": 1}]))
    code, out, _ = run(["riccati", "monodromy", "--eq", str(eq), "--loops", str(loops)], capsys)
    data = json.loads(out)["results"]
    assert code == 0
    assert data["census"]["verdict"] == "ExactlyK(2)"
    assert data["monodromy"]["error_estimates"]


def test_riccati_fiber_and_forbid(capsys):
    code, out, _ = run(["riccati", "fiber", "--field", "(z, w/2)", "--format", "text"], capsys)
    assert code == 0 and out.startswith("Dicritical(1/2)")
    code, out, _ = run(["riccati", "forbid", "--fibers", "Nilpotent", "--transverse-zeros", "--ell-size", "3"],
                       capsys)
    assert json.loads(out)["hint"] == "consistent with: obstructed"


def test_census_command(capsys):
    code, out, _ = run(["census", "--maps", "[[[1,1],[0,1]],[[2,0],[0,1]]]", "--format", "text"], capsys)
    assert code == 0 and "ExactlyK(1)" in out
    code, out, _ = run(["census", "--exact", "--maps", "[[[1,0],[0,1]]]", "--format", "text"], capsys)
    assert "AllMaximal" in out


def test_verify_command(capsys):
    code, _, _ = run(["verify", "--field", "(y,-x)", "--variables", "x,y", "--solution", "sin(t); cos(t)",
                      "--times", "0.1;0.5+0.2*i;1"], capsys)
    assert code == 0
    code, _, _ = run(["verify", "--field", "(y,x)", "--variables", "x,y", "--solution", "sin(t); cos(t)",
                      "--times", "0.1;0.5"], capsys)
    assert code == 3


def test_examples_wittich(capsys):
    code, out, _ = run(["examples", "wittich"], capsys)
    res = json.loads(out)["results"]
    assert code == 0 and res["all_identity"] and res["census"]["verdict"] == "AllMaximal"


def test_examples_four_maximal(capsys):
    code, out, _ = run(["examples", "four-maximal"], capsys)
    res = json.loads(out)["results"]
    assert code == 0 and res["special"] == [1, 1, 1, 1] and res["generic"] == 2


def test_out_flag_and_plot(tmp_path, capsys):
    out = tmp_path / "r.json"
    png = tmp_path / "g.png"
    code, stdout, _ = run(["reduce", "--field", "(2*y,3*x^2)", "--out", str(out), "--plot", str(png)], capsys)
    assert code == 0 and stdout == "" and json.loads(out.read_text())["results"]["summary"]["n_blowups"] == 3
    assert png.stat().st_size > 0


@pytest.mark.parametrize("argv", [["examples", "wittich"], ["reduce", "--field", "(2*y,3*x^2)", "--emit-tree"],
                                  ["examples", "four-maximal"]])
def test_report_determinism(argv, capsys):
    _, first, _ = run(argv, capsys)
    _, second, _ = run(argv, capsys)
    assert first == second


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "univalens", "affine", "signature", "--indices", "2,3,7"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["results"]["uniformizable"] is False


# --- the corpus ----------------------------------------------------------------------------------


@pytest.mark.parametrize("entry", load_corpus(), ids=lambda e: e["name"])
def test_corpus_entry(entry):
    assert entry["provenance"].split(":")[0] in ("PAPER", "DERIVED", "TRIVIAL")
    result = run_entry(entry)
    assert result.passed, result.mismatches
    assert result.seconds < 60
