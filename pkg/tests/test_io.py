import io
import json

import pytest

from hstlab import cli, report
from hstlab.document import EXAMPLES, example_raw, load, load_example, parse_document, parse_text
from hstlab.errors import ParseError, UnknownExample
from hstlab.hst import full_report
from hstlab.matrix import Matrix
from hstlab.superalgebra import from_terms


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def r8_file(tmp_path):
    path = tmp_path / "r8.json"
    path.write_text(json.dumps(example_raw("r8")))
    return path


def write(tmp_path, raw, name="doc.json"):
    path = tmp_path / name
    path.write_text(json.dumps(raw))
    return path


# --- documents -----------------------------------------------------------------


def test_examples_load():
    for name in EXAMPLES:
        doc = load_example(name)
        assert doc.inp.n == 8 and doc.suite == "full" and doc.strict


def test_unknown_example():
    with pytest.raises(UnknownExample):
        load_example("nope")


def test_document_defaults():
    raw = example_raw("s3t5")
    del raw["options"], raw["eps"]
    doc = parse_document(raw)
    assert doc.suite == "basic" and doc.strict and doc.inp.eps == (-1, -1, -1)


@pytest.mark.parametrize(
    "mutate, fragment",
    [
        (lambda r: r["algebra"]["brackets"].append([2, 0, 4, "1"]), "duplicate"),
        (lambda r: r["algebra"]["brackets"].append([0, 9, 1, "1"]), "out of range"),
        (lambda r: r["algebra"]["brackets"].append([0, 1, 2, "x"]), "bracket entry"),
        (lambda r: r.update(eps=[1, 2, 1]), "eps"),
        (lambda r: r.update(field={"d": 4}), "square-free"),
        (lambda r: r["forms"].pop(), "three"),
        (lambda r: r["forms"][0][0].pop(), "8x8"),
        (lambda r: r["options"].update(suite="huge"), "suite"),
        (lambda r: r.pop("algebra"), "algebra"),
        (lambda r: r["algebra"].update(labels=["A"] * 8), "duplicates"),
    ],
)
def test_document_errors(mutate, fragment):
    raw = example_raw("r8")
    mutate(raw)
    with pytest.raises(ParseError) as info:
        parse_document(raw)
    assert fragment in str(info.value)


def test_json_errors_have_line_and_column():
    with pytest.raises(ParseError) as info:
        parse_text('{"a": [1,\n   }')
    assert info.value.line == 2 and info.value.column == 4


def test_document_round_trip(tmp_path):
    raw = example_raw("su3")
    doc = load(write(tmp_path, raw))
    assert doc.inp.omegas == load_example("su3").inp.omegas
    assert doc.L.structure_list() == load_example("su3").L.structure_list()


# --- report --------------------------------------------------------------------


@pytest.mark.parametrize("name", EXAMPLES)
def test_report_round_trip(name):
    doc = load_example(name)
    rep = full_report(doc.inp, suite="full")
    data = json.loads(json.dumps(report.to_dict(rep, 0.5)))
    labels = data["labels"]
    assert data["verdict"] == "hst" and data["timing_seconds"] == 0.5
    for i in range(3):
        assert Matrix.from_strings(data["N"][i]) == rep.Ns[i]
        assert from_terms(8, data["d_omega"][i], labels) == rep.domegas[i]
        assert from_terms(8, data["pullbacks"][i], labels) == rep.pullbacks[i]
    assert from_terms(8, data["H"], labels) == rep.H
    assert from_terms(8, data["psi"], labels) == rep.contravariant.psi
    assert Matrix.from_strings(data["g"]) == rep.metric.g
    assert Matrix.from_strings(data["g_inv"]) == rep.metric.g_inv
    assert all(v is True or all(v) for v in data["suite"].values())
    assert data["courant"]["theta_S_deformation"] == [True, True, True]
    assert data["witnesses"] == []


def test_report_witnesses():
    from transforms import corrupt_eps

    rep = full_report(corrupt_eps(load_example("r8").inp, 1))
    data = report.to_dict(rep)
    assert data["verdict"] == "not-hst" and data["suite"] is None
    kinds = {w["kind"] for w in data["witnesses"]}
    assert kinds == {"N_squared", "pullback"}
    text = report.to_text(rep, "x")
    assert "witness: N_squared (index 2)" in text


# --- command line ----------------------------------------------------------------


def test_cli_example_passes():
    code, out, _ = run("example", "s3t5")
    assert code == 0
    assert "verdict hst" in out and "g = id" in out and "dual_hst: pass" in out


def test_cli_check_writes_json(r8_file, tmp_path):
    dest = tmp_path / "out.json"
    code, out, _ = run("check", str(r8_file), "--json", str(dest), "--suite", "basic")
    assert code == 0 and "g = -id" in out
    data = json.loads(dest.read_text())
    assert data["verdict"] == "hst" and "dual_hst" not in data["suite"]


def test_cli_json_to_stdout(r8_file):
    code, out, _ = run("check", str(r8_file), "--json", "-")
    assert code == 0 and json.loads(out)["verdict"] == "hst"


def test_cli_failing_input(tmp_path):
    raw = example_raw("su3")
    raw["eps"] = [-1, 1, -1]
    code, out, _ = run("check", str(write(tmp_path, raw)))
    assert code == 1 and "not-hst" in out and "witness:" in out


def test_cli_jacobi(tmp_path, r8_file):
    assert run("jacobi", str(r8_file))[0] == 0
    raw = example_raw("s3t5")
    raw["algebra"]["brackets"].append([0, 4, 5, "1"])
    path = write(tmp_path, raw)
    code, out, _ = run("jacobi", str(path))
    assert code == 1 and "Jacobi identity fails" in out
    code, _, err = run("check", str(path))
    assert code == 2 and "Jacobi" in err
    code, out, _ = run("check", str(path), "--lab")
    assert code == 1 and "Jacobi identity: FAIL" in out


def test_cli_degenerate_form(tmp_path):
    raw = example_raw("r8")
    raw["forms"][1] = [["0"] * 8 for _ in range(8)]
    code, _, err = run("check", str(write(tmp_path, raw)))
    assert code == 2 and "degenerate form (form 2)" in err and "kernel vector" in err


@pytest.mark.parametrize(
    "argv",
    [("example", "nope"), ("check", "/does/not/exist.json"), ("jacobi", "/does/not/exist.json"), ()],
)
def test_cli_input_errors(argv, capsys):
    assert run(*argv)[0] == 2


def test_cli_parse_error(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{ nope")
    code, _, err = run("check", str(path))
    assert code == 2 and "line 1" in err


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run([sys.executable, "-m", "hstlab", "example", "r8"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("r8: verdict hst")
