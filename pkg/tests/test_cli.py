import json
import subprocess
import sys

import pytest

from qkm import catalog, datafile
from qkm.cli import run

SMALL = ["q3", "takiff-sl3-T", "a22+", "he2", "sl11", "affine-a2"]


def test_build_q3_table():
    status, out, err = run(["build", "--catalog", "q3", "--height", "3", "--format", "table"])
    assert status == 0 and not err
    rows = [l for l in out.splitlines() if l.startswith("root ")]
    assert len(rows) == 6 and all(l.endswith("sdim (1|1)") for l in rows)


def test_build_json_lines():
    status, out, _ = run(["build", "--catalog", "q3", "--height", "2", "--format", "json-lines"])
    recs = [json.loads(l) for l in out.splitlines()]
    assert status == 0 and len(recs) == 6 and all(r["sdim"] == [1, 1] for r in recs)


def test_verify_serre_q4():
    status, out, _ = run(["verify", "serre", "--catalog", "q4", "--height", "4"])
    assert status == 0 and out.startswith("serre: ok")


def test_dynkin_a22():
    status, out, _ = run(["dynkin", "--catalog", "a22+"])
    assert status == 0
    assert out.splitlines()[0] == "0:<> 1:<> ; 0-1 (-2, -2)"


def test_classify_and_growth():
    status, out, _ = run(["classify", "--catalog", "takiff-sl3-T"])
    assert status == 0 and "completely Y-coupled" in out and "root 1: Tak(sl(2))" in out
    status, out, _ = run(["growth", "--catalog", "xc1", "--height", "8"])
    assert status == 0 and "tag: bounded" in out


def test_roots_and_compare():
    status, out, _ = run(["roots", "--catalog", "q3", "--height", "2"])
    assert status == 0 and len(out.splitlines()) == 7
    status, out, _ = run(["compare", "--catalog", "q3", "--height", "2"])
    assert status == 0 and out.startswith("oracle: ok")


def test_catalog_list():
    status, out, _ = run(["catalog", "list"])
    assert status == 0 and len(out.splitlines()) == len(catalog.names())


@pytest.mark.parametrize("name", SMALL)
def test_round_trip_byte_identical(name, tmp_path):
    path = tmp_path / f"{name}.datum"
    assert run(["catalog", "emit", name, "--out", str(path)])[0] == 0
    for fmt in ("table", "json-lines"):
        a = run(["build", "--datum", str(path), "--height", "3", "--format", fmt])
        b = run(["build", "--catalog", name, "--height", "3", "--format", fmt])
        assert a[0] == b[0] == 0 and a[1] == b[1]


@pytest.mark.parametrize("name", catalog.names())
def test_datafile_round_trip(name):
    text = datafile.dumps(catalog.get(name).datum)
    assert datafile.dumps(datafile.loads(text)) == text


def test_out_flag(tmp_path):
    path = tmp_path / "report.txt"
    status, out, _ = run(["build", "--catalog", "q3", "--height", "2", "--out", str(path)])
    assert status == 0 and out == "" and path.read_text().startswith("# table q3")


def _emit(tmp_path, name="q3"):
    path = tmp_path / "d.datum"
    path.write_text(datafile.dumps(catalog.get(name).datum))
    return path


def _mutate(path, old, new):
    text = path.read_text()
    assert old in text
    path.write_text(text.replace(old, new, 1))


# exit code contract on faults

@pytest.mark.parametrize("argv", [
    ["build", "--catalog", "nope", "--height", "2"],
    ["build", "--height", "2"],
    ["build", "--catalog", "q3", "--datum", "x", "--height", "2"],
    ["build", "--catalog", "q3", "--height", "0"],
    ["build", "--catalog", "q3"],
    ["build", "--datum", "/nonexistent/file", "--height", "2"],
    ["verify", "oracle", "--catalog", "xc1", "--height", "2"],
    ["verify", "coupling", "--catalog", "he3"],
    ["frobnicate"],
    ["catalog", "emit"],
])
def test_input_errors_exit_2(argv):
    status, _, err = run(argv)
    assert status == 2


@pytest.mark.parametrize("old, new, where", [
    ("ALGEBRA", "ALGEBRAS", "line 3"),
    ("A11 = 2", "A11 = 2//", "bad scalar"),
    ("parities: 0 1", "parities: 0 2", "parities"),
    ("(0,1) = 1", "(0,1) 1", "expected"),
    ("alpha 2:", "alpha 3:", "numbered"),
    ("MODULE -2", "MODULE -7", "undeclared"),
    ("action B11: (0,1)", "action B99: (0,1)", "unknown odd"),
])
def test_malformed_datum_exit_2_with_line(tmp_path, old, new, where):
    path = _emit(tmp_path)
    _mutate(path, old, new)
    status, _, err = run(["build", "--datum", str(path), "--height", "2"])
    assert status == 2 and where in err


def test_invalid_datum_exit_2(tmp_path):
    # a pairing that is not equivariant fails validation
    path = _emit(tmp_path)
    _mutate(path, "(1,1): A11 = 1; A22 = 1", "(1,1): A11 = 1; A22 = 2")
    status, _, err = run(["build", "--datum", str(path), "--height", "2"])
    assert status == 2 and "validation" in err


def test_verification_failure_exit_1():
    # xc2 is not integrable, and its Serre check reports a witness
    status, out, _ = run(["verify", "serre", "--catalog", "xc2", "--height", "4"])
    assert status == 1 and "serre" in out and "FAILED" in out


def test_structure_failure_exit_1(monkeypatch):
    from qkm import engine
    real = engine.build

    def broken(d, N, check=True):
        t = real(d, N, check)
        engine.corrupt(t)
        return t

    monkeypatch.setattr(engine, "build", broken)
    status, out, _ = run(["verify", "structure", "--catalog", "q3", "--height", "3"])
    assert status == 1 and "FAILED" in out


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "qkm", "dynkin", "--catalog", "q4"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.startswith("0:<> 1:<> 2:<>")
    r = subprocess.run([sys.executable, "-m", "qkm", "build", "--catalog", "zz", "--height", "2"],
                       capture_output=True, text=True)
    assert r.returncode == 2 and "unknown catalog entry" in r.stderr
