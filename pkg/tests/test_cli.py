import json
import subprocess
import sys

import pytest

from boxspline.cli import main
from boxspline.serialize import boxspline_to_json, dumps, loads


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


@pytest.fixture
def example_file(tmp_path):
    return write(tmp_path, "example.json", {"kind": "diophantine", "payload": {"matrix": [[1, 2], [2, 3]]}})


@pytest.fixture
def dm_file(tmp_path):
    return write(tmp_path, "dm.json", {"kind": "dm", "payload": {"t": 2, "n": 3, "matrix": [[1, 0, 1], [0, 1, 1]]}})


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_count_example(tmp_path, capsys, example_file):
    out_path = str(tmp_path / "out.json")
    code, _, _ = run(capsys, "count", "--input", example_file, "--output", out_path)
    assert code == 0
    data = json.loads(open(out_path).read())
    assert len(data["pieces"]) == 8
    ones = sorted(p["signs"] for p in data["pieces"] if p["quasipoly"]["table"])
    assert ones == ["++-+", "++-0", "++0+", "0000"]


def test_count_round_trip_is_byte_identical(tmp_path, capsys, example_file, dm_file):
    from boxspline.serialize import load_document
    for src in (example_file, dm_file):
        out_path = tmp_path / "art.json"
        assert run(capsys, "count", "--input", src, "--output", str(out_path))[0] == 0
        text = out_path.read_text()
        _, (F, prob) = load_document(loads(text))
        assert dumps(boxspline_to_json(F, prob)) == text


def test_count_to_stdout_is_deterministic(capsys, example_file):
    a = run(capsys, "count", "--input", example_file)[1]
    b = run(capsys, "count", "--input", example_file)[1]
    assert a == b and a.endswith("}\n")


def test_count_errors(tmp_path, capsys):
    zero = write(tmp_path, "z.json", {"kind": "diophantine", "payload": {"matrix": [[1, 0], [2, 0]]}})
    code, _, err = run(capsys, "count", "--input", zero)
    assert code == 3 and "zero column" in err
    np = write(tmp_path, "np.json", {"kind": "dm", "payload": {"matrix": [[1, -1]]}})
    code, _, err = run(capsys, "count", "--input", np)
    assert code == 3 and "pointedness condition violated" in err and "[1, 1]" in err
    inc = write(tmp_path, "g.json", {"kind": "growth", "payload": {
        "set": {"dim": 1, "lattice": "Z", "pieces": [{"offset": [1], "generators": [[-1]]}]}}})
    code, _, err = run(capsys, "count", "--input", inc)
    assert code == 3 and "orthant" in err
    bad = write(tmp_path, "bad.json", {"kind": "dm", "payload": {"matrix": "x"}})
    assert run(capsys, "count", "--input", bad)[0] == 2
    (tmp_path / "junk.json").write_text("{")
    assert run(capsys, "count", "--input", str(tmp_path / "junk.json"))[0] == 2
    assert run(capsys, "count", "--input", str(tmp_path / "missing.json"))[0] == 2


def test_eval(tmp_path, capsys, example_file, dm_file):
    art = str(tmp_path / "a.json")
    run(capsys, "count", "--input", example_file, "--output", art)
    assert run(capsys, "eval", "--input", art, "--point", "2,3")[:2] == (0, "1\n")
    assert run(capsys, "eval", "--input", art, "--point", "1,1")[:2] == (0, "0\n")
    assert run(capsys, "eval", "--input", art, "--point", "-1,1")[0] == 4
    assert run(capsys, "eval", "--input", art, "--point", "1,2,3")[0] == 4
    assert run(capsys, "eval", "--input", art, "--point", "1,x")[0] == 2
    dm_art = str(tmp_path / "d.json")
    run(capsys, "count", "--input", dm_file, "--output", dm_art)
    assert run(capsys, "eval", "--input", dm_art, "--point", "-3,2")[:2] == (0, "0\n")
    assert run(capsys, "eval", "--input", dm_art, "--point", "3,5")[:2] == (0, "4\n")


def test_verify_problem_files(capsys, example_file, dm_file):
    code, out, _ = run(capsys, "verify", "--input", example_file, "--bound", "40")
    report = json.loads(out)
    assert code == 0 and report["checked_points"] == 41 * 41 and report["mismatches"] == []
    code, out, _ = run(capsys, "verify", "--input", dm_file, "--bound", "12", "--jobs", "2")
    assert code == 0 and json.loads(out)["checked_points"] == 625


def test_verify_detects_corrupted_artifact(tmp_path, capsys, example_file):
    art = tmp_path / "a.json"
    run(capsys, "count", "--input", example_file, "--output", str(art))
    assert run(capsys, "verify", "--input", str(art), "--bound", "10")[0] == 0
    data = json.loads(art.read_text())
    piece = next(p for p in data["pieces"] if p["quasipoly"]["table"])
    piece["quasipoly"]["table"][0]["poly"][0]["coeff"] = "2/1"
    bad = write(tmp_path, "bad.json", data)
    code, out, _ = run(capsys, "verify", "--input", bad, "--bound", "10")
    report = json.loads(out)
    assert code == 1 and report["mismatches"]
    assert all(m["symbolic"] == "2/1" and m["oracle"] == "1/1" for m in report["mismatches"])


def test_verify_needs_a_problem(tmp_path, capsys, example_file):
    art = tmp_path / "a.json"
    run(capsys, "count", "--input", example_file, "--output", str(art))
    data = json.loads(art.read_text())
    del data["problem"]
    bare = write(tmp_path, "bare.json", data)
    assert run(capsys, "verify", "--input", bare, "--bound", "3")[0] == 2


def test_show(tmp_path, capsys, example_file):
    code, out, _ = run(capsys, "show", "--input", example_file)
    assert code == 0
    assert "8 regions" in out and "3*x1 - 2*x2 = 0" in out
    code, out, _ = run(capsys, "show", "--schema", "boxspline")
    assert code == 0 and json.loads(out)["required"] == ["arrangement", "pieces"]
    assert run(capsys, "show", "--schema", "nope")[0] == 2
    assert run(capsys, "show")[0] == 2


def test_usage_error_exits_2(capsys):
    assert run(capsys, "frobnicate")[0] == 2


def test_module_entry_point(example_file):
    proc = subprocess.run([sys.executable, "-m", "boxspline", "eval", "--input", example_file, "--point", "2,3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "1\n"
