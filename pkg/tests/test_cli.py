import csv
import io
import json
import subprocess
import sys

import pytest

from superchar.cli import main

C23 = ["--family", "C", "--n", "2", "--p", "3"]


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_table_csv(capsys):
    code, out, _ = run(["table", *C23, "--e", "1", "--format", "csv"], capsys)
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0][:3] == ["id", "degree", "norm"]
    assert rows[1][0] == "|K|"
    body = rows[2:]
    assert len(body) == 17
    assert body[0][3:] == ["1"] * 17
    assert sum(int(x) for x in rows[1][3:]) == 81


def test_table_json(capsys):
    code, out, _ = run(["table", "--family", "D", "--n", "2", "--p", "3", "--format", "json"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["family"] == "D" and data["n"] == 2 and data["p"] == 3 and data["e"] == 1
    assert len(data["basic_pairs"]) == 5
    assert len(data["values"]) == 5 and all(len(r) == 5 for r in data["values"])
    assert sum(data["sizes"]) == 9


def test_table_to_file_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["table", *C23, "--out", str(a)]) == 0
    assert main(["table", *C23, "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_even_prime_rejected(capsys):
    code, _, err = run(["table", "--family", "C", "--n", "2", "--p", "2", "--e", "1"], capsys)
    assert code == 2 and "p must be odd" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["info", "--family", "C", "--n", "2", "--p", "9"],
        ["info", "--family", "C", "--n", "0", "--p", "3"],
        ["info", "--family", "C", "--n", "2", "--p", "3", "--e", "0"],
        ["info", "--family", "C", "--n", "2", "--p", "3", "--e", "2", "--modulus", "2,0,1"],
        ["info", "--family", "C", "--n", "2", "--p", "3", "--e", "2", "--modulus", "1,x"],
        ["info", "--family", "C", "--n", "2", "--p", "3", "--e", "2", "--modulus", "1,0,2"],
        ["table", *C23[:4], "--p", "5", "--n", "4", "--max-stream-order", "1000"],
        ["verify", *C23, "--suite", "bogus"],
        ["verify", *C23, "--suite", ","],
    ],
)
def test_bad_input_exit_2(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 2 and err.startswith("error:")


@pytest.mark.parametrize("argv", [["table"], ["info", "--family", "A", "--n", "2", "--p", "3"], ["info", *C23[:2]]])
def test_argparse_errors_exit_2(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_verify_all_passes(capsys):
    code, out, _ = run(["verify", *C23, "--e", "1", "--suite", "all"], capsys)
    assert code == 0
    assert out.startswith("verify C2(q=3): pass")
    assert "partition: pass" in out


def test_verify_selected_suites(tmp_path, capsys):
    path = tmp_path / "report.json"
    code, _, err = run(["verify", *C23, "--suite", "partition,orthogonality", "--out", str(path)], capsys)
    assert code == 0
    report = json.loads(path.read_text())
    assert [s["suite"] for s in report["suites"]] == ["partition", "orthogonality"]
    for s in report["suites"]:
        assert {"suite", "instances", "passed", "failed"} <= set(s)
    assert "partition: pass" in err


def test_verify_bound_skip(capsys):
    argv = ["verify", "--family", "B", "--n", "3", "--p", "3", "--e", "1", "--suite", "values", "--max-group-order", "100"]
    code, out, err = run(argv, capsys)
    assert code == 0
    assert "skipped (bound)" in out
    assert "note: suite values skipped (bound)" in err


def test_verify_failure_exit_1(monkeypatch, capsys):
    import superchar.oracle as oracle

    def broken(self, rep):
        rep.checks.append(oracle.CheckResult("forced", 1, 1, {"note": "forced failure"}))

    monkeypatch.setattr(oracle.Verifier, "suite_gauss", broken)
    code, out, _ = run(["verify", *C23, "--suite", "gauss"], capsys)
    assert code == 1
    assert "fail" in out


def test_classify_examples(capsys):
    ident = "1 0 0 0;0 1 0 0;0 0 1 0;0 0 0 1"
    code, out, _ = run(["classify", *C23, "--matrix", ident], capsys)
    assert code == 0 and out.splitlines()[0] == "(∅)"
    assert "|K| = 1" in out
    code, out, _ = run(["classify", *C23, "--matrix", "1 0 0 2;0 1 0 0;0 0 1 0;0 0 0 1"], capsys)
    assert code == 0 and out.splitlines()[0] == "D={2e1}, phi={2e1: 2}"
    code, out, _ = run(["classify", *C23, "--coords", "2e1=2"], capsys)
    assert out.splitlines()[0] == "D={2e1}, phi={2e1: 2}"


def test_classify_file_formats(tmp_path, capsys):
    rows = [[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 2], [0, 0, 0, 1]]
    j = tmp_path / "z.json"
    j.write_text(json.dumps({"rows": rows}))
    t = tmp_path / "z.txt"
    t.write_text("\n".join(" ".join(map(str, r)) for r in rows) + "\n")
    c = tmp_path / "c.json"
    c.write_text(json.dumps({"e1-e2": 1}))
    outs = []
    for f in (j, t, c):
        code, out, _ = run(["classify", *C23, "--file", str(f)], capsys)
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1] == outs[2]
    assert outs[0].startswith("D={e1-e2}, phi={e1-e2: 1}")


@pytest.mark.parametrize(
    "matrix,needle",
    [
        ("1 0 0 0;1 1 0 0;0 0 1 0;0 0 0 1", "upper triangular"),
        ("1 1 0 0;0 1 0 0;0 0 1 0;0 0 0 1", "J"),
        ("1 0;0 1", "4 x 4"),
        ("1 0 0 7;0 1 0 0;0 0 1 0;0 0 0 1", "F_3"),
        ("a b", "integers"),
    ],
)
def test_classify_rejects(matrix, needle, capsys):
    code, _, err = run(["classify", *C23, "--matrix", matrix], capsys)
    assert code == 2 and needle in err


@pytest.mark.parametrize("coords", ["2e1", "e1=1", "2e1=5", "e1-e3=1"])
def test_classify_rejects_coords(coords, capsys):
    code, _, err = run(["classify", *C23, "--coords", coords], capsys)
    assert code == 2 and err.startswith("error:")


def test_classify_missing_file(tmp_path, capsys):
    code, _, err = run(["classify", *C23, "--file", str(tmp_path / "nope")], capsys)
    assert code == 2
    (tmp_path / "bad.json").write_text("[1, 2")
    code, _, err = run(["classify", *C23, "--file", str(tmp_path / "bad.json")], capsys)
    assert code == 2


@pytest.mark.parametrize(
    "family,expect",
    [("C", ["|U| = q^4 = 81", "basic pairs = 17", "m = 4"]), ("D", ["|U| = q^2 = 9", "basic pairs = 5"]), ("B", ["|U| = q^4 = 81", "m = 5"])],
)
def test_info(family, expect, capsys):
    code, out, _ = run(["info", "--family", family, "--n", "2", "--p", "3"], capsys)
    assert code == 0
    for line in expect:
        assert line in out.splitlines()
    assert "modulus (constant first): [0, 1]" in out


def test_module_entry_point(tmp_path):
    res = subprocess.run(
        [sys.executable, "-m", "superchar", "info", "--family", "C", "--n", "2", "--p", "3", "--e", "2"],
        capture_output=True,
        text=True,
    )
    assert res.returncode == 0
    assert "modulus (constant first): [1, 0, 1]" in res.stdout
    res = subprocess.run([sys.executable, "-m", "superchar", "info", "--family", "C", "--n", "2", "--p", "2"], capture_output=True, text=True)
    assert res.returncode == 2 and "p must be odd" in res.stderr and res.stdout == ""
