import csv
import json
import os

import pytest

from evenfarey.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_enumerate(capsys):
    code, out = run(capsys, "enumerate", "--q", "6", "--subset", "even")
    assert code == 0
    rows = out.strip().splitlines()
    assert rows[0] == "a,q"
    assert rows[1:] == ["1,6", "1,4", "1,2", "3,4", "5,6"]
    code, out = run(capsys, "enumerate", "--q", "1", "--subset", "even")
    assert code == 0 and out.strip() == "a,q"
    assert main(["enumerate", "--q", "0"]) == 2
    assert main(["enumerate", "--q", "5", "--interval", "3/4,1/4"]) == 2
    assert main(["enumerate"]) == 2


def test_enumerate_json_interval(capsys):
    code, out = run(capsys, "enumerate", "--q", "7", "--interval", "1/4,1/2", "--format", "json")
    assert code == 0
    assert json.loads(out) == ["1/4", "2/7", "1/3", "2/5", "3/7", "1/2"]


def test_pairs_csv(tmp_path):
    path = tmp_path / "pairs.csv"
    assert main(["pairs", "--q", "6", "--out", str(path)]) == 0
    rows = list(csv.reader(path.open()))
    assert rows[0] == ["Q", "q_prev", "q_next", "r", "a_prev", "a_next"]
    assert rows[1:] == [
        ["6", "6", "4", "1", "1", "1"],
        ["6", "4", "2", "2", "1", "1"],
        ["6", "2", "4", "2", "1", "3"],
        ["6", "4", "6", "1", "3", "5"],
    ]


def test_corollary2(capsys):
    code, out = run(capsys, "corollary2", "--q", "6")
    assert code == 0
    assert out.splitlines()[0] == "fraction 0.5 (1/2)"
    code, out = run(capsys, "corollary2", "--q", "2000", "--format", "json")
    data = json.loads(out)
    assert data["target"] == "1/6"
    assert float(data["gap"]) < 0.01


def test_types(capsys):
    code, out = run(capsys, "types", "--q", "1000")
    data = json.loads(out)
    assert code == 0
    for row in data["types"]:
        assert abs(row["share"] - row["predicted"]) < 0.02
    assert sum(r["count"] for r in data["types"]) + data["longer"] == data["total_pairs"]


def test_density_eval(capsys):
    code, out = run(capsys, "density", "eval", "--point", "0/1,1/1")
    assert code == 0 and out.splitlines()[0] == "3/16"
    code, out = run(capsys, "density", "eval", "--point", "1/1,1/1")
    assert out.splitlines()[0] == "inf"
    code, out = run(capsys, "density", "eval", "--point", "1/3,1/3", "--format", "json")
    data = json.loads(out)
    assert data["total"] == "3/8"
    assert data["decimal"] == "0.375"
    assert main(["density", "eval", "--point", "2,0"]) == 2
    assert main(["density", "eval", "--point", "abc"]) == 2


def test_density_grid(tmp_path):
    path = tmp_path / "grid.csv"
    assert main(["density", "grid", "--n", "9", "--out", str(path), "--threads", "2"]) == 0
    rows = list(csv.reader(path.open()))
    assert rows[0] == ["u", "v", "g"]
    assert len(rows) == 1 + 81
    assert rows[-1] == ["1", "1", "inf"]
    assert main(["density", "grid", "--n", "1"]) == 2


def test_grid_is_deterministic(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    main(["density", "grid", "--n", "33", "--out", str(a), "--threads", "1"])
    main(["density", "grid", "--n", "33", "--out", str(b), "--threads", "4"])
    assert a.read_bytes() == b.read_bytes()


def test_regions(capsys):
    code, out = run(capsys, "regions", "--level", "4")
    data = json.loads(out)
    assert code == 0
    assert {tuple(c["tuple"]) for c in data} == {(1, 2, 2, 3), (3, 2, 2, 1), (1, 2, 4, 1), (1, 4, 2, 1)}
    tri = next(c for c in data if c["tuple"] == [1, 2, 4, 1])
    assert sorted(tri["vertices"]) == sorted(["1/5,4/5", "1/3,1/1", "2/7,1/1"])


def test_verify(capsys):
    code, out = run(capsys, "verify", "--max-param", "15", "--max-level", "8",
                    "--cross-check-density", "--points", "30", "--threads", "1")
    assert code == 0
    assert out.strip().endswith("0 failed")
    assert main(["verify", "--max-param", "3"]) == 2


def test_io_error_leaves_no_file(tmp_path):
    missing = tmp_path / "nope" / "out.csv"
    assert main(["enumerate", "--q", "5", "--out", str(missing)]) == 3
    assert not missing.exists()
    assert os.listdir(tmp_path) == []


def test_threads_env(monkeypatch, tmp_path):
    monkeypatch.setenv("FAREY_THREADS", "zero")
    assert main(["density", "grid", "--n", "4", "--out", str(tmp_path / "g.csv")]) == 2
    monkeypatch.setenv("FAREY_THREADS", "2")
    assert main(["density", "grid", "--n", "4", "--out", str(tmp_path / "g.csv")]) == 0
