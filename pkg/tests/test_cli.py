import json

import pytest

from compib.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_field_info(capsys):
    code, out, _ = run(capsys, "field-info", "--a", "2")
    assert code == 0
    assert "2000" in out


def test_field_info_json(capsys, tmp_path):
    p = tmp_path / "fi.json"
    code, out, _ = run(capsys, "field-info", "--a", "2", "--json", str(p))
    assert code == 0
    data = json.loads(p.read_text())
    assert data["disc"] == 2000
    assert data["poly"] == [1, 2, -6, -2, 1]


def test_index_command(capsys):
    code, out, _ = run(capsys, "index", "--a", "2", "--coords", "0,1,0")
    assert code == 0
    assert out.strip().splitlines()[-1].endswith("1")


def test_index_json_stdout_suppresses_text(capsys):
    code, out, _ = run(capsys, "index", "--a", "2", "--coords", "4,2,-1",
                       "--json", "-")
    assert code == 0
    data = json.loads(out)
    assert data["index"] == 1
    assert data["coords"] == [4, 2, -1]


def test_composite_index(capsys):
    code, out, _ = run(capsys, "composite-index", "--a", "2", "--d", "7",
                       "--x", "0,1,0", "--y", "1,0,0,0", "--json", "-")
    assert code == 0
    data = json.loads(out)
    assert data["eq1"] == 1 and data["eq2"] == 1
    assert data["index"] == abs(data["F"]) == 33086464


def test_solve_json_deterministic(capsys):
    code, first, _ = run(capsys, "solve", "--a", "2", "--d", "7",
                         "--box", "8", "--json", "-")
    assert code == 0
    code, second, _ = run(capsys, "solve", "--a", "2", "--d", "7",
                          "--box", "8", "--json", "-")
    assert code == 0
    assert first == second
    data = json.loads(first)
    assert data["verdict"] == "NOT_MONOGENIC"
    # canonical serialization: reloading and re-dumping is byte identical
    assert json.dumps(data, indent=2, sort_keys=True) + "\n" == first


def test_solve_field_file(capsys, tmp_path):
    p = tmp_path / "octic.json"
    p.write_text(json.dumps({
        "poly": [1, -1, -4, 0, 1],
        "basis": [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
        "expected_disc": 1957,
    }))
    code, out, _ = run(capsys, "solve", "--field", str(p), "--d", "1",
                       "--box", "6", "--json", "-")
    assert code == 0
    data = json.loads(out)
    assert data["verdict"] == "MONOGENIC"
    assert ((0, 0, 0), (0, 1, 0, 0)) in {
        (tuple(g["x"]), tuple(g["y"])) for g in data["generators"]}


def test_verify_cq_small(capsys):
    code, out, _ = run(capsys, "verify-cq", "--a-max", "2", "--d-max", "6",
                       "--box", "6")
    assert code == 0
    assert "counterexamples: none" in out
    assert out.count("NOT_MONOGENIC") >= 4


def test_d3_search(capsys):
    code, out, _ = run(capsys, "d3-search", "--a", "1", "--box", "4",
                       "--json", "-")
    assert code == 0
    assert json.loads(out)["verdict"] == "INCONCLUSIVE"


def test_check_example5(capsys):
    code, out, _ = run(capsys, "check-example5")
    assert code == 0
    assert out.count("PASS") == 5 and "FAIL" not in out
    assert "980441344" in out


def test_exit_code_validation():
    assert main(["field-info", "--a", "3"]) == 3
    assert main(["solve", "--a", "2", "--d", "4", "--box", "5"]) == 3
    assert main(["solve", "--a", "2", "--d", "1", "--box", "5"]) == 3
    assert main(["index", "--a", "2", "--coords", "1,2"]) == 3


def test_exit_code_parse():
    with pytest.raises(SystemExit) as exc:
        main(["index", "--a", "2", "--coords", "1,x,3"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2


def test_field_file_errors(tmp_path):
    assert main(["field-info", "--field", str(tmp_path / "missing.json")]) == 3
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["field-info", "--field", str(bad)]) == 3


def test_timings_go_to_stderr(capsys, tmp_path):
    p = tmp_path / "cq.json"
    code, out, err = run(capsys, "verify-cq", "--a-max", "1", "--d-max", "2",
                         "--box", "5", "--timings", "--json", str(p))
    assert code == 0
    assert "cells in" in err
    # the JSON report itself carries no wall-clock data
    assert "cells in" not in p.read_text()
    rep = json.loads(p.read_text())
    assert all(r["ms"] is None for r in rep["rows"] if r["status"] == "OK")
