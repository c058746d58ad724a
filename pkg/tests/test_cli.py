import json

import pytest

from dsrg.cli import run


def run_json(capsys, argv):
    code = run(argv)
    out = capsys.readouterr()
    return code, out


def test_construct_then_verify(tmp_path, capsys):
    path = tmp_path / "d1.txt"
    code, out = run_json(capsys, ["construct", "c2", "--n", "5", "--s", "2", "--l", "2", "--d", "1",
                                  "--variant", "d1", "--out", str(path)])
    assert code == 0
    built = json.loads(out.out)
    code, out = run_json(capsys, ["verify", str(path)])
    report = json.loads(out.out)
    assert code == 0
    assert report["verify"]["params"] == [10, 4, 2, 1, 2]
    assert report["certificate"] == built["certificate"]


def test_construct_to_stdout_routes_report_to_stderr(capsys):
    code, out = run_json(capsys, ["construct", "c1", "--mode", "b1", "--r", "3", "--q", "2"])
    assert code == 0
    assert out.out.startswith("12\n")
    assert json.loads(out.err)["verify"]["params"] == [12, 6, 4, 2, 4]


def test_enumerate_pipeline_classifies_seven(tmp_path, capsys, monkeypatch):
    code, out = run_json(capsys, ["construct", "c1", "--mode", "b1", "--r", "3", "--q", "2",
                                  "--pairing", "relaxed", "--enumerate"])
    assert code == 0
    stream = tmp_path / "all.txt"
    stream.write_text(out.out)
    code, out = run_json(capsys, ["classify", str(stream)])
    data = json.loads(out.out)
    assert code == 0 and data["total"] == 64 and data["class_count"] == 7


def test_all_zero_matrix_exits_two(tmp_path, capsys):
    path = tmp_path / "zero.txt"
    path.write_text("3\n000\n000\n000\n")
    code, out = run_json(capsys, ["verify", str(path)])
    assert code == 2
    assert json.loads(out.out)["verify"]["witness"]["kind"] == "degenerate"


@pytest.mark.parametrize("argv", [["verify"], ["construct", "c2", "--bogus"], ["verify", "/no/such/file"],
                                  ["construct", "c2", "--n", "5", "--s", "3", "--l", "2", "--d", "1"],
                                  ["nonsense"]])
def test_usage_errors_exit_one(argv, capsys):
    assert run(argv) == 1


def test_fixture_names(capsys):
    code, out = run_json(capsys, ["verify", "J9"])
    report = json.loads(out.out)
    assert code == 0 and report["aut_order"] == 1
    code, out = run_json(capsys, ["verify", "N6"])
    assert json.loads(out.out)["aut_name"] == "S4"


def test_scheme_command(capsys):
    code, out = run_json(capsys, ["scheme", "T4"])
    data = json.loads(out.out)
    assert code == 0
    assert data["aut_order"] == 20 and data["scheme"]["classes"] == 5


def test_orbits_command(capsys):
    code, out = run_json(capsys, ["orbits", "--n", "5", "--s", "2", "--l", "2"])
    data = json.loads(out.out)
    assert code == 0
    assert sorted(o["orbit_size"] for o in data["orbits"]) == sorted([15, 30, 60, 6, 60, 60, 12])


def test_catalog_is_deterministic(tmp_path, capsys):
    reports = []
    for i in range(2):
        path = tmp_path / f"cat{i}.json"
        assert run(["catalog", "--report", str(path)]) == 0
        data = json.loads(path.read_text())
        for entry in data:
            entry.pop("seconds")
        reports.append(data)
    capsys.readouterr()
    assert reports[0] == reports[1]
    assert [e["status"] for e in reports[0]].count("FAIL") == 0
