"""End-to-end command line behaviour: formats, exit codes, determinism."""

import json
import shutil
import subprocess

import pytest

from toriclab.cli import main

from conftest import FIXTURES, fixture_path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize(
    "command,count",
    [("circuits", 3), ("graver", 3), ("ugb", 3), ("markov", 3)],
)
def test_set_commands_text(capsys, command, count):
    code, out, err = run(capsys, command, fixture_path("k4"))
    assert code == 0
    assert f"{count} elements" in out
    assert "e1*e2 - e3*e4" in out
    assert "[time]" in err


def test_set_command_json(capsys):
    code, out, err = run(capsys, "circuits", "--format", "json", fixture_path("c4"))
    assert code == 0
    assert err == ""
    report = json.loads(out)
    assert report["schema"] == 1
    assert report["command"] == "circuits"
    assert report["set"]["kind"] == "circuits"
    assert report["set"]["count"] == 1
    assert report["set"]["elements"][0]["text"] == "e1*e2 - e3*e4"
    assert report["input"]["digest"]


def test_json_output_is_byte_identical(capsys):
    first = run(capsys, "analyze", "--format", "json", fixture_path("domino"))
    second = run(capsys, "analyze", "--format", "json", fixture_path("domino"))
    assert first == second
    assert first[0] == 0


def test_analyze_text_report(capsys):
    code, out, _ = run(capsys, "analyze", fixture_path("tri_square_tri_adjacent"))
    assert code == 0
    assert "generalized_robust: no" in out
    assert "robust: no" in out
    assert "implications: ok" in out
    assert "minimal markov size: 2" in out
    assert "fails=M4" in out


def test_analyze_with_oracle_and_samples(capsys):
    code, out, _ = run(
        capsys,
        "analyze",
        "--format",
        "json",
        "--oracle",
        "--samples",
        "4",
        "--seed",
        "9",
        fixture_path("k4"),
    )
    assert code == 0
    report = json.loads(out)
    oracle = report["oracle"]
    assert oracle["box"] == 2
    assert oracle["graver_matches"] is True
    assert oracle["bounded_graver_count"] == 3
    g = oracle["groebner"]
    assert g["samples"] == 4 and g["seed"] == 9
    assert g["within_universal_groebner"] is True
    assert 1 <= len(g["distinct_elements"]) <= 3


def test_check_json(capsys):
    code, out, _ = run(capsys, "check", "--format", "json", fixture_path("bowtie"))
    assert code == 0
    report = json.loads(out)
    assert report["counts"] == {
        "circuits": 1,
        "graver": 1,
        "universal_groebner": 1,
        "universal_markov": 1,
        "indispensable": 1,
    }
    assert report["verdict"]["robust"] is True
    assert report["implications"]["ok"] is True


def test_matrix_command(capsys, tmp_path):
    rows = tmp_path / "rows.txt"
    rows.write_text(
        "# five coordinates, eight points\n"
        "1 0 1 0 0 1 1 0\n"
        "0 1 1 0 1 0 0 1\n"
        "0 1 0 1 1 0 1 0\n"
        "0 1 0 1 0 1 0 1\n"
        "1 1 1 1 1 1 1 1\n"
    )
    code, out, _ = run(capsys, "matrix", "--format", "json", str(rows))
    assert code == 0
    report = json.loads(out)
    assert len(report["analysis"]["graver"]) == 6
    assert report["observations"]["markov_equals_graver"] is True
    assert report["observations"]["indispensable_equals_markov"] is False
    assert report["observations"]["minimal_markov_size"] == 3

    wrapped = tmp_path / "rows.json"
    wrapped.write_text(json.dumps({"matrix": [[1, 1, 0, 0], [0, 0, 1, 1]]}))
    code, out, _ = run(capsys, "matrix", "--format", "json", str(wrapped))
    assert code == 0
    report = json.loads(out)
    assert [el["text"] for el in report["analysis"]["graver"]] == [
        "x3 - x4",
        "x1 - x2",
    ]


def test_matrix_samples_stay_inside_graver(capsys, tmp_path):
    rows = tmp_path / "m.txt"
    rows.write_text("1 1 0 0\n0 0 1 1\n1 0 1 0\n")
    code, out, _ = run(
        capsys, "matrix", "--format", "json", "--samples", "5", "--seed", "2", str(rows)
    )
    assert code == 0
    report = json.loads(out)
    assert report["groebner"]["within_bounded_graver"] is True


def test_matrix_negative_entry_exit_code(capsys, tmp_path):
    rows = tmp_path / "neg.txt"
    rows.write_text("1 -1\n0 1\n")
    code, _, err = run(capsys, "matrix", str(rows))
    assert code == 5
    assert "error" in err


def test_parse_failures_exit_two(capsys, tmp_path):
    code, _, err = run(capsys, "analyze", str(tmp_path / "missing.txt"))
    assert code == 2 and "error" in err

    loop = tmp_path / "loop.txt"
    loop.write_text("1 1\n")
    code, _, err = run(capsys, "graver", str(loop))
    assert code == 2 and "loop" in err

    garbage = tmp_path / "m.txt"
    garbage.write_text("1 1\n1 1 1\n")
    code, _, err = run(capsys, "matrix", str(garbage))
    assert code == 2


def test_scale_guard_exit_code_and_force(capsys, tmp_path):
    path = tmp_path / "long_path.txt"
    path.write_text("\n".join(f"{i} {i + 1}" for i in range(1, 22)))
    code, _, err = run(capsys, "markov", str(path))
    assert code == 3
    assert "error" in err

    code, out, _ = run(capsys, "markov", "--format", "json", "--force", str(path))
    assert code == 0
    assert json.loads(out)["set"]["count"] == 0


def test_suite_directory_with_expectations(capsys, tmp_path):
    shutil.copy(fixture_path("c4"), tmp_path / "square.txt")
    expect = tmp_path / "square.expect.json"
    expect.write_text(json.dumps({"robust": True, "counts": {"graver": 1}}))
    code, out, _ = run(capsys, "suite", "--format", "json", str(tmp_path))
    assert code == 0
    report = json.loads(out)
    assert report["ok"] is True
    assert report["instances"][0]["name"] == "square.txt"

    expect.write_text(json.dumps({"robust": False, "counts": {"graver": 7}}))
    code, out, _ = run(capsys, "suite", "--format", "json", str(tmp_path))
    assert code == 4
    report = json.loads(out)
    assert report["ok"] is False
    mismatch = report["instances"][0]["expect_mismatch"]
    assert mismatch["robust"] == {"expected": False, "actual": True}
    assert mismatch["counts.graver"] == {"expected": 7, "actual": 1}


def test_suite_over_bundled_fixtures(capsys):
    # the fixture root must stay sweepable: graphs only, matrices below it
    code, out, _ = run(capsys, "suite", "--format", "json", FIXTURES)
    assert code == 0
    report = json.loads(out)
    assert len(report["instances"]) == 10
    assert report["ok"] is True


def test_suite_random_corpus(capsys):
    code, out, _ = run(
        capsys, "suite", "--format", "json", "--count", "6", "--seed", "3"
    )
    assert code == 0
    report = json.loads(out)
    assert [r["name"] for r in report["instances"]] == [
        f"seed3-{i}" for i in range(6)
    ]
    assert all(r["implications_ok"] for r in report["instances"])


def test_suite_rejects_bad_paths(capsys, tmp_path):
    code, _, err = run(capsys, "suite", str(tmp_path / "nowhere"))
    assert code == 2 and "not a directory" in err

    empty = tmp_path / "empty"
    empty.mkdir()
    code, _, err = run(capsys, "suite", str(empty))
    assert code == 2 and "no graph files" in err


def test_thread_env_var(capsys, monkeypatch):
    args = ("suite", "--format", "json", "--count", "4", "--seed", "8")
    monkeypatch.delenv("TORIC_LAB_THREADS", raising=False)
    serial = run(capsys, *args)
    monkeypatch.setenv("TORIC_LAB_THREADS", "3")
    threaded = run(capsys, *args)
    assert serial == threaded

    monkeypatch.setenv("TORIC_LAB_THREADS", "zero")
    code, _, err = run(capsys, *args)
    assert code == 2 and "TORIC_LAB_THREADS" in err

    monkeypatch.setenv("TORIC_LAB_THREADS", "0")
    code, _, _ = run(capsys, *args)
    assert code == 2


def test_console_script_round_trip():
    proc = subprocess.run(
        ["toriclab", "check", "--format", "json", fixture_path("c4")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["verdict"]["robust"] is True
