import json

import pytest

from main import run

def _run(capsys, *argv):
    status = run(list(argv))
    return status, json.loads(capsys.readouterr().out)

def _check(report, name):
    return next(check for check in report["checks"] if check["check"] == name)

def test_lyubashenko_validates(capsys):
    status, report = _run(capsys, "solution", "lyubashenko", "--m", "3", "--validate")
    assert status == 0
    assert report["command"] == "solution lyubashenko"
    assert report["exit_status"] == 0
    names = [check["check"] for check in report["checks"]]
    assert names == sorted(names)
    assert {"nondegenerate", "involutive", "braid"} <= set(names)
    assert all(check["pass"] for check in report["checks"])
    assert report["data"]["solution"]["size"] == 3

def test_chain_build(capsys):
    status, report = _run(capsys, "chain", "build", "--solution", "trivial:2", "--sites", "3", "--verify-commute", "--closed-forms")
    assert status == 0
    assert _check(report, "commuting")["pass"]
    assert report["data"]["chain"]["dim"] == 8
    assert report["inputs"]["sites"] == 3

def test_failed_check_exits_one(capsys):
    status, report = _run(capsys, "solution", "hom", "--solution", "lyubashenko:2", "--target", "trivial:2", "--map", "0,1")
    assert status == 1
    check = _check(report, "hom")
    assert not check["pass"]
    assert check["witness"]["elements"] is not None

def test_malformed_file_exits_two(capsys, fixtures_dir):
    status, report = _run(capsys, "solution", "validate", "--solution", f"file:{fixtures_dir / 'bad_shape.json'}")
    assert status == 2
    assert report["exit_status"] == 2
    assert "sigma" in report["detail"]

@pytest.mark.parametrize(
    "argv",
    [
        ["solution", "orbits", "--solution", "lyubashenko"],
        ["solution", "orbits", "--solution", "trivial:x"],
        ["solution", "orbits", "--solution", "moufang:3"],
        ["solution", "lyubashenko", "--m", "0"],
    ],
)
def test_bad_names_exit_two(capsys, argv):
    status, report = _run(capsys, *argv)
    assert status == 2
    assert report["detail"]

def test_cocycle_violation_exits_two(capsys):
    status, report = _run(capsys, "symmetry", "m-sym", "--solution", "lyubashenko:2", "--sites", "2", "--alpha", "1,2")
    assert status == 2
    assert "(x, y) = (0, 0)" in report["detail"]

def test_central_needs_odd_chain(capsys):
    status, report = _run(capsys, "symmetry", "central", "--brace", "scaled:4,2", "--a", "2", "--b", "1", "--c", "3", "--sites", "2")
    assert status == 2
    assert "N odd" in report["detail"]

def test_yangian(capsys):
    status, report = _run(capsys, "qalgebra", "yangian", "--n", "2", "--max-level", "1")
    assert status == 0
    assert _check(report, "yangian_match")["pass"]

def test_out_writes_the_report(capsys, tmp_path):
    path = tmp_path / "report.json"
    status = run(["solution", "mp-level", "--solution", "scaled:4,2", "--out", str(path)])
    assert status == 0
    assert capsys.readouterr().out == ""
    report = json.loads(path.read_text(encoding="utf-8"))
    assert report["data"]["level"] == 2
    assert "wall_time_s" in report["timing"]

def test_verify_all_on_a_small_corpus(capsys):
    status, report = _run(
        capsys,
        "verify-all",
        "--corpus", "trivial:2",
        "--corpus", "lyubashenko:2",
        "--max-sites", "2",
        "--max-level", "1",
        "--no-mutation",
    )
    assert report["command"] == "verify-all"
    assert set(report["data"]["entries"]) == {"lyubashenko:2", "trivial:2"}
    failed = [check["check"] for check in report["checks"] if not check["pass"]]
    assert failed == []
    assert status == 0

def test_short_sigma_file_exits_two(capsys, tmp_path):
    path = tmp_path / "short.json"
    path.write_text(json.dumps({"size": 3, "sigma": [[0, 1, 2]], "derive_tau_from": "involutivity"}))
    status, report = _run(capsys, "solution", "validate", "--solution", f"file:{path}")
    assert status == 2
    assert "rows" in report["detail"]
