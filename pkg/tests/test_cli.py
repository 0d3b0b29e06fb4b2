import json

import pytest

from torcfg.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_euler_orbit(capsys):
    code, out, _ = run(capsys, "euler", "orbit", "--builtin", "simplex:2", "--d", "1", "--k", "2")
    assert code == 0
    assert json.loads(out) == {"chi": "-6"}


def test_euler_moment_angle_needs_flag(capsys):
    code, _, err = run(capsys, "euler", "moment-angle", "--builtin", "simplex:2", "--d", "1", "--k", "2")
    assert code == 2 and "small cover" in err
    code, out, _ = run(capsys, "euler", "moment-angle", "--builtin", "simplex:2", "--d", "1", "--k", "2",
                       "--assume-small-cover")
    assert json.loads(out) == {"chi": "-24"}


def test_euler_classical(capsys):
    code, out, _ = run(capsys, "euler", "classical", "--chi", "5", "--n", "2", "--k", "2")
    data = json.loads(out)
    assert code == 0 and data["chi"] == "20" and data["match"] is True


def test_coeff_verify(capsys):
    code, out, _ = run(capsys, "coeff", "--k", "5", "--verify")
    rows = json.loads(out)
    assert code == 0 and len(rows) == 7
    assert all(r["match"] for r in rows)
    assert rows[0]["partition"] == ["5"]


def test_hvector_table(capsys):
    code, out, _ = run(capsys, "--format", "table", "hvector", "--builtin", "ngon:5")
    assert code == 0 and out.splitlines()[0].split() == ["i", "f_(i-1)", "h_i"]


def test_complex_and_homology_roundtrip(capsys, tmp_path):
    code, out, _ = run(capsys, "complex", "lpm", "--m", "6")
    assert code == 0
    data = json.loads(out)
    assert data["f_vector"] == ["18", "42", "24"]
    path = tmp_path / "l6.json"
    path.write_text(out)
    code, out, _ = run(capsys, "homology", str(path))
    assert [r["betti"] for r in json.loads(out)] == ["1", "1", "0"]


def test_polytope_file(capsys, tmp_path):
    path = tmp_path / "sq.json"
    path.write_text(json.dumps({"dim": 2, "vertices": ["a", "b", "c", "d"],
                                "facets": [["a", "b"], ["b", "c"], ["c", "d"], ["d", "a"]]}))
    code, out, _ = run(capsys, "hvector", "--polytope", str(path))
    assert json.loads(out)["h"] == ["1", "2", "1"]


def test_ss_polygon(capsys):
    code, out, _ = run(capsys, "ss", "polygon", "--m", "4", "--d", "1", "--coeff", "z")
    data = json.loads(out)
    assert code == 0 and data["converged"] is True
    assert data["collapse_page"] == "2"
    assert [r["betti"] for r in data["total"]] == ["1", "9", "4"]
    assert data["pages"]["2"]["0,1"] == "8"


def test_ss_simplex(capsys):
    code, out, _ = run(capsys, "ss", "simplex", "--n", "3", "--d", "1")
    data = json.loads(out)
    assert code == 0 and [r["betti"] for r in data["total"]] == ["1", "2", "21"]


@pytest.mark.parametrize("argv", [["reproduce", "prop-b1", "--m-max", "5"], ["reproduce", "prop-b2", "--n-max", "3",
                                  "--n-max-d2", "3"], ["reproduce", "prop-hom", "--n-max", "4"],
                                  ["reproduce", "thm15", "--m-max", "4", "--n-max", "3"],
                                  ["reproduce", "lemma-annulus", "--m-max", "8"]])
def test_reproduce(capsys, argv):
    code, out, _ = run(capsys, *argv)
    data = json.loads(out)
    assert code == 0 and data["passed"] is True
    assert all(r["verdict"] == "PASS" for r in data["rows"])


def test_output_file_and_determinism(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert main(["--out", str(path), "complex", "kpm", "--m", "6"]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_usage_errors(capsys):
    assert run(capsys, "complex", "kij", "--n", "3")[0] == 2
    assert run(capsys, "euler", "orbit", "--k", "2")[0] == 2
    assert run(capsys, "nonsense")[0] == 2
    assert run(capsys, "complex", "kij", "--n", "3", "--i", "3", "--j", "3")[0] == 2
