import json

import pytest

from perindex.cli import main
from perindex.cochain import boundary_of_simplex, save_complex


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    assert code == 0, err
    return json.loads(out)


@pytest.fixture
def sphere_file(tmp_path):
    p = tmp_path / "s3.json"
    save_complex(boundary_of_simplex(4), p)
    return str(p)


def test_cohomology_sphere(capsys, sphere_file):
    rep = run_json(capsys, "cohomology", "--complex", sphere_file, "--coeff", "z", "--degrees", "0..3")
    assert [c["group"] for c in rep["results"]["cohomology"]] == ["Z", "0", "0", "Z"]
    assert rep["provenance"]["groups"] == "exact"


def test_cohomology_lens(capsys):
    rep = run_json(capsys, "cohomology", "--complex", "builtin:lens:5", "--degrees", "2")
    assert rep["results"]["cohomology"][0]["invariant_factors"] == [5]


def test_parse_errors(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"facets": [[0, 1]')
    code, out, err = run(capsys, "cohomology", "--complex", str(bad))
    assert code == 2 and "malformed" in err and out == ""
    assert run(capsys, "cohomology", "--complex", str(tmp_path / "missing.json"))[0] == 2
    assert run(capsys, "cohomology", "--complex", "builtin:lens:5", "--coeff", "q")[0] == 2
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys, "period-vector", "--model", "kn")[0] == 2


def test_invariant_violation(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"facets": [[0, 1, 1]]}')
    code, out, err = run(capsys, "cohomology", "--complex", str(bad))
    assert code == 3 and "[0, 1, 1]" in err and out == ""


def test_period_vector_models(capsys):
    rep = run_json(capsys, "period-vector", "--model", "kn", "--n", "2", "--dim", "8")
    assert rep["results"]["vector"] == [2, 4, 2] and rep["results"]["index"] == 16
    assert rep["results"]["tpic"] == "violated"
    assert rep["provenance"]["vector"] == ["exact"] * 3
    rep = run_json(capsys, "period-vector", "--model", "kn", "--n", "5", "--dim", "6")
    assert rep["results"]["vector"] == [5, 5] and rep["results"]["index"] == 25
    # the entries for 4 | n differ from the published triple; see the README
    rep = run_json(capsys, "period-vector", "--model", "kn", "--n", "4", "--dim", "8")
    assert rep["results"]["vector"] == [4, 8, 2] and rep["results"]["index"] == 64


def test_period_vector_complex(capsys):
    code, out, _ = run(capsys, "period-vector", "--complex", "builtin:lens:3", "--alpha", "2:z:1")
    assert code == 2
    rep = run_json(capsys, "period-vector", "--complex", "builtin:S3", "--alpha", "3:z:0")
    assert rep["results"]["vector"] == [1]
    code, _, err = run(capsys, "period-vector", "--complex", "builtin:S3", "--alpha", "3:z:e1")
    assert code == 4 and "infinite order" in err


def test_bounds(capsys):
    assert run_json(capsys, "bounds", "--n", "6", "--dim", "8", "--kind", "manifold")["results"]["bound"] == 432
    assert run_json(capsys, "bounds", "--n", "4", "--dim", "8", "--kind", "manifold")["results"]["bound"] == 64
    rep = run_json(capsys, "bounds", "--n", "7", "--dim", "8", "--kind", "complex")
    assert rep["results"]["bound"] == 343 and rep["provenance"]["bound"] == "theorem-bound"
    code, out, err = run(capsys, "bounds", "--n", "3", "--dim", "12")
    assert code == 5 and out == "" and "dimension 12" in err


def test_linking(capsys):
    rep = run_json(capsys, "linking", "--complex", "builtin:lens:5", "--degree", "2")
    (row,) = rep["results"]["matrix"]
    assert row[0].endswith("/5") and rep["results"]["perfect"]
    rep = run_json(capsys, "linking", "--complex", "builtin:S3", "--degree", "2")
    assert rep["results"]["matrix"] == [] and rep["results"]["perfect"]
    code, _, err = run(capsys, "linking", "--complex", "builtin:RP4", "--degree", "2")
    assert code == 3 and "orientable" in err


def test_trilinear(capsys, tmp_path):
    zero = tmp_path / "z.json"
    zero.write_text(json.dumps({"dim": 2, "entries": []}))
    rep = run_json(capsys, "trilinear", "--form", str(zero), "--witness")
    r = rep["results"]
    assert r["radical_is_all"] and r["gamma"] == [0, 0] and r["witness"]["u"] == [0, 0]
    cube = tmp_path / "c.json"
    cube.write_text(json.dumps({"dim": 1, "entries": [[0, 0, 0, 1]]}))
    w = run_json(capsys, "trilinear", "--form", str(cube), "--witness")["results"]["witness"]
    assert (w["u"], w["v"], w["verified"]) == ([1], [1], True)
    for seed in range(5):
        w = run_json(capsys, "trilinear", "--random", "4", "--seed", str(seed), "--witness")["results"]["witness"]
        assert w["verified"]
    bad = tmp_path / "b.json"
    bad.write_text(json.dumps({"dim": 1, "entries": [[0, 0, 0, 7]]}))
    assert run(capsys, "trilinear", "--form", str(bad))[0] == 2


def test_admissible(capsys):
    assert run_json(capsys, "admissible", "--vector", "2,2,4")["results"]["status"] == "rejected"
    r = run_json(capsys, "admissible", "--vector", "2,4,2", "--n", "2")["results"]
    assert r["status"] == "admissible" and r["registry"]["properties"]["tpic_violating"]
    assert run_json(capsys, "admissible", "--vector", "3,3,9")["results"]["status"] == "admissible"
    assert run(capsys, "admissible", "--vector", "2,x")[0] == 2


def test_json_is_deterministic(capsys):
    argv = ["period-vector", "--model", "kn", "--n", "6", "--dim", "8"]
    first = run_json(capsys, *argv)
    again = run_json(capsys, *first["argv"])
    for key in ("results", "provenance", "inputs_digest", "command"):
        assert first[key] == again[key]


def test_build_round_trip(capsys, tmp_path):
    out = tmp_path / "l.json"
    assert run(capsys, "build", "lens", "3", "-o", str(out))[0] == 0
    rep = run_json(capsys, "cohomology", "--complex", str(out), "--degrees", "2")
    assert rep["results"]["cohomology"][0]["group"] == "Z/3"
    prod = tmp_path / "p.json"
    assert run(capsys, "build", "product", str(out), "builtin:sphere:1", "-o", str(prod))[0] == 0
    susp = tmp_path / "s.json"
    assert run(capsys, "build", "suspension", "builtin:RP2", "-o", str(susp))[0] == 0
    rep = run_json(capsys, "cohomology", "--complex", str(susp), "--degrees", "3")
    assert rep["results"]["cohomology"][0]["group"] == "Z/2"


def test_human_output(capsys):
    code, out, err = run(capsys, "bounds", "--n", "2", "--dim", "8", "--kind", "manifold")
    assert code == 0 and "16" in out and err == ""
