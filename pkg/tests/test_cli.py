import json
from pathlib import Path

from oncells import sparse_terms
from oncells.cli import main

SCHEMES_DIR = Path(__file__).resolve().parent.parent / "schemes"


def synth_toy(path):
    rc = main(["synth", "-p", "2", "--vars", "x", "--poly", "1+x+x^2", "-o", str(path)])
    assert rc == 0
    return str(path)


def test_synth_writes_scheme(tmp_path):
    out = tmp_path / "toy.json"
    synth_toy(out)
    data = json.loads(out.read_text())
    assert data["states"] == ["1", "1+x"]
    assert data["transitions"] == [[[1], [1, 2]], [[1, 1], [1, 1]]]
    assert data["base_scalar"] == [1, 2]


def test_synth_is_deterministic(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    synth_toy(a)
    synth_toy(b)
    assert a.read_bytes() == b.read_bytes()


def test_synth_stdout(capsys):
    rc = main(["synth", "-p", "2", "--vars", "x", "--poly", "1+x"])
    assert rc == 0
    data = json.loads(capsys.readouterr().out)
    assert data["states"] == ["1"]


def test_round_trip_reserialization(tmp_path, capsys):
    # synth -> load -> re-serialize must be byte-identical
    out = tmp_path / "toy.json"
    synth_toy(out)
    from oncells import load_scheme, scheme_to_json

    assert scheme_to_json(load_scheme(str(out))) == out.read_text()


def test_eval(tmp_path, capsys):
    scheme = synth_toy(tmp_path / "toy.json")
    assert main(["eval", "--scheme", scheme, "--n", "5"]) == 0
    assert capsys.readouterr().out.strip() == "9"
    assert main(["eval", "--scheme", scheme, "--n", "0"]) == 0
    assert capsys.readouterr().out.strip() == "1"
    assert main(["eval", "--scheme", scheme, "--pow", "5"]) == 0
    assert capsys.readouterr().out.strip() == "43"
    assert main(["eval", "--scheme", scheme, "--npow10", "2"]) == 0
    out = capsys.readouterr().out.strip()
    from oncells import eval_at, load_scheme

    assert out == str(eval_at(load_scheme(scheme), 10**2))


def test_eval_json_and_histogram(tmp_path, capsys):
    scheme = synth_toy(tmp_path / "toy.json")
    assert main(["eval", "--scheme", scheme, "--n", "5", "--json"]) == 0
    assert json.loads(capsys.readouterr().out) == {"n": "5", "value": 9}
    assert main(["eval", "--scheme", scheme, "--n", "5", "--histogram"]) == 0
    assert capsys.readouterr().out.strip() == "5 9"


def test_eval_pow_matches_sparse(tmp_path, capsys):
    scheme = synth_toy(tmp_path / "toy.json")
    from oncells import load_scheme

    values = sparse_terms(load_scheme(scheme), 30)
    for k in (0, 7, 30):
        assert main(["eval", "--scheme", scheme, "--pow", str(k)]) == 0
        assert capsys.readouterr().out.strip() == str(values[k])


def test_terms(tmp_path, capsys):
    scheme = synth_toy(tmp_path / "toy.json")
    assert main(["terms", "--scheme", scheme, "--count", "8"]) == 0
    lines = capsys.readouterr().out.split()
    assert lines == ["1", "3", "3", "5", "3", "9", "5", "11"]
    assert main(["terms", "--scheme", scheme, "--count", "4", "--json"]) == 0
    assert json.loads(capsys.readouterr().out) == {"values": [1, 3, 3, 5]}


def test_terms_histogram(tmp_path, capsys):
    rc = main(["synth", "-p", "3", "--vars", "x", "--poly", "1+x", "-o", str(tmp_path / "b3.json")])
    assert rc == 0
    assert main(["terms", "--scheme", str(tmp_path / "b3.json"), "--count", "3", "--histogram"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines == ["0 1,0", "1 2,0", "2 2,1"]


def test_sparse(tmp_path, capsys):
    scheme = synth_toy(tmp_path / "toy.json")
    assert main(["sparse", "--scheme", scheme, "--count", "7"]) == 0
    lines = capsys.readouterr().out.split()
    assert lines == ["1", "3", "5", "11", "21", "43", "85", "171"]


def test_gf(tmp_path, capsys):
    scheme = synth_toy(tmp_path / "toy.json")
    assert main(["gf", "--scheme", scheme]) == 0
    assert capsys.readouterr().out.strip() == "(1+2*t)/(1-t-2*t^2)"
    assert main(["gf", "--scheme", scheme, "--json"]) == 0
    assert json.loads(capsys.readouterr().out) == {
        "num": [1, 2],
        "den": [1, -1, -2],
        "rigorous": True,
    }
    assert main(["gf", "--scheme", scheme, "--guess"]) == 0
    assert capsys.readouterr().out.strip() == "(1+2*t)/(1-t-2*t^2)"


def test_check(tmp_path, capsys):
    scheme = synth_toy(tmp_path / "toy.json")
    assert main(["check", "--scheme", scheme, "--nmax", "64"]) == 0
    out = capsys.readouterr().out
    assert "result: OK" in out
    assert main(["check", "--scheme", scheme, "--nmax", "32", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["ok"] is True


def test_check_fails_on_bad_scheme(tmp_path, capsys):
    path = tmp_path / "toy.json"
    synth_toy(path)
    data = json.loads(path.read_text())
    data["transitions"][0][1] = [1, 1]  # structurally valid, semantically wrong
    path.write_text(json.dumps(data))
    assert main(["check", "--scheme", str(path), "--nmax", "16"]) == 1
    assert "FAIL" in capsys.readouterr().out


def test_invalid_input_exit_codes(tmp_path, capsys):
    assert main(["synth", "-p", "4", "--vars", "x", "--poly", "1+x"]) == 2
    assert main(["synth", "-p", "2", "--vars", "x", "--poly", "1+2x"]) == 2
    assert main(["synth", "-p", "2", "--vars", "x", "--poly", "1+y"]) == 2
    assert main(["eval", "--scheme", str(tmp_path / "missing.json"), "--n", "1"]) == 2
    scheme = synth_toy(tmp_path / "toy.json")
    assert main(["eval", "--scheme", scheme, "--n", "12.5"]) == 2
    assert main(["eval", "--scheme", scheme]) == 2  # no index selected
    capsys.readouterr()


def test_resource_limit_exit_codes(tmp_path, capsys):
    assert main(["synth", "-p", "2", "--vars", "x", "--poly", "1+x+x^2", "--max-states", "1"]) == 3
    scheme = synth_toy(tmp_path / "toy.json")
    assert main(["gf", "--scheme", scheme, "--solve-limit", "1"]) == 3
    capsys.readouterr()


def test_corrupt_scheme_file_rejected(tmp_path, capsys):
    path = tmp_path / "bad.json"
    synth_toy(path)
    data = json.loads(path.read_text())
    data["base_scalar"] = [9, 9]
    path.write_text(json.dumps(data))
    assert main(["eval", "--scheme", str(path), "--n", "1"]) == 2
    capsys.readouterr()


def test_shipped_schemes_check_clean(capsys):
    files = sorted(SCHEMES_DIR.glob("*.json"))
    assert len(files) == 6
    for path in files:
        assert main(["check", "--scheme", str(path), "--nmax", "64"]) == 0, path.name
        capsys.readouterr()


def test_shipped_schemes_are_current(tmp_path):
    # every shipped file must be exactly what synth produces today
    from oncells import load_scheme, scheme_to_json, synthesize

    for path in sorted(SCHEMES_DIR.glob("*.json")):
        shipped = load_scheme(str(path))
        assert scheme_to_json(synthesize(shipped.poly, shipped.states[0])) == path.read_text()
