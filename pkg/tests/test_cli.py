"""Integration tests for the ``dvblab`` command line."""

import json
import subprocess
import sys
import time

import pytest

from dvblab.cli import main


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_gen_dims_and_determinism(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(["gen", "--dims", "2,3,1", "--seed", "7", "--out", str(a)], capsys)[0] == 0
    assert run(["gen", "--dims", "2,3,1", "--seed", "7", "--out", str(b)], capsys)[0] == 0
    assert a.read_bytes() == b.read_bytes()
    data = json.loads(a.read_text())
    assert data["kind"] == "seq" and data["Omega"] == 7
    assert len(data["e"]) == 7 and len(data["p"][0]) == 7


def test_gen_seed_from_environment(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("DVBLAB_SEED", "7")
    code, env_out, _ = run(["gen", "--dims", "1,2,1"], capsys)
    assert code == 0
    assert env_out == run(["gen", "--dims", "1,2,1", "--seed", "7"], capsys)[1]
    monkeypatch.setenv("DVBLAB_SEED", "seven")
    assert run(["gen", "--dims", "1,2,1"], capsys)[0] == 2


def test_gen_degenerate_and_kinds(tmp_path, capsys):
    for kind in ("seq", "dvb", "star-seq"):
        path = tmp_path / ("%s.json" % kind)
        assert run(["gen", "--dims", "0,0,0", "--kind", kind, "--out", str(path)], capsys)[0] == 0
        assert run(["verify", "--instance", str(path), "--trials", "2"], capsys)[0] == 0


@pytest.mark.parametrize("dims", ["2,3", "1,x,2", "1,-1,2", ""])
def test_gen_bad_dims(dims, capsys):
    assert run(["gen", "--dims", dims], capsys)[0] == 2


def test_gen_unwritable(tmp_path, capsys):
    assert run(["gen", "--dims", "1,1,1", "--out", str(tmp_path / "missing" / "x.json")], capsys)[0] == 2


def test_verify_smoke_is_fast_and_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    start = time.perf_counter()
    assert run(["verify", "--trials", "1", "--max-dim", "1", "--seed", "3", "--out", str(a)], capsys)[0] == 0
    assert time.perf_counter() - start < 1.0
    assert run(["verify", "--trials", "1", "--max-dim", "1", "--seed", "3", "--out", str(b)], capsys)[0] == 0
    ra, rb = json.loads(a.read_text()), json.loads(b.read_text())
    for r in (ra, rb):
        for c in r["checks"]:
            c.pop("elapsed")
    assert ra == rb and ra["passed"]
    names = [c["name"] for c in ra["checks"]]
    assert names == sorted(names)
    assert set(ra["checks"][0]) == {"name", "paperAnchor", "trials", "failures", "firstCounterexample"}


def test_verify_no_time_is_byte_identical(tmp_path, capsys):
    outs = []
    for _ in range(2):
        code, out, _ = run(["verify", "--suite", "triality", "--trials", "5", "--max-dim", "2", "--seed", "11",
                            "--no-time"], capsys)
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1]


def test_verify_corrupted_instance_fails_with_counterexample(tmp_path, capsys):
    path = tmp_path / "s.json"
    run(["gen", "--dims", "2,2,1", "--seed", "5", "--out", str(path)], capsys)
    data = json.loads(path.read_text())
    data["p"][0] = ["0"] * len(data["p"][0])
    path.write_text(json.dumps(data))
    out = tmp_path / "report.json"
    code, _, err = run(["verify", "--instance", str(path), "--out", str(out)], capsys)
    assert code == 1
    report = json.loads(out.read_text())
    failed = [c for c in report["checks"] if c["failures"]]
    assert failed and failed[0]["firstCounterexample"]["instance"]["instance"] == data
    assert "counterexample" in err


def test_verify_bad_inputs(tmp_path, capsys):
    assert run(["verify", "--instance", str(tmp_path / "nope.json")], capsys)[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "dvb", "A": 1')
    assert run(["verify", "--instance", str(bad)], capsys)[0] == 2
    bad.write_text('{"kind": "nonsense"}')
    assert run(["verify", "--instance", str(bad)], capsys)[0] == 2
    assert run(["verify", "--trials", "0"], capsys)[0] == 2
    assert run(["verify", "--max-dim", "0"], capsys)[0] == 2
    assert run(["verify", "--suite", "everything"], capsys)[0] == 2


def test_example_jet_and_atiyah(capsys):
    code, out, err = run(["example", "jet", "--dim-t", "2", "--dim-e", "3"], capsys)
    assert code == 0 and json.loads(out)["dim"] == 9 and "dim JE = 9" in err
    code, out, err = run(["example", "atiyah", "--dim-t", "2", "--dim-e", "3"], capsys)
    assert code == 0 and json.loads(out)["dim"] == 11 and "dim DE = 11" in err


def test_example_square(capsys):
    code, out, _ = run(["example", "square", "--dim-t", "1", "--dim-e", "1"], capsys)
    rep = json.loads(out)
    assert code == 0 and len(rep["edges"]) == 4 and all(e["passed"] for e in rep["edges"])


def test_example_bad_args(capsys):
    assert run(["example", "jet", "--dim-t", "-1", "--dim-e", "1"], capsys)[0] == 2
    assert run(["example", "torus", "--dim-t", "1", "--dim-e", "1"], capsys)[0] == 2


def test_roundtrip(tmp_path, capsys):
    for kind in ("seq", "dvb"):
        path = tmp_path / ("%s.json" % kind)
        run(["gen", "--dims", "2,1,2", "--kind", kind, "--seed", "4", "--out", str(path)], capsys)
        code, out, _ = run(["roundtrip", str(path)], capsys)
        assert code == 0 and json.loads(out)["passed"]
    truncated = tmp_path / "t.json"
    truncated.write_text((tmp_path / "seq.json").read_text()[:30])
    assert run(["roundtrip", str(truncated)], capsys)[0] == 2
    star = tmp_path / "star.json"
    run(["gen", "--dims", "1,1,1", "--kind", "star-seq", "--out", str(star)], capsys)
    assert run(["roundtrip", str(star)], capsys)[0] == 2


def _is_permutation(rows):
    return (all(sorted(r) == ["0"] * (len(r) - 1) + ["1"] for r in rows)
            and all(sorted(c) == ["0"] * (len(c) - 1) + ["1"] for c in zip(*rows)))


def test_roundtrip_split_fixture_is_permutation(tmp_path, capsys):
    e = [["1", "0"], ["0", "1"], ["0", "0"], ["0", "0"], ["0", "0"], ["0", "0"]]
    p = [["0", "0", "1", "0", "0", "0"], ["0", "0", "0", "1", "0", "0"],
         ["0", "0", "0", "0", "1", "0"], ["0", "0", "0", "0", "0", "1"]]
    path = tmp_path / "split.json"
    path.write_text(json.dumps({"kind": "seq", "A": 2, "B": 2, "C": 2, "e": e, "p": p}))
    code, out, _ = run(["roundtrip", str(path)], capsys)
    assert code == 0
    assert _is_permutation(json.loads(out)["matrices"]["pi"])


def test_console_script(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "dvblab.cli", "example", "jet", "--dim-t", "1", "--dim-e", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["dim"] == 2
