import io
import json
import subprocess
import sys

import pytest

from tep7 import cli, fixtures
from tep7.poly import parse
from tep7.tep_model import (
    HalfInstance,
    builtin_family,
    canonicalize,
    extend_symmetric,
    family_from_json,
    family_to_json,
)
from tep7 import pipeline


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_verify_passes():
    code, out, _ = run("verify", "--family", "builtin:1", "--degrees", "1..7")
    assert code == 0 and out.strip().endswith("PASS")


def test_verify_degree_8_fails_with_residual():
    code, out, _ = run("verify", "--family", "builtin:1", "--degrees", "8")
    assert code == 1
    assert "residual at r = 8" in out
    code, out, _ = run("verify", "--family", "builtin:1", "--degrees", "8", "--json")
    data = json.loads(out)
    assert data["passed"] is False and data["residual"].startswith("-2048*t^29")
    assert data["numeric"] == {"8": False}


def test_verify_missing_file():
    code, _, err = run("verify", "--family", "missing.json")
    assert code == 2 and "missing.json" in err


def test_verify_family_file(tmp_path):
    path = tmp_path / "f.json"
    path.write_text(json.dumps(family_to_json(builtin_family(4))))
    assert run("verify", "--family", str(path))[0] == 0
    path.write_text("{not json")
    assert run("verify", "--family", str(path))[0] == 2


def test_bad_usage():
    assert run()[0] == 2
    assert run("frobnicate")[0] == 2
    assert run("verify", "--family", "builtin:9")[0] == 2
    assert run("verify", "--family", "builtin:1", "--degrees", "7..1")[0] == 2
    assert run("instantiate", "--family", "builtin:1", "--t", "x")[0] == 2
    assert run("derive", "--f", "1/2", "--g", "free")[0] == 2
    assert run("derive", "--f", "nope")[0] == 2


def test_derive_worked_example():
    code, out, _ = run("derive", "--f", "-2", "--g", "-1", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["status"] == "family"
    assert data["equivalent_builtins"] == [1]
    fam = family_from_json(data["family"])
    assert pipeline.equivalent(fam, builtin_family(1))
    assert data["conic"] == "21*a1^2 + 2*a1*a3 + a3^2"


def test_derive_degenerate_is_labelled():
    code, out, _ = run("derive", "--f", "-2", "--g", "1", "--json")
    assert code == 0 and json.loads(out)["status"] == "trivial"


def test_derive_one_free():
    code, out, _ = run("derive", "--f", "-2", "--g", "free", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["roots"] == ["-4", "-3", "-2", "-3/2", "-1", "1"]
    prod = data["condition_product"]
    assert prod["constant"] == "2304000" and prod["rest"] == "1"
    got = {(f["factor"], f["multiplicity"]) for f in prod["factors"]}
    want = {(str(p), k) for p, k in fixtures.SECOND_FACTORS_F_MINUS_2}
    assert got == want
    assert parse(data["condition"]) == pipeline.second_condition(pipeline.choice_for(-2, None))


def test_derive_both_free():
    code, out, _ = run("derive", "--f", "free", "--g", "free")
    assert code == 0
    assert "33177600000 * (f + 2)^2" in out
    assert out.count("->") == 10


def test_instantiate_t2():
    code, out, _ = run("instantiate", "--family", "builtin:1", "--t", "2", "--json")
    assert code == 0
    data = json.loads(out)
    want = canonicalize(extend_symmetric(HalfInstance(*fixtures.WORKED_INSTANCE)))
    assert (tuple(data["x"]), tuple(data["y"])) == (want.xs, want.ys)


def test_instantiate_t0():
    code, out, _ = run("instantiate", "--family", "builtin:1", "--t", "0", "--json")
    raw = HalfInstance([279, -420, -93, 393], [321, 63, 348, 435])
    want = canonicalize(extend_symmetric(raw))
    data = json.loads(out)
    assert (tuple(data["x"]), tuple(data["y"])) == (want.xs, want.ys)


def test_scan_stdout():
    code, out, err = run("scan", "--family", "builtin:2", "--t-range", "-10..10")
    assert code == 0
    lines = [json.loads(s) for s in out.splitlines()]
    assert [d["t"] for d in lines] == list(range(-10, 11))
    assert err == ""


def test_scan_to_file_and_env(tmp_path, monkeypatch):
    target = tmp_path / "scan.jsonl"
    code, out, _ = run("scan", "--family", "builtin:1", "--t-range", "0..3", "--out", str(target), "--json")
    assert code == 0 and json.loads(out)["lines"] == 4
    assert len(target.read_text().splitlines()) == 4
    monkeypatch.setenv(cli.OUTPUT_DIR_ENV, str(tmp_path / "outdir"))
    code, out, _ = run("scan", "--family", "builtin:1", "--t-range", "-2..2")
    assert code == 0
    files = list((tmp_path / "outdir").iterdir())
    assert len(files) == 1 and len(files[0].read_text().splitlines()) == 5


def test_scan_skips_degenerate(tmp_path):
    t0 = {"label": "z", "x": [["0", "1"]] * 4, "y": [["0", "2"]] * 4}
    path = tmp_path / "z.json"
    path.write_text(json.dumps(t0))
    code, out, err = run("scan", "--family", str(path), "--t-range", "-1..1")
    assert "t = 0: degenerate" in err
    assert [json.loads(s)["t"] for s in out.splitlines()] == [-1, 1]


def test_conditions_first():
    code, out, _ = run("conditions", "--stage", "first")
    assert code == 0 and "(g - 1)^2" in out


def test_conditions_second():
    code, out, _ = run("conditions", "--stage", "second", "--branch", "f=-2")
    assert code == 0
    assert "2304000 * (g - 1)^4" in out and "(g^4 - 226*g^3 - 300*g^2 - 130*g - 155)" in out
    code, out, _ = run("conditions", "--stage", "second", "--branch", "f=2*g+1", "--json")
    assert code == 0 and json.loads(out)["roots"]


@pytest.mark.parametrize("branch", ["f=5", "h=1", "f", "f=g^", None])
def test_conditions_bad_branch(branch):
    argv = ["conditions", "--stage", "second"] + ([] if branch is None else ["--branch", branch])
    assert run(*argv)[0] == 2


def test_fixtures_command():
    code, out, _ = run("fixtures")
    assert code == 0 and "0 mismatches" in out
    code, out, _ = run("fixtures", "--json")
    data = json.loads(out)
    assert data["ok"] and "Q" in data["checksums"]


def test_output_is_deterministic():
    a = run("derive", "--f", "-2", "--g", "-3/2", "--json")
    b = run("derive", "--f", "-2", "--g", "-3/2", "--json")
    assert a == b


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "tep7", "verify", "--family", "builtin:3", "--degrees", "1..7"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and "PASS" in proc.stdout
