import json
import subprocess
import sys

import pytest

from lieconf.cli import main
from lieconf.ranconv import Cover


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_conf_betti_r2_csv(capsys):
    code, out, _ = run(capsys, "conf", "betti", "--manifold", "R2.desc", "--max-k", "8", "--format", "csv")
    assert code == 0
    rows = [tuple(map(int, l.split(","))) for l in out.splitlines()[1:]]
    for k in range(2, 9):
        assert (k, 0, 1) in rows and (k, 1, 1) in rows
    assert len(rows) == 1 + 2 * 7


def test_conf_betti_r3(capsys):
    code, out, _ = run(capsys, "conf", "betti", "--manifold", "R3.desc", "--max-k", "4", "--format", "csv")
    assert code == 0
    assert out.splitlines()[1:] == [f"{k},0,1" for k in range(1, 5)]


def test_conf_betti_file_and_out(tmp_path, capsys):
    from lieconf.confspace import builtin_descriptor, dumps_descriptor
    desc = tmp_path / "T2.desc"
    desc.write_text(dumps_descriptor(builtin_descriptor("T2")))
    dest = tmp_path / "t2.csv"
    code, out, _ = run(capsys, "conf", "betti", "--manifold", str(desc), "--max-k", "2", "--format", "csv",
                       "--out", str(dest))
    assert code == 0
    assert dest.read_text().startswith("k,degree,betti\n")
    assert out.splitlines()[0] == "k=1: 1 + 2*t^1 + t^2"


def test_missing_file_no_output(tmp_path, capsys):
    dest = tmp_path / "o.csv"
    code, out, err = run(capsys, "conf", "betti", "--manifold", str(tmp_path / "nope.desc"), "--max-k", "3",
                         "--out", str(dest))
    assert code == 2 and out == "" and err
    assert not dest.exists()


def test_invalid_descriptor_lists_violations(tmp_path, capsys):
    from lieconf.confspace import builtin_descriptor, dumps_descriptor
    bad = tmp_path / "bad.desc"
    bad.write_text(dumps_descriptor(builtin_descriptor("T2")).replace("b a = -1 w", "b a = 1 w"))
    code, out, err = run(capsys, "conf", "betti", "--manifold", str(bad), "--max-k", "2")
    assert code == 2 and out == ""
    assert "  - " in err


@pytest.mark.parametrize("lie", ["sl2", "freelie:1:1", "abelian:0", "freelie:0:2"])
def test_env_pbw_ok(capsys, lie):
    code, out, _ = run(capsys, "env", "pbw", "--lie", lie, "--n", "2", "--max-weight", "4", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["pbw_match"] is True and obj["n"] == 2 and obj["max_weight"] == 4
    assert obj["schema"].endswith("/v1")
    assert all(len(r) == 3 for r in obj["betti"])


def test_env_pbw_freelie_n3(capsys):
    assert run(capsys, "env", "pbw", "--lie", "freelie:1:1", "--n", "3", "--max-weight", "4")[0] == 0


def test_env_pbw_malformed(tmp_path, capsys):
    bad = tmp_path / "bad.lie"
    bad.write_text("this is not a Lie algebra\n")
    code, out, _ = run(capsys, "env", "pbw", "--lie", str(bad), "--n", "2", "--max-weight", "4")
    assert code == 2 and out == ""


def test_env_pbw_invalid_algebra_file(tmp_path, capsys):
    bad = tmp_path / "bad.lie"
    bad.write_text("# lieconf lie-algebra v1\n[basis]\nx 0 1\ny 0 1\nz 0 2\n[bracket]\nx y = 1 z\n")
    code, _, err = run(capsys, "env", "pbw", "--lie", str(bad), "--n", "2", "--max-weight", "2")
    assert code == 2 and "antisymmetry" in err


def test_lie_file_round_trip(tmp_path, capsys):
    from lieconf.lie import dumps_lie, sl2
    p = tmp_path / "sl2.lie"
    p.write_text(dumps_lie(sl2()))
    code, out, _ = run(capsys, "ce", "homology", "--lie", str(p), "--max-weight", "3", "--format", "csv")
    assert code == 0
    assert out == "weight,degree,betti\n0,0,1\n3,3,1\n"


def test_ce_homology_text_marks_trivial(capsys):
    code, out, _ = run(capsys, "ce", "homology", "--lie", "sl2", "--max-weight", "3")
    assert code == 0 and "trivial class" in out.splitlines()[0]


def test_conf_ordered(capsys):
    code, out, _ = run(capsys, "conf", "ordered", "--n", "3", "--max-k", "4", "--format", "json")
    assert code == 0 and json.loads(out)["match"] is True


def test_lie_free(capsys):
    code, out, _ = run(capsys, "lie", "free", "--generators", "x:0,y:0", "--max-weight", "3", "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["weight,degree,dim", "1,0,2", "2,0,1", "3,0,2"]
    code, out, _ = run(capsys, "lie", "free", "--generators", "x:1", "--max-weight", "3")
    from lieconf.lie import loads_lie
    assert len(loads_lie(out).labels) == 2


def test_env_free_series(capsys):
    code, out, _ = run(capsys, "env", "free-series", "--n", "2", "--max-weight", "3", "--format", "csv")
    assert code == 0
    assert out.splitlines()[1:] == ["0,0,1", "1,0,1", "2,0,1", "2,1,1", "3,0,1", "3,1,1"]


def test_cov(tmp_path, capsys):
    code, out, _ = run(capsys, "cov", "enum", "--source", "2", "--target", "2", "--format", "json")
    assert code == 0 and json.loads(out)["count"] == 9
    s = tmp_path / "s.json"
    t = tmp_path / "t.json"
    s.write_text(Cover.from_parts([1, 2], {"a": [1, 2]}).to_json())
    t.write_text(Cover.from_parts(["a"], {"u": ["a"], "v": ["a"]}).to_json())
    code, out, _ = run(capsys, "cov", "compose", str(s), str(t))
    assert code == 0
    C = Cover.from_json(out)
    assert C.part("u") == C.part("v") == frozenset({1, 2})
    code, _, _ = run(capsys, "cov", "compose", str(t), str(s))
    assert code == 2


@pytest.mark.parametrize("suite", ["ranconv", "ce"])
def test_verify(capsys, suite):
    code, out, _ = run(capsys, "verify", "--suite", suite, "--seed", "7")
    assert code == 0 and "FAIL" not in out


def test_verify_unknown_suite(capsys):
    assert run(capsys, "verify", "--suite", "nope")[0] == 2


def test_bad_arguments(capsys):
    assert run(capsys, "conf", "betti", "--manifold", "R2", "--max-k", "0")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "env", "pbw", "--lie", "freelie:x:1", "--n", "2", "--max-weight", "3")[0] == 2


def test_determinism(tmp_path, capsys):
    outs = []
    for i in range(2):
        dest = tmp_path / f"v{i}.json"
        assert main(["verify", "--suite", "lie", "--seed", "5", "--format", "json", "--out", str(dest)]) == 0
        outs.append(dest.read_bytes())
    assert outs[0] == outs[1]
    capsys.readouterr()


def test_console_script():
    r = subprocess.run([sys.executable, "-m", "lieconf.cli", "conf", "betti", "--manifold", "R4", "--max-k", "2",
                        "--format", "csv"], capture_output=True, text=True)
    assert r.returncode == 0
    assert r.stdout.splitlines()[1:] == ["1,0,1", "2,0,1", "2,3,1"]
