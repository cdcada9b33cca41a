import json
import subprocess
import sys

import pytest

from yang_index_lab.cli import run

CORPUS = [
    (["validate", "1 2 ; 2 1", "--n", "2", "--k", "2"], 1),
    (["validate", "1 1 ; 2 3", "--n", "3", "--k", "2"], 0),
    (["validate", "1 2 ; -2 -1"], 1),
    (["validate", "1 1 1 ; 2 2 2 ; 3 4 5"], 0),
    (["validate", "1 1 ;; 2 3"], 64),
    (["validate", "1 1 ; 2 3", "--k", "3"], 64),
    (["validate", "1 1 ; 2 2"], 64),
    (["expand", "1 1 ; ~2 ~3"], 0),
    (["expand", "1 !2 ; 3 3"], 64),
    (["expand"], 64),
    (["verify", "--named", "thm1.1", "--n", "6", "--k", "3"], 0),
    (["verify", "--named", "thm1.3_c", "--n", "7", "--mode", "grassmann"], 0),
    (["verify", "--named", "thm1.3_c", "--n", "7", "--mode", "stiefel"], 1),
    (["verify", "--named", "thm1.3_c", "--n", "4"], 64),
    (["chain", "--named", "example_g32", "--n", "3", "--mode", "grassmann", "--op", "nu"], 0),
    (["complex", "--n", "2", "--k", "1", "--max-dim", "1", "--no-cache"], 0),
    (["complex", "--n", "2", "--max-dim", "1"], 64),
    (["homology", "--n", "3", "--k", "1", "--max-dim", "2", "--no-cache"], 0),
    (["bounds", "--family", "g", "--max-n", "9", "--format", "md", "--diff"], 0),
    (["bounds", "--family", "st", "--max-n", "9", "--diff"], 0),
    (["bounds", "--family", "g", "--max-n", "9", "--diff", "--drop-fact", "thm13"], 1),
    (["bounds", "--family", "g", "--drop-fact", "nope"], 64),
    (["bounds", "--family", "x"], 64),
    (["frobnicate"], 64),
]


@pytest.mark.parametrize("argv,code", CORPUS, ids=[" ".join(a) for a, _ in CORPUS])
def test_exit_codes(argv, code):
    assert run(argv)[0] == code


def test_validate_json():
    code, out = run(["validate", "1 2 ; 2 1", "--format", "json"])
    data = json.loads(out)
    assert data["verdict"] == "invalid"
    assert data["witness"]["kind"] == "circuit"


def test_expand_output():
    code, out = run(["expand", "1 1 ; ~2 ~3"])
    assert out.splitlines() == ["1 1 ; 2 3", "1 1 ; 2 -3", "1 1 ; -2 3", "1 1 ; -2 -3"]


def test_verify_resplits():
    code, out = run(["verify", "--named", "thm1.3_c", "--n", "5", "--mode", "grassmann",
                     "--resplits", "32", "--format", "json"])
    rep = json.loads(out)
    assert code == 0 and rep["split_independent"] and rep["nu"] == 1


def test_complex_g32_witness(tmp_path):
    w = tmp_path / "w.jsonl"
    code, out = run(["complex", "--n", "3", "--k", "2", "--mode", "grassmann", "--max-dim", "2",
                     "--format", "json", "--witness", str(w)])
    data = json.loads(out)
    assert code == 0 and data["index"] == 2 and len(data["witness"]) == 16
    assert data["face_counts"] == [6, 42, 96]
    code, out = run(["verify", "--file", str(w), "--mode", "grassmann"])
    assert code == 0 and out.endswith("PASS\n")


def test_chain_file_roundtrip(tmp_path):
    code, out = run(["chain", "--named", "thm1.1", "--n", "4", "--k", "2"])
    path = tmp_path / "c.jsonl"
    path.write_text(out)
    assert run(["chain", "--file", str(path), "--op", "nu"]) == (0, "nu = 1\n")
    code, bd = run(["chain", "--file", str(path), "--op", "boundary"])
    assert bd.splitlines()[0] == '{"n": 4, "k": 2, "dim": 1, "mode": "stiefel"}'
    assert len(bd.splitlines()) == 1


def test_cache_used(tmp_path, monkeypatch):
    monkeypatch.setenv("YANG_CACHE_DIR", str(tmp_path))
    argv = ["complex", "--n", "3", "--k", "1", "--max-dim", "2"]
    first = run(argv)
    assert list(tmp_path.glob("complex-n3-k1-m2-stiefel-e1.jsonl"))
    assert run(argv) == first


def test_bounds_inject(tmp_path):
    f = tmp_path / "facts.json"
    f.write_text(json.dumps([{"family": "G", "n": 3, "k": 2, "quantity": "nu", "lo": 2, "id": "complex"}]))
    code, out = run(["bounds", "--family", "g", "--max-n", "5", "--inject-facts", str(f), "--format", "csv"])
    assert code == 0 and out.splitlines()[4] == "3,0,2,2,0,,"


def test_bounds_explain():
    code, out = run(["bounds", "--family", "g", "--explain", "G", "9", "4"])
    assert code == 0
    assert out.splitlines()[0] == "nu(G(9,4)) lo=6 by g_diag_monotone"


def test_deterministic_output():
    argv = ["verify", "--named", "thm1.3_c", "--n", "5", "--mode", "grassmann", "--resplits", "8"]
    assert run(argv) == run(argv)
    argv = ["bounds", "--family", "st", "--format", "json"]
    assert run(argv) == run(argv)


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "yang_index_lab", "validate", "1 2 ; 2 1"],
                       capture_output=True, text=True)
    assert p.returncode == 1
    assert p.stdout.startswith("invalid")
