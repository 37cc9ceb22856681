import json
import subprocess
import sys

import pytest

from trimtrees.cli import run
from trimtrees.natsets import EVENS, OMEGA, MinusFinite, glue
from trimtrees.points import ZERO, Point
from trimtrees.star import star_equal
from trimtrees.trees import tree, tree_from_json

from conftest import EVENS_TREE, FULL_TREE, ODDS_TREE


@pytest.fixture
def files(tmp_path):
    def write(name, obj):
        path = tmp_path / name
        path.write_text(json.dumps(obj))
        return str(path)

    return write


def records(capsys):
    return [json.loads(line) for line in capsys.readouterr().out.splitlines() if line.strip()]


def test_levels(files, capsys):
    t = files("t.json", EVENS_TREE.to_json())
    assert run(["levels", "--tree", t, "--depth", "2"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[:4] == ["0,0,0", "0,0,1", "1,0,0", "1,0,1"]
    assert out[4] == "verified 1/1 claims"


def test_compat_evens_odds(files, capsys):
    a, b = files("a.json", EVENS_TREE.to_json()), files("b.json", ODDS_TREE.to_json())
    assert run(["compat", "--a", a, "--b", b, "--json"]) == 0
    rec, ver = records(capsys)
    assert rec["compatible"] is False and rec["evidence"] == "exact"
    assert ver["verify"]["passed"] == 1


def test_star_subset_record(files, capsys):
    p = files("p.json", EVENS_TREE.to_json())
    q = files("q.json", tree(MinusFinite(EVENS, (0, 2)), Point.make(patch={0: 1})).to_json())
    assert run(["star-subset", "--p", p, "--q", q, "--json"]) == 0
    rec = records(capsys)[0]
    assert rec == {"relation": "star_subset", "answer": True, "cert": {"kind": "exact", "k0": 3}}


def test_hadamard_chain(files, capsys):
    chain = [tree(glue(EVENS, OMEGA, 2 * n + 1)).to_json() for n in range(6)]
    c = files("chain.json", chain)
    assert run(["hadamard", "--chain", c, "--count", "6", "--depth", "32", "--json"]) == 0
    recs = records(capsys)
    certs = [r["cert"] for r in recs if "cert" in r]
    assert len(certs) == 6 and all(x["kind"] == "exact" for x in certs)
    assert recs[-1]["verify"] == {"claims": 6, "passed": 6}
    W = tree_from_json(recs[-2]["tree"]["tree"])
    assert star_equal(W, FULL_TREE)


def test_fuse_trace_and_promise_violation(files, capsys):
    good = files("good.json", [tree(glue(EVENS, OMEGA, 2 * n + 1)).to_json() for n in range(4)])
    assert run(["fuse", "--chain", good, "--json"]) == 0
    recs = records(capsys)
    assert [r["a_n_n"] for r in recs[:4]] == [0, 2, 4, 6]
    assert all(r["checked_subset_n"] for r in recs[:4])
    bad = files("bad.json", [FULL_TREE.to_json(), FULL_TREE.to_json(), FULL_TREE.to_json(),
                             EVENS_TREE.to_json()])
    assert run(["fuse", "--chain", bad]) == 4
    assert "index 3" in capsys.readouterr().err


def test_precondition_and_parse_errors(files, tmp_path, capsys):
    p, t = files("p.json", EVENS_TREE.to_json()), files("t.json", FULL_TREE.to_json())
    assert run(["witness", "--p", p, "--t", t]) == 3
    broken = tmp_path / "broken.json"
    broken.write_text("{")
    assert run(["levels", "--tree", str(broken), "--depth", "1"]) == 2
    assert run(["levels", "--tree", p]) == 2
    assert run(["nonsense"]) == 2
    assert run(["levels", "--tree", p, "--depth", "1", "--horizon", "0"]) == 2


def test_oracle_subcommand(files, tmp_path, capsys):
    claim = {"kind": "levels", "tree": {"tree": EVENS_TREE.to_json()}, "n": 1,
             "nodes": [[0, 0], [1, 0]], "window": 2}
    path = tmp_path / "claims.jsonl"
    path.write_text(json.dumps(claim) + "\n")
    assert run(["oracle", "verify", str(path)]) == 0
    claim["nodes"] = [[0, 1]]
    path.write_text(json.dumps(claim) + "\n")
    assert run(["oracle", "verify", str(path)]) == 5


def test_round_trip_of_emitted_trees(files, capsys):
    p = files("p.json", tree(MinusFinite(EVENS, (0,))).to_json())
    t = files("t.json", EVENS_TREE.to_json())
    assert run(["splice", "--p", p, "--t", t, "--n", "1", "--json"]) == 0
    rec = records(capsys)[0]
    Q = tree_from_json(rec["tree"]["tree"])
    assert tree_from_json(json.loads(json.dumps(Q.to_json()))) == Q
    assert rec["cut"] == 3


def test_other_subcommands(files, capsys):
    t = files("t.json", FULL_TREE.to_json())
    e = files("e.json", EVENS_TREE.to_json())
    pts = files("pts.json", [ZERO.to_json(), Point.constant(1).to_json()])
    fams = files("fams.json", [[EVENS_TREE.to_json(), ODDS_TREE.to_json()], [FULL_TREE.to_json()]])
    fam = files("fam.json", [EVENS_TREE.to_json(), ODDS_TREE.to_json()])
    for argv in (["restrict", "--tree", t, "--node", "1,0", "--depth", "3"],
                 ["delta", "--tree", e],
                 ["subset", "--p", e, "--q", t],
                 ["subset-n", "--p", e, "--q", t, "--n", "0"],
                 ["family", "--tree", t, "--m", "3"],
                 ["avoid", "--tree", t, "--points", pts, "--depth", "16"],
                 ["star-avoid", "--tree", t, "--points", pts, "--count", "4", "--depth", "8"],
                 ["refine", "--families", fams],
                 ["selector", "--family", fam, "--tree", t]):
        assert run(argv + ["--json"]) == 0, argv
        recs = records(capsys)
        assert recs, argv
    assert run(["delta", "--tree", e, "--json"]) == 0
    assert records(capsys)[0]["delta"]


def test_module_entry_point(files):
    t = files("t.json", EVENS_TREE.to_json())
    proc = subprocess.run([sys.executable, "-m", "trimtrees", "levels", "--tree", t,
                           "--depth", "1", "--json", "--no-verify"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["nodes"] == [[0, 0], [1, 0]]
