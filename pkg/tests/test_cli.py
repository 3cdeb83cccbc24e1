import json

import pytest

from metabelian.cli import main
from metabelian.group import element_from_json, evaluate_word
from metabelian.classify import gamma_n_spec


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "gamma:6", "gamma:12")
    assert code == 0 and "are quasi-isometric" in out
    code, out, _ = run(capsys, "classify", "4,9", "4,25")
    assert code == 1 and "not quasi-isometric" in out
    code, _, err = run(capsys, "classify", "6,10", "2,3")
    assert code == 2 and "pairwise coprime" in err
    code, out, _ = run(capsys, "classify", "4,9", "8,3", "--format", "json")
    assert code == 0 and json.loads(out)["equivalent"] is True


def count_nodes(dot):
    return sum(1 for line in dot.splitlines() if "[label=" in line)


def test_tree(capsys):
    code, out, _ = run(capsys, "tree", "12", "--depth", "2")
    assert code == 0 and count_nodes(out) == 1 + 6 + 12
    _, out, _ = run(capsys, "tree", "6", "--depth", "1")
    assert count_nodes(out) == 1 + 6
    _, out, _ = run(capsys, "tree", "2", "--depth", "3")
    assert count_nodes(out) - 1 == 14
    assert out == run(capsys, "tree", "2", "--depth", "3")[1]
    assert run(capsys, "tree", "2", "--depth", "50")[0] == 3


def test_elem(capsys):
    code, out, _ = run(capsys, "elem", "2", "a^-1 b a")
    assert code == 0 and "q = 1/2" in out and "v = [0]" in out
    code, out, _ = run(capsys, "elem", "gamma:6", "b", "--format", "json")
    assert json.loads(out)["matrix"] == [["1/1", "1/1"], ["0/1", "1/1"]]
    code, out, _ = run(capsys, "elem", "2,3", "a1 a2 a1^-1 a2^-1", "--format", "json")
    data = json.loads(out)
    assert data["q"] == "0/1" and data["v"] == [0, 0]
    assert run(capsys, "elem", "2", "a1 x")[0] == 2


def test_elem_round_trip(capsys):
    spec = gamma_n_spec(6)
    word = "a1^-2 b^3 a2 b^-1 a1"
    _, out, _ = run(capsys, "elem", "gamma:6", word, "--format", "json")
    assert element_from_json(spec, json.loads(out)) == evaluate_word(spec, word)


def test_ball_and_qifit(capsys, tmp_path):
    code, out, _ = run(capsys, "ball", "2", "--r", "1")
    assert code == 0 and out.splitlines()[2].startswith("1,4")
    _, out, _ = run(capsys, "ball", "2,3", "--r", "1")
    assert out.splitlines()[2].startswith("1,6")
    assert run(capsys, "ball", "2", "--r", "40")[0] == 3
    _, out, _ = run(capsys, "ball", "2", "--r", "3", "--cache", str(tmp_path))
    assert out == run(capsys, "ball", "2", "--r", "3", "--cache", str(tmp_path))[1]
    assert list(tmp_path.iterdir())
    code, out, _ = run(capsys, "qifit", "2", "--r", "3", "--format", "json")
    assert code == 0 and json.loads(out)["K"] <= 4
    code, _, _ = run(capsys, "qifit", "2", "--r", "2", "--format", "json", "--pairs", "--out", str(tmp_path / "q.json"))
    rows = json.loads((tmp_path / "q.json").read_text())["pairs_report"]
    assert len(rows) == 17 * 16 // 2


def test_usage_errors(capsys):
    assert run(capsys)[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "elem", "0", "b")[0] == 2
    assert run(capsys, "ball", "x,y")[0] == 2
