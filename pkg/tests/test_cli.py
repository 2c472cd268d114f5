import csv
import json
from fractions import Fraction as F

import pytest

from thickness.cli import main
from thickness.documents import dumps
from thickness.gaplemma1d import sharpness_counterexample
from thickness.setsrd import CornerCantor, carpet_spec
from thickness import make_middle_cantor


@pytest.fixture
def files(tmp_path):
    def write(name, obj):
        p = tmp_path / name
        p.write_text(obj if isinstance(obj, str) else dumps(obj))
        return str(p)

    m3 = write("m3.json", make_middle_cantor(F(1, 3)))
    c1, c2 = sharpness_counterexample(F(1, 2), F(1, 3))
    return {
        "m3": m3,
        "shift": write("shift.json", make_middle_cantor(F(1, 3)).homothety(1, F(1, 2))),
        "s1": write("s1.json", c1),
        "s2": write("s2.json", c2),
        "cc": write("cc.json", CornerCantor(2, 10, F(7, 50))),
        "carpet": write("carpet.json", carpet_spec(2)),
        "bad": write("bad.json", '{"kind": "cutout", "hull": ["0"]}'),
        "dir": tmp_path,
    }


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_thickness_command(capsys, files):
    code, out = run(capsys, "thickness", files["m3"])
    assert code == 0 and out.out.strip() == "tau = 1 (exact)"
    code, out = run(capsys, "thickness", files["carpet"])
    assert code == 0 and out.out.strip() == "tau = 1 (exact)"
    code, out = run(capsys, "--json", "thickness", files["cc"])
    rec = json.loads(out.out)
    assert rec["outputs"]["tau"] == {"lo": "21/10", "hi": "21/10", "exact": True}


def test_gap_lemma_command(capsys, files):
    code, out = run(capsys, "gap-lemma", files["m3"], files["shift"], "--find-point")
    assert code == 0 and "point = " in out.out
    code, out = run(capsys, "gap-lemma", files["s1"], files["s2"])
    assert code == 4 and "product >= 1: false" in out.out
    code, out = run(capsys, "gap-lemma", files["cc"], files["cc"], "--r", "13/75")
    assert code == 0 and "anchor: true" in out.out
    code, _ = run(capsys, "gap-lemma", files["m3"], files["cc"])
    assert code == 2


def test_patterns_command(capsys, files):
    code, out = run(capsys, "patterns", files["m3"], "--ap-search", "5")
    assert code == 0 and out.out.strip() == "longest AP length 4: 0,1/3,2/3,1"
    code, out = run(capsys, "patterns", files["m3"], "--three-ap")
    assert out.out.strip() == "1/3, 2/3, 1"
    code, out = run(capsys, "patterns", "--capacity", "1e9")
    assert out.out.strip() == "N = 11 (natural-log convention)"
    code, out = run(capsys, "patterns", "--condition", "11", "1e9")
    assert out.out.strip().endswith("true")
    code, _ = run(capsys, "patterns", "--three-ap")
    assert code == 2


def test_game_command_and_transcript(capsys, files):
    path = files["dir"] / "t.jsonl"
    code, out = run(capsys, "game", files["m3"], "--bob", "random", "--seed", "4",
                    "--transcript", str(path))
    assert code == 0 and "verdict: " in out.out and "counterexample" not in out.out
    first = path.read_bytes()
    run(capsys, "game", files["m3"], "--bob", "random", "--seed", "4", "--transcript", str(path))
    assert path.read_bytes() == first


def test_emit_csv(capsys, files):
    out_path = files["dir"] / "dim.csv"
    code, _ = run(capsys, "emit-csv", "dim_curve", "--out", str(out_path), "--kmin", "0", "--kmax", "4")
    rows = list(csv.reader(out_path.open()))
    assert code == 0 and rows[0] == ["tau", "beta_bound"] and len(rows) == 6
    assert rows[5][0] == "1"
    code, _ = run(capsys, "emit-csv", "nonsense")
    assert code == 2


def test_bad_input_exit_code(capsys, files):
    code, out = run(capsys, "thickness", files["bad"])
    assert code == 2 and out.err.startswith("error:")
    code, _ = run(capsys, "thickness", str(files["dir"] / "missing.json"))
    assert code == 2
    code, _ = run(capsys, "no-such-command")
    assert code == 2
