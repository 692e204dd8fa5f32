import json
import shutil

import pytest

from steinpalf.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_build_unknot(capsys, tmp_path):
    palf = tmp_path / "u.json"
    code, out, _ = run(capsys, "build", "--input", "unknot", "--out", str(palf), "--svg", str(tmp_path / "svg"))
    assert code == 0
    rep = json.loads(out)
    assert rep["rectangles"] == 1
    assert rep["word"] == ["t1", "s1"]
    assert rep["fiber"] == {"bands": 1, "boundary_components": 2, "euler_char": 0}
    assert [h["h1_boundary"] for h in rep["homology"]] == ["Z/2", "Z/2"]
    assert all(rep["checks"].values())
    assert sorted(p.name for p in (tmp_path / "svg").iterdir()) == ["fiber.svg", "front.svg", "rects.svg"]


def test_report_round_trip(capsys, tmp_path):
    rep_path = tmp_path / "r.json"
    code, _, _ = run(capsys, "build", "--input", "trefoil", "--report", str(rep_path))
    assert code == 0
    text = rep_path.read_text()
    assert json.dumps(json.loads(text), sort_keys=True, indent=2) + "\n" == text


def test_exit_codes(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"grid_size": 3, "x_marks": [0, 0, 1], "o_marks": [1, 2, 0], "two_handles": []}')
    assert run(capsys, "build", "--input", str(bad))[0] == 2
    wrong = tmp_path / "wrong.json"
    wrong.write_text(
        '{"grid_size": 2, "x_marks": [0, 1], "o_marks": [1, 0], "two_handles": [{"component": "K1", "framing": 0}]}'
    )
    assert run(capsys, "build", "--input", str(wrong))[0] == 3
    lie = tmp_path / "lie.json"
    lie.write_text(
        '{"grid_size": 2, "x_marks": [0, 1], "o_marks": [1, 0],'
        ' "two_handles": [{"component": "K1", "framing_rel_tb": -1}], "expected": {"h1_boundary": "Z"}}'
    )
    assert run(capsys, "build", "--input", str(lie))[0] == 6
    assert run(capsys, "build", "--input", "no-such-file")[0] == 2


def test_stabilize_and_report(capsys, tmp_path):
    palf = tmp_path / "p.json"
    run(capsys, "build", "--input", "trefoil", "--out", str(palf))
    st5 = tmp_path / "p5.json"
    assert run(capsys, "stabilize", "--input", str(palf), "--count", "5", "--out", str(st5))[0] == 0
    code, out, _ = run(capsys, "report", "--input", str(palf))
    base = json.loads(out)
    code, out, _ = run(capsys, "report", "--input", str(st5))
    more = json.loads(out)
    assert code == 0
    assert more["fiber"]["bands"] == base["fiber"]["bands"] + 5
    assert more["homology"] == base["homology"]
    st0 = tmp_path / "p0.json"
    run(capsys, "stabilize", "--input", str(palf), "--count", "0", "--out", str(st0))
    assert st0.read_text() == palf.read_text()


def test_svg_deterministic(capsys):
    outs = set()
    for _ in range(2):
        code, out, _ = run(capsys, "svg", "--input", "trefoil", "--which", "rects")
        assert code == 0
        outs.add(out)
    assert len(outs) == 1
    code, out, _ = run(capsys, "svg", "--input", "unknot", "--which", "front")
    # two grid edges of each direction, both vertices at cusps
    assert out.count("<line") == 2 + 2 * 2
    with pytest.raises(SystemExit):
        main(["svg", "--input", "unknot", "--which", "nope"])


def test_golden_dir_override(capsys, tmp_path, monkeypatch, data_dir):
    shutil.copy(data_dir / "unknot.json", tmp_path / "mine.json")
    monkeypatch.setenv("STEINPALF_GOLDEN_DIR", str(tmp_path))
    assert run(capsys, "build", "--input", "mine")[0] == 0


def test_fuzz_command(capsys):
    code, out, _ = run(capsys, "fuzz", "--seed", "3", "--count", "40", "--max-grid", "7")
    rep = json.loads(out)
    assert code == 0 and rep["cases"] == 40 and rep["failures"] == []
