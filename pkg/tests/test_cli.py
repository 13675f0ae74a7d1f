import json
import subprocess
import sys

import pytest

from plane_spanner.cli import main
from plane_spanner.io import parse_graph, parse_instance


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gen_then_build(tmp_path, capsys):
    inst = tmp_path / "i.json"
    assert run(capsys, "gen", "--n", "30", "--seed", "4", "--out", str(inst))[0] == 0
    assert len(parse_instance(inst.read_text()).points) == 30
    code, out, _ = run(capsys, "build", str(inst), "--stage", "h4")
    assert code == 0
    g = parse_graph(out)
    assert g.n == 30 and g.stage == "h4"


def test_verify_example(capsys):
    code, out, _ = run(capsys, "verify", "example")
    assert code == 0
    assert "FAIL" not in out and "PASS  H4 plane" in out


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "example", "--format", "json")
    assert code == 0
    assert json.loads(out)["passed"] is True


def test_input_errors_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"version":1,"points":[[0,0],[0,5],[3,3]]}')
    assert run(capsys, "build", str(bad))[0] == 2
    assert run(capsys, "verify", str(bad))[0] == 2
    assert run(capsys, "verify", str(bad), "--perturb-seed", "1")[0] == 0
    assert run(capsys, "build", str(tmp_path / "missing.json"))[0] == 2
    garbage = tmp_path / "g.json"
    garbage.write_text("{")
    assert run(capsys, "verify", str(garbage))[0] == 2


def test_degenerate_square_exit_2(tmp_path, capsys):
    f = tmp_path / "sq.json"
    f.write_text('{"version":1,"points":[[0,3],[3,10],[10,7],[7,0]]}')
    code, _, err = run(capsys, "build", str(f))
    assert code == 2 and "DegenerateSquareWitness" in err and "[delaunay]" in err


def test_stretch(capsys):
    code, out, _ = run(capsys, "stretch", "example", "--stage", "h4", "--format", "json")
    assert code == 0
    assert 1.0 < json.loads(out)["stretch"] < 10


def test_svg(tmp_path, capsys):
    g = tmp_path / "g.json"
    run(capsys, "build", "example", "--out", str(g))
    out = tmp_path / "x.svg"
    assert run(capsys, "svg", "example", str(g), "--out", str(out))[0] == 0
    assert out.read_text().count('class="shortcut"') == 1
    other = tmp_path / "o.json"
    run(capsys, "gen", "--n", "29", "--seed", "1", "--out", str(other))
    assert run(capsys, "svg", str(other), str(g))[0] == 2


def test_bench(tmp_path, capsys):
    code, out, _ = run(capsys, "bench", "--trials", "3", "--n", "5:25", "--out", str(tmp_path), "--no-figures")
    assert code == 0
    assert "h4_max_degree\t" in out
    assert (tmp_path / "trials.csv").exists() and not (tmp_path / "max_degree.png").exists()


@pytest.mark.parametrize("argv", [["gen", "--n", "5", "--seed", "2"], ["build", "example", "--stage", "h6"]])
def test_deterministic(capsys, argv):
    assert run(capsys, *argv) == run(capsys, *argv)


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "plane_spanner", "gen", "--n", "2", "--seed", "0"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.startswith('{"version":1')
