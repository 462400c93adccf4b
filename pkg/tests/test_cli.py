from __future__ import annotations

import json
import random
import subprocess
import sys

import networkx as nx
import pytest

from conftest import random_coloring
from kempe_reconfig import generators as gen
from kempe_reconfig.cli import main
from kempe_reconfig.coloring import Coloring
from kempe_reconfig.plane_graph import PlaneGraph


def _write(path, obj) -> str:
    path.write_text(json.dumps(obj))
    return str(path)


@pytest.fixture
def triangle_files(tmp_path):
    g = _write(tmp_path / "g.json", gen.triangle().to_dict())
    a = _write(tmp_path / "a.json", Coloring.of((1, 2, 3), 5).to_dict())
    b = _write(tmp_path / "b.json", Coloring.of((2, 1, 3), 5).to_dict())
    return tmp_path, g, a, b


def test_solve_then_verify_triangle(triangle_files, capsys):
    tmp, g, a, b = triangle_files
    seq, stats = str(tmp / "s.json"), str(tmp / "st.json")
    assert main(["solve", "--graph", g, "--from", a, "--to", b, "--seq", seq, "--stats", stats]) == 0
    assert len(json.loads(open(seq).read())["moves"]) >= 1
    data = json.loads(open(stats).read())
    assert {"seed", "length", "max_recolors", "ledgers"} <= set(data)
    capsys.readouterr()
    assert main(["verify", "--graph", g, "--from", a, "--to", b, "--seq", seq]) == 0
    assert json.loads(capsys.readouterr().out)["ok"] is True


def test_solve_octahedron_round_trip(tmp_path, capsys):
    g = gen.octahedron()
    rng = random.Random(4)
    gp = _write(tmp_path / "g.json", g.to_dict())
    a = _write(tmp_path / "a.json", random_coloring(g, rng).to_dict())
    b = _write(tmp_path / "b.json", random_coloring(g, rng).to_dict())
    seq = str(tmp_path / "s.json")
    assert main(["solve", "--graph", gp, "--from", a, "--to", b, "--seq", seq]) == 0
    assert main(["verify", "--graph", gp, "--from", a, "--to", b, "--seq", seq]) == 0


def test_verify_empty_sequence_and_tampering(triangle_files, capsys):
    tmp, g, a, b = triangle_files
    empty = _write(tmp / "e.json", {"moves": []})
    assert main(["verify", "--graph", g, "--from", a, "--to", a, "--seq", empty]) == 0
    bad = _write(tmp / "bad.json", {"moves": [{"vertex": 0, "to_color": 3}, {"vertex": 0, "to_color": 3}]})
    capsys.readouterr()
    assert main(["verify", "--graph", g, "--from", a, "--to", b, "--seq", bad]) == 1
    out = json.loads(capsys.readouterr().out)
    assert out["ok"] is False and "index" in out


def test_improper_input_is_exit_2(triangle_files):
    tmp, g, a, _ = triangle_files
    bad = _write(tmp / "x.json", Coloring.of((1, 1, 3), 5).to_dict())
    assert main(["solve", "--graph", g, "--from", bad, "--to", a]) == 2
    assert main(["verify", "--graph", g, "--from", bad, "--to", a, "--seq", _write(tmp / "e.json", {"moves": []})]) == 2
    assert main(["solve", "--graph", str(tmp / "missing.json"), "--from", a, "--to", a]) == 2


def test_fisk_command(tmp_path):
    g = gen.octahedron()
    gp = _write(tmp_path / "g.json", g.to_dict())
    a = _write(tmp_path / "a.json", Coloring.of((1, 2, 3, 2, 3, 4), 4).to_dict())
    b = _write(tmp_path / "b.json", Coloring.of((4, 1, 2, 1, 2, 3), 4).to_dict())
    stats = tmp_path / "st.json"
    assert main(["fisk", "--graph", gp, "--from", a, "--stats", str(stats), "--seq", str(tmp_path / "s.json")]) == 0
    info = json.loads(stats.read_text())
    assert info["info"]["nonsingular_history"][-1] == 0
    assert main(["fisk", "--graph", gp, "--from", a, "--to", b, "--stats", str(stats),
                 "--seq", str(tmp_path / "s2.json")]) == 0
    assert json.loads(stats.read_text())["end"]["colors"] == [4, 1, 2, 1, 2, 3]


def test_oracle_command(tmp_path):
    gp = _write(tmp_path / "g.json", gen.cycle(5).to_dict())
    out = tmp_path / "o.json"
    assert main(["oracle", "--graph", gp, "--stats", str(out)]) == 0
    assert json.loads(out.read_text())["components"] == 1


def test_gen_is_deterministic(tmp_path):
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    for p in (p1, p2):
        assert main(["gen", "--kind", "triangulation", "--n", "30", "--seed", "7", "--graph", str(p)]) == 0
    assert p1.read_bytes() == p2.read_bytes()


def test_gen_small_cases(tmp_path):
    p = tmp_path / "k4.json"
    assert main(["gen", "--kind", "triangulation", "--n", "4", "--graph", str(p)]) == 0
    g = PlaneGraph.from_json(p.read_text())
    assert g.n == 4 and g.num_edges == 6
    p = tmp_path / "octa.json"
    assert main(["gen", "--kind", "eulerian", "--n", "6", "--graph", str(p)]) == 0
    g = PlaneGraph.from_json(p.read_text())
    assert all(g.degree(v) == 4 for v in range(6))
    h = nx.Graph(list(g.edges))
    assert nx.is_isomorphic(h, nx.Graph(list(gen.octahedron().edges)))


def test_gen_rejects_bad_kind_and_size(tmp_path):
    assert main(["gen", "--kind", "nonsense", "--n", "5"]) == 2
    assert main(["gen", "--n", "2"]) == 2


def test_console_entry_point(tmp_path):
    p = tmp_path / "g.json"
    r = subprocess.run([sys.executable, "-m", "kempe_reconfig.cli", "gen", "--n", "5", "--graph", str(p)],
                       capture_output=True, text=True)
    assert r.returncode == 0
    assert PlaneGraph.from_json(p.read_text()).n == 5


def test_invariant_violation_is_exit_3(triangle_files, monkeypatch, capsys):
    from kempe_reconfig import cli
    from kempe_reconfig.errors import PaperViolation

    def boom(*args, **kwargs):
        raise PaperViolation("synthetic", {"where": "test"})

    monkeypatch.setattr(cli, "theorem_main", boom)
    tmp, g, a, b = triangle_files
    assert main(["solve", "--graph", g, "--from", a, "--to", b]) == 3
    err = capsys.readouterr().err
    record = json.loads(err.splitlines()[-1])
    assert record["payload"] == {"where": "test"} and record["command"] == "solve"
