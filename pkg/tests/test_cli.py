import json
import subprocess
import sys

import numpy as np
import pytest

from measiso.cli import main
from measiso.generators import shuffled_copy
from measiso.graph import Graph, load_graph, verify_vertex_bijection
from measiso.cycles import verify_cycle_bijection
from measiso.whitney import apply_ops, enumerate_two_separations, reversal

from conftest import G


@pytest.fixture
def files(tmp_path):
    def write(name, g):
        path = tmp_path / name
        path.write_text(g.to_text())
        return str(path)

    k4 = G("ab ac ad bc bd cd")
    flip_base = G("xa ab by xc cy xd dy")
    flipped = reversal(flip_base, enumerate_two_separations(flip_base)[0])
    return {
        "tri": write("tri.g", G("ab bc ca")),
        "path3": write("path3.g", G("ab bc cd")),
        "k4": write("k4.g", k4),
        "k4r": write("k4_relabel.g", shuffled_copy(k4, np.random.default_rng(3))),
        "g": write("g.g", flip_base),
        "gflip": write("g_flipped.g", shuffled_copy(flipped, np.random.default_rng(4))),
        "dir": tmp_path,
    }


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip().startswith("{") else out)


class TestCheck:
    def test_2iso_triangle_vs_path(self, capsys, files):
        code, out = run(capsys, "check", "2iso", files["tri"], files["path3"])
        assert code == 1 and out["equivalent"] is False

    def test_iso_k4_relabelled(self, capsys, files):
        code, out = run(capsys, "check", "iso", files["k4"], files["k4r"])
        assert code == 0
        assert verify_vertex_bijection(load_graph(files["k4"]), load_graph(files["k4r"]), out["rho"])

    def test_2iso_flipped_pair_has_sigma(self, capsys, files):
        code, out = run(capsys, "check", "2iso", files["g"], files["gflip"])
        assert code == 0
        assert verify_cycle_bijection(load_graph(files["g"]), load_graph(files["gflip"]), out["sigma"])

    def test_2iso_search_witness_replays(self, capsys, files):
        code, out = run(capsys, "check", "2iso", files["g"], files["gflip"], "--search", "--max-depth", "0")
        assert code == 0 and out["status"] == "true"
        a = apply_ops(load_graph(files["g"]), out["ops"]).without_isolated()
        b = apply_ops(load_graph(files["gflip"]), out["h_ops"]).without_isolated()
        assert verify_vertex_bijection(a, b, out["vertex_map"])

    def test_1iso_and_cycleiso(self, capsys, files):
        assert run(capsys, "check", "1iso", files["k4"], files["k4r"])[0] == 0
        assert run(capsys, "check", "cycleiso", files["tri"], files["path3"])[0] == 1

    def test_text_output(self, capsys, files):
        code, out = run(capsys, "check", "iso", files["tri"], files["path3"], "--text")
        assert code == 1 and "equivalent: False" in out


class TestMeasure:
    def test_member_lemma_point(self, capsys, files):
        code, out = run(capsys, "measure", "member", files["tri"], "--target", "0,0,1", "--d", "2")
        assert code == 1 and out["kind"] == "infeasible"
        assert out["certificate"]["rule"] == "polygon-inequality"

    def test_member_realizable(self, capsys, files):
        code, out = run(capsys, "measure", "member", files["tri"], "--target", "1,1,1")
        assert code == 0 and out["kind"] == "realizable" and out["residual"] <= 1e-8

    def test_member_unknown(self, capsys, files):
        code, out = run(capsys, "measure", "member", files["tri"], "--target", "1,1,1", "--d", "1", "--restarts", "2")
        assert code == 2 and out["kind"] == "unknown"

    def test_sample_reproducible(self, capsys, files):
        argv = ("measure", "sample", files["tri"], "--d", "2", "--n", "3", "--seed", "7")
        code, first = run(capsys, *argv)
        _, second = run(capsys, *argv)
        assert code == 0 and len(first["points"]) == 3 and first == second

    def test_project(self, capsys, files):
        code, out = run(capsys, "measure", "project", files["tri"], "--target", "1,2,3", "--keep", "e0,e1")
        assert code == 0 and out == {"axes": ["e0", "e1"], "coords": [1.0, 2.0]}

    def test_project_from_point_file(self, capsys, files):
        path = files["dir"] / "pt.json"
        path.write_text(json.dumps({"axes": ["p", "q"], "coords": [4, 5]}))
        code, out = run(capsys, "measure", "project", "--point", str(path), "--keep", "q")
        assert code == 0 and out == {"axes": ["q"], "coords": [5.0]}

    def test_witness(self, capsys, files):
        code, out = run(capsys, "measure", "witness", files["tri"], files["path3"])
        assert code == 0
        assert sorted(out["witness"]["cycle"]) == ["e0", "e1", "e2"]
        assert out["cycle_side"]["kind"] == "infeasible" and out["image_side"]["kind"] == "realizable"

    def test_witness_absent_for_2iso_pair(self, capsys, files):
        code, out = run(capsys, "measure", "witness", files["g"], files["gflip"])
        assert code == 1 and out["witness"] is None


class TestUsageErrors:
    def test_missing_argument(self, files):
        with pytest.raises(SystemExit) as exc:
            main(["check", "iso", files["tri"]])
        assert exc.value.code == 3

    def test_unknown_kind(self, files):
        with pytest.raises(SystemExit) as exc:
            main(["check", "3iso", files["tri"], files["tri"]])
        assert exc.value.code == 3

    def test_member_needs_target(self, files):
        with pytest.raises(SystemExit) as exc:
            main(["measure", "member", files["tri"]])
        assert exc.value.code == 3

    def test_self_loop_file(self, capsys, files):
        bad = files["dir"] / "bad.g"
        bad.write_text("a a\n")
        assert main(["check", "iso", str(bad), files["tri"]]) == 3

    def test_missing_file(self, files):
        assert main(["check", "iso", str(files["dir"] / "nope.g"), files["tri"]]) == 3

    def test_bad_target(self, capsys, files):
        assert main(["measure", "member", files["tri"], "--target", "1,x,1"]) == 3
        assert main(["measure", "member", files["tri"], "--target", "1,1"]) == 3
        assert main(["measure", "member", files["tri"], "--target", "1,-1,1"]) == 3


class TestExperimentAndApply:
    def test_three_connected(self, capsys):
        code, out = run(capsys, "experiment", "three-connected", "--graphs", "k4,k5", "--n-random", "0")
        assert code == 0 and out["summary"]["ok"] and len(out["cases"]) >= 2

    def test_nesting(self, capsys):
        code, out = run(capsys, "experiment", "nesting", "--d", "2", "--n", "10", "--summary-only")
        summary = out["summary"]
        assert code == 0 and summary["ok"] and summary["agreeing"] == summary["cases"] > 0
        assert "cases" not in out

    def test_whitney_small(self, capsys):
        code, out = run(capsys, "experiment", "whitney-crosscheck", "--max-edges", "4", "--n-random", "5")
        assert code == 0 and out["summary"]["ok"] and out["summary"]["unknown"] == 0

    def test_report_is_deterministic(self, capsys):
        argv = ("experiment", "lemma", "--seed", "3")
        assert run(capsys, *argv) == run(capsys, *argv)

    def test_apply(self, capsys, files):
        ops = files["dir"] / "ops.json"
        g = load_graph(files["g"])
        sep = enumerate_two_separations(g)[0]
        ops.write_text(json.dumps({"ops": [sep.to_op()]}))
        code, out = run(capsys, "apply", files["g"], str(ops))
        assert code == 0 and Graph.from_dict(out) == reversal(g, sep)

    def test_apply_invalid_op(self, capsys, files):
        ops = files["dir"] / "ops.json"
        ops.write_text(json.dumps([{"op": "reversal", "s": ["e0"]}]))
        assert main(["apply", files["g"], str(ops)]) == 3


def test_module_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "measiso", "check", "2iso", files["tri"], files["path3"]],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 1 and json.loads(proc.stdout)["equivalent"] is False
