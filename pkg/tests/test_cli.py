import json
import subprocess
import sys
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from conftest import random_points
from oracles import brute_theta_edges
from theta_lab.cli import main
from theta_lab.io import format_points


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


@pytest.fixture
def pts_file(tmp_path):
    def make(points, name="pts.txt"):
        p = tmp_path / name
        p.write_text(format_points(points))
        return str(p)

    return make


def test_build_two_points(capsys, pts_file):
    code, rep, _ = run(capsys, "build", pts_file([(0.0, 0.0), (0.3, 1.0)]))
    assert code == 0
    assert rep["results"]["edges"] == [[0, 1]]
    assert rep["k"] == 5 and rep["input_digest"].startswith("sha256:")


def test_build_pentagon_plus_center(capsys, pts_file, pentagon_plus_center):
    code, rep, _ = run(capsys, "build", pts_file(pentagon_plus_center))
    assert code == 0
    assert {tuple(e) for e in rep["results"]["edges"]} == brute_theta_edges(pentagon_plus_center, 5)


def test_build_round_trip(capsys, tmp_path, pts_file):
    src = pts_file(random_points(30, 4))
    out1 = tmp_path / "g1.json"
    out2 = tmp_path / "g2.json"
    assert main(["build", src, "-o", str(out1)]) == 0
    assert main(["build", str(out1), "-o", str(out2)]) == 0
    g1 = json.loads(out1.read_text())["results"]
    g2 = json.loads(out2.read_text())["results"]
    assert g1 == g2
    assert g1["points"] == [list(p) for p in random_points(30, 4)]


def test_json_input(capsys, tmp_path):
    p = tmp_path / "pts.json"
    p.write_text(json.dumps({"points": [[0.0, 0.0], [0.3, 1.0], [-0.2, 0.5]]}))
    code, rep, _ = run(capsys, "build", str(p))
    assert code == 0 and len(rep["results"]["edges"]) == 2


def test_malformed_line_names_the_line(capsys, tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("# header\n0 0\n1 2 3\n")
    code, rep, err = run(capsys, "build", str(p))
    assert code == 2 and rep is None
    assert "line 3" in err


def test_non_finite_is_rejected(capsys, tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("0 0\nnan 1\n")
    code, _, err = run(capsys, "ratio", str(p))
    assert code == 2 and "line 2" in err


def test_general_position_violation(capsys, pts_file):
    code, rep, err = run(capsys, "build", pts_file([(0.0, 0.0), (1.0, 2.0), (1.0, 3.0)]))
    assert code == 2
    assert rep["results"]["offending_indices"] == [1, 2]
    assert "[1, 2]" in err


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "build", str(tmp_path / "nope.txt"))
    assert code == 2


def test_ratio_two_points(capsys, pts_file):
    code, rep, _ = run(capsys, "ratio", pts_file([(0.0, 0.0), (0.3, 1.0)]))
    assert code == 0 and rep["results"]["ratio"] == 1.0


def test_ratio_needs_two_points(capsys, pts_file):
    code, _, _ = run(capsys, "ratio", pts_file([(0.0, 0.0)]))
    assert code == 2


@pytest.mark.parametrize("k,bound", [(5, 5.70), (6, 2.0)])
def test_ratio_bounds(capsys, pts_file, k, bound):
    code, rep, _ = run(capsys, "ratio", pts_file(random_points(50, k)), "--k", str(k))
    assert code == 0 and 1.0 <= rep["results"]["ratio"] <= bound


def test_svg_structure(capsys, tmp_path, pts_file):
    svg = tmp_path / "g.svg"
    code, rep, _ = run(capsys, "ratio", pts_file(random_points(25, 1)), "--svg", str(svg))
    assert code == 0
    root = ET.parse(svg).getroot()
    ns = "{http://www.w3.org/2000/svg}"
    assert len(root.findall(f".//{ns}line")) == rep["results"]["edges"]
    assert len(root.findall(f".//{ns}circle")) == 25
    poly = root.findall(f".//{ns}polyline")
    assert len(poly) == 1 and len(poly[0].get("points").split()) == len(rep["results"]["path"])


def test_certify_all_pairs(capsys, pts_file):
    code, rep, _ = run(capsys, "certify", pts_file(random_points(20, 6)))
    res = rep["results"]
    assert code == 0 and res["all_valid"] and res["pairs"] == 190
    assert len(res["certificates"]) == 190 and res["max_path_ratio"] <= 5.70


def test_certify_edge_pair_is_one_step(capsys, pts_file):
    code, rep, _ = run(capsys, "certify", pts_file([(0.0, 0.0), (0.1, 1.0), (-0.2, 0.5)]),
                       "--pair", "0", "2")
    cert = rep["results"]["certificates"][0]
    assert code == 0 and cert["path"] == [0, 2] and len(cert["steps"]) == 1


def test_certify_refuses_small_K(capsys, pts_file):
    code, rep, err = run(capsys, "certify", pts_file(random_points(5, 0)), "--K", "1.0")
    assert code == 3 and rep is None and "5.7" in err


def test_certify_refuses_other_k(capsys, pts_file):
    code, _, _ = run(capsys, "certify", pts_file(random_points(5, 0)), "--k", "6")
    assert code == 3


def test_certify_bad_pair(capsys, pts_file):
    code, _, _ = run(capsys, "certify", pts_file(random_points(5, 0)), "--pair", "0", "9")
    assert code == 2


def test_certify_failure_dumps_certificate(capsys, pts_file, monkeypatch):
    import theta_lab.cli as cli

    monkeypatch.setattr(cli, "validate_certificate", lambda cert, g: ["forced failure"])
    code, rep, err = run(capsys, "certify", pts_file(random_points(6, 0)), "--pair", "0", "1")
    assert code == 4
    assert rep["results"]["failures"][0]["revalidation_problems"] == ["forced failure"]
    assert "forced failure" in err and '"steps"' in err


def test_verify_single_lemma_pass_and_fail(capsys):
    code, rep, _ = run(capsys, "verify-lemmas", "--lemma", "case8", "--K", "6.16")
    assert code == 0 and rep["results"]["reports"][0]["pass"]
    code, rep, _ = run(capsys, "verify-lemmas", "--lemma", "t334", "--K", "5.60")
    r = rep["results"]["reports"][0]
    assert code == 4 and not r["pass"] and r["argmax_params"]["beta"] == 0.0


def test_verify_rejects_bad_args(capsys):
    assert run(capsys, "verify-lemmas", "--grid", "1")[0] == 2
    assert run(capsys, "verify-lemmas", "--K", "5.7")[0] == 2
    assert run(capsys, "verify-lemmas", "--lemma", "nope")[0] == 2


def test_search_is_reproducible(capsys, tmp_path):
    fixture = tmp_path / "best.txt"
    a = run(capsys, "search", "--n", "5", "--iterations", "200", "--seed", "3", "--points-out", str(fixture))
    b = run(capsys, "search", "--n", "5", "--iterations", "200", "--seed", "3")
    assert a[0] == 0 and a[1]["results"] == b[1]["results"] and a[1]["seed"] == 3
    code, rep, _ = run(capsys, "ratio", str(fixture))
    assert rep["results"]["ratio"] == a[1]["results"]["ratio"]


def test_search_without_iterations(capsys):
    code, rep, _ = run(capsys, "search", "--n", "6", "--iterations", "0", "--seed", "5")
    assert code == 0 and rep["results"]["accepted"] == 0 and rep["results"]["ratio"] <= 5.70


def test_thread_env_fallback(capsys, pts_file, monkeypatch):
    f = pts_file(random_points(80, 2))
    monkeypatch.setenv("THETA_LAB_THREADS", "3")
    a = run(capsys, "ratio", f)[1]["results"]
    monkeypatch.setenv("THETA_LAB_THREADS", "zero")
    assert run(capsys, "ratio", f)[0] == 2
    monkeypatch.delenv("THETA_LAB_THREADS")
    b = run(capsys, "ratio", f, "--threads", "1")[1]["results"]
    assert a == b


def test_usage_error_exit_code(capsys):
    assert main(["frobnicate"]) == 2


def test_console_script_runs(tmp_path, pts_file):
    f = pts_file([(0.0, 0.0), (0.3, 1.0)])
    proc = subprocess.run([sys.executable, "-m", "theta_lab.cli", "ratio", f], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["results"]["ratio"] == 1.0


def test_stdin_input(tmp_path):
    text = format_points(np.random.default_rng(0).random((4, 2)).tolist())
    proc = subprocess.run([sys.executable, "-m", "theta_lab.cli", "build", "-"], input=text,
                          capture_output=True, text=True)
    assert proc.returncode == 0
