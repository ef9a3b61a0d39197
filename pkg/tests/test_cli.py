import json

import numpy as np
import pytest

from glwalk.cli import main
from glwalk.graphs import SignedWeightedGraph, write_graph

CSV_HEADER = "time,p_a,p_b,p_c,p_d,p_e,p_abc,p_ab"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_simulate_csv(tmp_path, capsys):
    out = tmp_path / "series.csv"
    code, stdout, _ = run(capsys, "simulate", "--n", "60", "--alpha", "4",
                          "--weight", "1", "--t-max", "40", "--dt", "0.5",
                          "--out", str(out))
    assert code == 0
    assert "peak p_a" in stdout
    lines = out.read_text().splitlines()
    assert lines[0] == CSV_HEADER
    assert len(lines) == 82  # header + 81 grid points
    row0 = [float(x) for x in lines[1].split(",")]
    assert row0[0] == 0.0
    assert row0[1] == pytest.approx(1.0 / 60.0)  # uniform start
    # probabilities sum to 1 on every row
    rows = np.array([[float(x) for x in ln.split(",")] for ln in lines[1:]])
    assert np.abs(rows[:, 1:6].sum(axis=1) - 1.0).max() < 1e-9
    assert np.abs(rows[:, 6] - rows[:, 1:4].sum(axis=1)).max() < 1e-12
    assert np.abs(rows[:, 7] - rows[:, 1:3].sum(axis=1)).max() < 1e-12


def test_simulate_deterministic(tmp_path, capsys):
    args = ("simulate", "--n", "60", "--alpha", "4", "--weight", "wminus",
            "--t-max", "30", "--dt", "0.5")
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(capsys, *args, "--out", str(a))[0] == 0
    assert run(capsys, *args, "--out", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_simulate_json_two_stage(tmp_path, capsys):
    out = tmp_path / "series.json"
    code, _, _ = run(capsys, "simulate", "--n", "60", "--alpha", "4",
                     "--weight", "wminus", "--stage2-weight", "1",
                     "--stage2-rule", "ab-peak", "--t-max", "80",
                     "--dt", "0.25", "--format", "json", "--out", str(out))
    assert code == 0
    payload = json.loads(out.read_text())
    meta = payload["metadata"]
    assert meta["n"] == 60
    assert meta["weight"] == pytest.approx(60 / (2 * (4 - 2)))
    assert meta["stage2_weight"] == 1.0
    assert 0.0 < meta["transition_time"] < meta["peak_time"]
    assert meta["peak_p_a"] > 0.5
    assert len(payload["time"]) == len(payload["p_a"])


def test_simulate_explicit_transition(tmp_path, capsys):
    code, stdout, _ = run(capsys, "simulate", "--n", "60", "--alpha", "4",
                          "--weight", "wplus", "--stage2-weight", "1",
                          "--stage2-rule", "at:25.0", "--t-max", "60",
                          "--dt", "0.25", "--format", "json",
                          "--out", str(tmp_path / "s.json"))
    assert code == 0
    assert "peak p_a" in stdout


def test_simulate_full_engine_agrees(tmp_path, capsys):
    args = ("simulate", "--n", "12", "--alpha", "3", "--weight", "2",
            "--t-max", "20", "--dt", "0.5")
    a, b = tmp_path / "red.csv", tmp_path / "full.csv"
    run(capsys, *args, "--engine", "reduced", "--out", str(a))
    run(capsys, *args, "--engine", "full", "--out", str(b))
    ra = np.loadtxt(a, delimiter=",", skiprows=1)
    rb = np.loadtxt(b, delimiter=",", skiprows=1)
    assert np.abs(ra - rb).max() < 1e-10


def test_predict_table(capsys):
    code, stdout, _ = run(capsys, "predict", "--n", "1200")
    assert code == 0
    assert "-600/7" in stdout      # alpha = -5 exact rational
    assert stdout.count("undefined") == 2
    assert "150" in stdout and "300" in stdout
    assert "two-stage plans" in stdout


def test_verify_spin_pass_and_fail(capsys):
    code, stdout, _ = run(capsys, "verify-spin", "--builtin", "fig2",
                          "--weights", "1,-0.5,2,0.25", "--alpha", "3",
                          "--gamma", "0.7", "--marked", "0")
    assert code == 0
    assert stdout.startswith("PASS")
    code, stdout, _ = run(capsys, "verify-spin", "--builtin", "fig2",
                          "--weights", "1,-0.5,2,0.25", "--alpha", "3",
                          "--gamma", "0.7", "--perturb", "1e-3")
    assert code == 3
    assert stdout.startswith("FAIL")


def test_verify_spin_graph_file(tmp_path, capsys):
    g = SignedWeightedGraph(3, [(0, 1, 1.0), (1, 2, -2.0)])
    path = tmp_path / "g.txt"
    write_graph(g, path)
    code, stdout, _ = run(capsys, "verify-spin", "--graph", str(path),
                          "--alpha", "0", "--gamma", "0.5")
    assert code == 0
    assert stdout.startswith("PASS")


def test_verify_spin_seeded_random_weights(capsys):
    code, stdout, _ = run(capsys, "verify-spin", "--builtin", "fig2",
                          "--seed", "11", "--alpha", "-2", "--gamma", "critical")
    assert code == 0
    assert stdout.startswith("PASS")


def test_verify_spin_needs_a_graph(capsys):
    code, _, stderr = run(capsys, "verify-spin", "--alpha", "1")
    assert code == 2
    assert "error" in stderr


def test_sweep(tmp_path, capsys):
    out = tmp_path / "sweep.csv"
    code, _, _ = run(capsys, "sweep", "--n", "20,24", "--alpha", "4",
                     "--weights", "1,wplus", "--t-max", "30", "--dt", "0.5",
                     "--out", str(out))
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "n,alpha,weight,peak_time,peak_p_a"
    assert len(lines) == 5
    first = lines[1].split(",")
    assert first[0] == "20" and float(first[2]) == 1.0


def test_config_errors_exit_2(capsys):
    assert run(capsys, "simulate", "--n", "7", "--alpha", "1",
               "--weight", "1")[0] == 2
    assert run(capsys, "simulate", "--n", "60", "--alpha", "0",
               "--weight", "wplus")[0] == 2
    assert run(capsys, "simulate", "--n", "60", "--alpha", "2",
               "--weight", "wminus")[0] == 2
    assert run(capsys, "simulate", "--n", "60", "--alpha", "1",
               "--weight", "abc")[0] == 2
    assert run(capsys, "simulate", "--n", "60", "--alpha", "1", "--weight", "1",
               "--stage2-weight", "2", "--stage2-rule", "bogus")[0] == 2
    assert run(capsys, "simulate", "--n", "60", "--alpha", "1", "--weight", "1",
               "--stage2-weight", "2", "--stage2-rule", "at:1e9")[0] == 2
    assert run(capsys, "verify-spin", "--builtin", "barbell:40,1",
               "--alpha", "1")[0] == 2
