import io
import json
import os

import pytest

from src.Cli import EXIT_DOMAIN, EXIT_OK, EXIT_USAGE, run_cli


@pytest.fixture
def inputs(tmp_path):
    files = {"maze.txt": "S...\n.##T\n....\n",
             "graph.txt": "0 1 1\n1 3 1\n0 2 2\n2 3 2\n",
             "star.txt": "hub a 1\nhub b 1\nhub c 1\na b 3\nb c 3\na c 3\n",
             "sim.cfg": "radius = 4\nmax_ticks = 20\nfood = 0 0 3 1\nagent = 2 0 1 0 1 0.5\n",
             "cities.txt": "0 0\n1 0\n1 1\n0 1\n"}
    for name, text in files.items():
        (tmp_path / name).write_text(text)
    return lambda name: str(tmp_path / name)


def call(*argv):
    stdout, stderr = io.StringIO(), io.StringIO()
    code = run_cli(list(argv), stdout, stderr)
    return code, stdout.getvalue(), stderr.getvalue()


def test_solve_maze_prints_summary(inputs):
    code, out, _ = call("solve-path", "--maze", inputs("maze.txt"))
    assert code == EXIT_OK
    summary = json.loads(out)
    assert summary["converged"] and summary["spans_terminals"]
    assert summary["surviving_length"] == 4.
    assert summary["terminals"] == ["0:0", "1:3"]


def test_solve_edges_writes_outputs(inputs, tmp_path):
    out_dir = tmp_path / "run"
    code, out, _ = call("solve-path", "--edges", inputs("graph.txt"), "--source", "0", "--sink", "3",
                        "--set", "max_iters=400", "--trace", "--out", str(out_dir))
    assert code == EXIT_OK and out == ""
    with open(out_dir / "manifest.json") as F:
        manifest = json.load(F)
    assert manifest["params"]["max_iters"] == 400
    assert manifest["overrides"] == {"max_iters": "400"}
    with open(out_dir / "summary.json") as F:
        summary = json.load(F)
    assert {(edge["u"], edge["v"]) for edge in summary["surviving_edges"]} == {("0", "1"), ("1", "3")}
    assert os.path.isfile(out_dir / "trace.csv")


def test_outputs_are_byte_identical_across_runs(inputs, tmp_path):
    for name in ("a", "b"):
        call("solve-path", "--edges", inputs("graph.txt"), "--source", "0", "--sink", "3", "--out", str(tmp_path / name))
    assert (tmp_path / "a" / "summary.json").read_bytes() == (tmp_path / "b" / "summary.json").read_bytes()


def test_steiner(inputs):
    code, out, _ = call("steiner", "--edges", inputs("star.txt"), "--terminals", "a", "b", "c", "--seed", "3")
    assert code == EXIT_OK
    assert json.loads(out)["surviving_length"] == 3.


def test_compete_with_trace(inputs, tmp_path):
    out_dir = tmp_path / "sim"
    code, _, _ = call("compete", "--config", inputs("sim.cfg"), "--trace", "--out", str(out_dir))
    assert code == EXIT_OK
    with open(out_dir / "summary.json") as F:
        summary = json.load(F)
    assert summary["termination"] == "food_consumed"
    assert summary["agents"][0]["time_to_first_food"] == 1
    assert os.path.isfile(out_dir / "trace.jsonl")
    assert os.path.isfile(out_dir / "resolved.cfg")
    assert os.path.isfile(out_dir / "snapshots" / "attractant_0.txt")


def test_tsp(inputs):
    code, out, _ = call("tsp", "--instance", inputs("cities.txt"), "--set", "iterations=5", "--set", "field_iters=20")
    assert code == EXIT_OK
    summary = json.loads(out)
    assert summary["best_length"] == pytest.approx(4.)
    assert summary["cities"] == 4


def test_repeat_runs_each_seed(inputs, tmp_path):
    out_dir = tmp_path / "batch"
    code, _, _ = call("tsp", "--instance", inputs("cities.txt"), "--set", "epsilon=0", "--set", "iterations=3",
                      "--seed", "4", "--repeat", "2", "--out", str(out_dir))
    assert code == EXIT_OK
    for seed in (4, 5):
        with open(out_dir / f"seed_{seed}" / "manifest.json") as F:
            assert json.load(F)["seed"] == seed


@pytest.mark.parametrize("argv", [["solve-path"],
                                  ["solve-path", "--maze", "missing.txt"],
                                  ["solve-path", "--maze", "MAZE", "--set", "epsilon=0.3"],
                                  ["solve-path", "--maze", "MAZE", "--trace"],
                                  ["solve-path", "--edges", "GRAPH"],
                                  ["tsp", "--instance", "CITIES", "--repeat", "0"],
                                  ["tsp", "--instance", "CITIES", "--seed", "-1"],
                                  ["fly"]])
def test_usage_errors(inputs, argv):
    argv = [{"MAZE": inputs("maze.txt"), "GRAPH": inputs("graph.txt"), "CITIES": inputs("cities.txt")}.get(arg, arg) for arg in argv]
    code, out, err = call(*argv)
    assert code == EXIT_USAGE
    assert out == ""
    assert err.startswith("usage error:")


def test_domain_errors(inputs):
    code, _, err = call("solve-path", "--edges", inputs("graph.txt"), "--source", "0", "--sink", "9")
    assert code == EXIT_DOMAIN
    assert err.startswith("error:")
    code, _, _ = call("steiner", "--edges", inputs("star.txt"), "--terminals", "a", "b")
    assert code == EXIT_DOMAIN


def test_verbose_logs_progress(inputs):
    _, _, err = call("solve-path", "--maze", inputs("maze.txt"), "--verbose")
    assert "Converged" in err
