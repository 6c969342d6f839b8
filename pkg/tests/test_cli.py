import json
import subprocess
import sys

import pytest

from hdgames import cli
from hdgames.config import ExperimentConfig, ValidationError, build_target, build_tree


def run(argv, inputs=()):
    out = []
    feed = iter(inputs)

    def input_fn(prompt):
        try:
            return next(feed)
        except StopIteration:
            raise EOFError from None

    code = cli.main(argv, input_fn, out.append)
    return code, out


def last_json(out):
    return json.loads(out[-1])


def test_estimate_dim():
    code, out = run(["estimate-dim", "--set", "F_M", "--M", "multiples:3", "--depths", "9", "45"])
    assert code == 0
    assert abs(last_json(out)["slope"] - 1 / 3) <= 0.02


def test_measure_reports_exact_expression():
    code, out = run(["measure", "--set", "Y0", "--delta", "1/2", "--depth", "7"])
    assert code == 0
    res = last_json(out)
    assert abs(res["value"]["float"] - 2**-0.5) < 1e-12


def test_solve_cantor():
    code, out = run(["solve", "--set", "cantor_WC", "--cap", "32"])
    assert code == 0
    res = last_json(out)
    assert res["winner"] == "PlayerII" and res["strategy_verified"] and res["depth"] == 4


def test_solve_tree_by_name():
    code, out = run(["solve", "--set", '{"set":"cylinder","prefix":[1,0]}', "--tree", "forced_zero", "--depth", "2"])
    assert code == 0 and last_json(out)["winner"] == "PlayerI"


def test_packing():
    code, out = run(["packing", "--d", "2"])
    res = last_json(out)
    assert code == 0 and res["pack"] == 9 and res["bound"] == 64 and res["pass"]


def test_dimgame_sandwich():
    code, out = run(["dimgame", "--M", "odds", "--steps", "2000", "--sandwich"])
    assert code == 0
    res = last_json(out)
    assert abs(res["lower"] - 0.5) <= 0.01 and abs(res["upper"] - 0.5) <= 0.01


def test_schmidt_threshold_and_transcript():
    code, out = run(["schmidt", "--model", "madic", "--madic", "4", "1", "--threshold", "4", "--steps", "4",
                     "--target", "none"])
    assert code == 0
    res = last_json(out)
    assert res["threshold"]["exact"] == "1/2"
    assert len(res["transcript"]["balls"]) == 5


def test_exit_codes_validation():
    assert run(["estimate-dim", "--set", "nonsense"])[0] == 2
    assert run(["mc", "--set", "Y0", "--depth", "4", "--trials", "10"])[0] == 2
    assert run(["mc", "--set", "Y0", "--depth", "0", "--trials", "10", "--seed", "1"])[0] == 2
    assert run(["verify", "--only", "no-such-row"])[0] == 2
    assert run([])[0] == 2


def test_mc_is_reproducible(tmp_path):
    argv = ["mc", "--set", "cantor_WC", "--depth", "20", "--trials", "300", "--seed", "11"]
    a, b = run(argv)[1], run(argv)[1]
    assert a == b
    c = run(argv[:-1] + ["12"])[1]
    assert c != a


def test_config_round_trip(tmp_path):
    cfg = ExperimentConfig("mc", {"set": "Y0", "depth": 10, "trials": 50, "strategy": "zero"}, 3)
    assert ExperimentConfig.from_json(cfg.to_json()) == cfg
    path = tmp_path / "cfg.json"
    out = tmp_path / "report.json"
    path.write_text(json.dumps({**cfg.to_json(), "out": str(out)}))
    code, printed = run(["run", str(path)])
    assert code == 0
    report = json.loads(out.read_text())
    assert report["experiment"] == "mc" and report["inputs"]["seed"] == 3
    assert report["results"]["survival"] == 1.0
    again = cli.run_config(ExperimentConfig.from_json(json.loads(path.read_text())))
    assert again["results"] == report["results"]


def test_config_validation():
    with pytest.raises(ValidationError):
        ExperimentConfig.from_json({"set": "Y0"})
    with pytest.raises(ValidationError):
        ExperimentConfig("mc", {}, -1).validate()
    with pytest.raises(ValidationError):
        build_target({"set": "F_M"})
    with pytest.raises(ValidationError):
        build_tree("example_9_9")
    with pytest.raises(ValidationError):
        build_target({"set": "W_delta", "M": {"kind": "explicit", "members": [3]}})


def test_interactive_tree_play_survives_with_zeros():
    code, out = run(["play", "--set", "Y0", "--depth", "8", "--seed", "1"], inputs=["0"] * 4)
    assert code == 0
    assert "verdict Outside" not in "\n".join(out)
    assert out[-1].startswith("final position")


def test_interactive_tree_play_rejects_bad_input_then_dies():
    code, out = run(["play", "--set", "Y0", "--depth", "2", "--machine", "avoid"], inputs=["x", "5", "1"])
    assert code == 0
    text = "\n".join(out)
    assert "enter one of" in text and "not available" in text
    assert out[-1].endswith("verdict Outside")


def test_interactive_tree_play_eof(tmp_path):
    out_file = tmp_path / "play.json"
    code, _ = run(["play", "--set", "Y0", "--depth", "6", "--out", str(out_file)], inputs=["0"])
    rec = json.loads(out_file.read_text())
    assert code == 0 and rec["ended"] == "eof" and len(rec["position"]) == 2


def test_interactive_schmidt():
    code, out = run(["schmidt", "--interactive", "--target", "cantor", "--steps", "4", "--strategyII", "avoid"],
                    inputs=["1", "0"])
    assert code == 0
    text = "\n".join(out)
    assert "[0]" in text and "[1]" in text and "verdict" in text


def test_verify_list_and_only():
    code, out = run(["verify", "--list"])
    assert code == 0 and len(out) == 12
    code, out = run(["verify", "--only", "packing-lemma", "--only", "6"])
    assert code == 0
    assert out[0].startswith("[PASS] packing-lemma")


def test_no_color(monkeypatch):
    monkeypatch.setenv("NO_COLOR", "1")
    assert cli._colour("x", True) == "x"


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "hdgames", "packing", "--d", "1"], capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["pack"] == 3


def test_illegal_move_exit_code(monkeypatch):
    from hdgames.errors import IllegalMove

    def boom(params):
        raise IllegalMove("bad ball", None, "containment")

    monkeypatch.setitem(cli.HANDLERS, "packing", boom)
    code, out = run(["packing"])
    assert code == 3 and "illegal move" in out[-1]
