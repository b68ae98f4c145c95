import json

from sourcerec.cli import main


def write_json(path, doc):
    path.write_text(json.dumps(doc))
    return str(path)


def diag_problem(sensors=None):
    doc = {
        "mode": "exact",
        "operator": [["2", "0", "0"], ["0", "3", "0"], ["0", "0", "5"]],
        "source_basis": [["1", "0", "0"], ["0", "1", "0"]],
    }
    if sensors is not None:
        doc["sensors"] = sensors
    return doc


def jordan7_problem(omega_idx, sensor_idxs):
    def unit(i):
        return ["1" if k == i else "0" for k in range(7)]
    op = [["0"] * 7 for _ in range(7)]
    for k in range(7):
        op[k][k] = "1"
    for k in (0, 1, 3, 4, 5):
        op[k][k + 1] = "1"
    return {"mode": "exact", "operator": op,
            "source_basis": [unit(omega_idx)],
            "sensors": [unit(i) for i in sensor_idxs]}


def test_check_complete_exit_zero(tmp_path, capsys):
    p = write_json(tmp_path / "p.json",
                   diag_problem(sensors=[["1", "0", "0"], ["0", "1", "0"]]))
    assert main(["check", p]) == 0
    out = capsys.readouterr().out
    assert "COMPLETE" in out
    assert "rank-test" in out


def test_check_incomplete_exit_three(tmp_path, capsys):
    p = write_json(tmp_path / "p.json",
                   jordan7_problem(1, [1]))  # one sensor cannot suffice here
    assert main(["check", p]) == 3
    assert "NOT COMPLETE" in capsys.readouterr().out


def test_check_verbose_prints_conductors(tmp_path, capsys):
    p = write_json(tmp_path / "p.json", jordan7_problem(1, [1, 0]))
    assert main(["check", p, "--method", "general", "--verbose"]) == 0
    out = capsys.readouterr().out
    assert "conductor chain" in out
    assert "(x-1)" in out


def test_check_wrong_method_exit_four(tmp_path, capsys):
    p = write_json(tmp_path / "p.json", jordan7_problem(0, [0]))
    assert main(["check", p, "--method", "rank"]) == 4


def test_parse_error_exit_two(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["check", str(bad)]) == 2
    assert "parse error" in capsys.readouterr().err


def test_place_default_and_out(tmp_path, capsys):
    p = write_json(tmp_path / "p.json", diag_problem())
    out = tmp_path / "sensors.json"
    assert main(["place", p, "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert len(doc["sensors"]) == 2
    assert "COMPLETE" in capsys.readouterr().out


def test_place_search_pairs(tmp_path, capsys):
    p = write_json(tmp_path / "p.json", jordan7_problem(6, []))
    assert main(["place", p, "--search", "--max-l", "2"]) == 0
    out = capsys.readouterr().out
    assert "{6, 7}" in out


def test_place_search_no_hit_exit_three(tmp_path, capsys):
    p = write_json(tmp_path / "p.json", jordan7_problem(6, []))
    assert main(["place", p, "--search", "--max-l", "1"]) == 3


def test_full_pipeline_roundtrip(tmp_path, capsys):
    p = write_json(tmp_path / "p.json",
                   diag_problem(sensors=[["1", "0", "0"], ["0", "1", "0"]]))
    plan = tmp_path / "plan.json"
    meas = tmp_path / "meas.json"
    assert main(["plan", p, "--out", str(plan)]) == 0
    horizon = json.loads(plan.read_text())["T"] - 1
    assert main(["simulate", p, "--omega", '["3/2", "-2/7", "0"]',
                 "--horizon", str(horizon), "--seed", "7",
                 "--out", str(meas)]) == 0
    rec = tmp_path / "rec.json"
    assert main(["recover", "--plan", str(plan), "--measurements", str(meas),
                 "--out", str(rec)]) == 0
    got = json.loads(rec.read_text())
    assert got["omega"] == ["3/2", "-2/7", "0/1"]


def test_simulate_rejects_omega_outside_w(tmp_path, capsys):
    p = write_json(tmp_path / "p.json",
                   diag_problem(sensors=[["1", "0", "0"], ["0", "1", "0"]]))
    assert main(["simulate", p, "--omega", '["0", "0", "1"]',
                 "--horizon", "3", "--out", str(tmp_path / "m.json")]) == 4


def test_recover_insufficient_samples_exit_four(tmp_path, capsys):
    p = write_json(tmp_path / "p.json",
                   diag_problem(sensors=[["1", "0", "0"], ["0", "1", "0"]]))
    plan = tmp_path / "plan.json"
    meas = tmp_path / "meas.json"
    assert main(["plan", p, "--out", str(plan)]) == 0
    assert main(["simulate", p, "--omega", "random", "--horizon", "0",
                 "--out", str(meas)]) == 0
    assert main(["recover", "--plan", str(plan),
                 "--measurements", str(meas)]) == 4


def test_demo_grid_default(capsys):
    assert main(["demo-grid", "--seed", "3"]) == 0
    out = capsys.readouterr().out
    assert "exact recovery from noiseless samples: success" in out
    assert "R" in out


def test_demo_grid_custom_scenario(tmp_path, capsys):
    doc = {"rows": 3, "cols": 4,
           "sources": [{"cell": 2, "intensity": "7/3"},
                       {"cell": 7, "intensity": "-1/2"}]}
    assert main(["demo-grid", "--scenario",
                 write_json(tmp_path / "s.json", doc)]) == 0
    out = capsys.readouterr().out
    assert "recovered 7/3" in out or "recovered" in out
