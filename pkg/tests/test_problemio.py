import json
from fractions import Fraction

import pytest

from sourcerec import build_plan, simulate
from sourcerec.problemio import (DEFAULT_SCENARIO, ParseError, load_measurements,
                                 load_plan, load_problem, save_measurements,
                                 save_plan, scenario_from_dict)

from conftest import random_exact_vector, shift_off_one, random_exact_matrix


def write_json(path, doc):
    path.write_text(json.dumps(doc))
    return str(path)


def basic_problem_doc():
    return {
        "mode": "exact",
        "operator": [["2", "0"], ["0", "3"]],
        "source_basis": [["1", "0"]],
        "sensors": [["1", "1"]],
    }


def test_load_problem_exact(tmp_path):
    pf = load_problem(write_json(tmp_path / "p.json", basic_problem_doc()))
    assert pf.exact
    assert pf.problem.d == 2
    assert pf.problem.A[0, 0] == Fraction(2)
    assert pf.problem.L == 1


def test_load_problem_float(tmp_path):
    doc = {"mode": "float", "operator": [[2.0, 0.0], [0.0, 3.0]],
           "source_basis": [[1.0, 0.0]],
           "tolerance": {"rank_threshold": 1e-8, "equality_threshold": 1e-8}}
    pf = load_problem(write_json(tmp_path / "p.json", doc))
    assert not pf.exact
    assert pf.problem.A.tol.rank_threshold == 1e-8
    assert pf.problem.sensors is None


def test_mode_is_never_inferred(tmp_path):
    doc = basic_problem_doc()
    del doc["mode"]
    with pytest.raises(ParseError):
        load_problem(write_json(tmp_path / "p.json", doc))


def test_load_problem_rejects_bad_inputs(tmp_path):
    for mutate in [
        lambda d: d.__setitem__("operator", [["1", "0"]]),            # not square
        lambda d: d.__setitem__("source_basis", []),                  # empty W
        lambda d: d.__setitem__("source_basis", [["1", "0"], ["2", "0"]]),  # dependent
        lambda d: d.__setitem__("sensors", [["0", "0"]]),             # zero sensor
        lambda d: d.__setitem__("operator", [["x", "0"], ["0", "1"]]),
    ]:
        doc = basic_problem_doc()
        mutate(doc)
        with pytest.raises(ParseError):
            load_problem(write_json(tmp_path / "p.json", doc))


def test_dimension_cap(tmp_path):
    n = 65
    doc = {"mode": "exact",
           "operator": [["1" if i == j else "0" for j in range(n)] for i in range(n)],
           "source_basis": [["1"] + ["0"] * (n - 1)]}
    with pytest.raises(ParseError):
        load_problem(write_json(tmp_path / "p.json", doc))


def test_measurements_roundtrip(tmp_path, rng):
    A = shift_off_one(random_exact_matrix(3, rng, -2, 2), rng)
    b = random_exact_vector(3, rng)
    _, meas = simulate(A, random_exact_vector(3, rng),
                       random_exact_vector(3, rng), [b], 4)
    path = tmp_path / "m.json"
    save_measurements(path, meas, exact=True)
    loaded, exact = load_measurements(path)
    assert exact
    assert loaded == meas


def test_measurements_reject_gaps(tmp_path):
    doc = {"mode": "exact",
           "series": [{"sensor": 1, "samples": [{"n": 0, "value": "1/1"},
                                                {"n": 2, "value": "2/1"}]}]}
    with pytest.raises(ParseError):
        load_measurements(write_json(tmp_path / "m.json", doc))


def test_plan_roundtrip_lossless(tmp_path, rng):
    from sourcerec import ProblemDef, placement_default
    from sourcerec.linalg import span_of
    A = shift_off_one(random_exact_matrix(4, rng, -2, 2), rng)
    W = span_of([random_exact_vector(4, rng), random_exact_vector(4, rng)], 4)
    if W.dim < 2:
        pytest.skip("degenerate draw")
    problem = ProblemDef(A, W, placement_default(A, W))
    plan = build_plan(problem)
    path = tmp_path / "plan.json"
    save_plan(path, plan)
    loaded = load_plan(path)
    assert loaded.T == plan.T
    assert loaded.alphas == plan.alphas
    assert loaded.dual == plan.dual
    assert loaded.frame == plan.frame
    assert loaded.w_basis == plan.w_basis


def test_grid_scenario_validation():
    s = scenario_from_dict(DEFAULT_SCENARIO)
    assert s.dim == 70
    assert s.operator().rows == 70
    assert s.source_subspace().dim == 4
    with pytest.raises(ParseError):
        scenario_from_dict({"rows": 2, "cols": 2, "sources": [{"cell": 9}]})
    with pytest.raises(ParseError):
        scenario_from_dict({"rows": 2, "cols": 2, "sources": []})
