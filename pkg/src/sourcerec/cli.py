"""Command line interface.

Exit codes: 0 success / complete, 2 parse error, 3 incomplete or no placement
found, 4 precondition violation (wrong test for the operator, missing
samples).  All reports are deterministic for a fixed input and seed.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from .completeness import (EigenvalueOnePresent, ProblemDef, auto_test,
                           has_eigenvalue_one, placement_default,
                           placement_search, single_source_construct,
                           test_general, test_rank)
from .krylov import conductor_chain
from .linalg import vec_add
from .poly import factored_str
from .problemio import (DEFAULT_SCENARIO, ParseError, load_measurements,
                        load_plan, load_problem, load_scenario,
                        save_measurements, save_plan, scenario_from_dict)
from .recovery import (InsufficientSamples, NotComplete, build_plan, recover,
                       simulate)
from .scalars import format_exact, parse_exact

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INCOMPLETE = 3
EXIT_PRECONDITION = 4


def _render(x, exact: bool) -> str:
    return format_exact(x) if exact else repr(float(x))


def _render_vec(v, exact: bool) -> str:
    return "[" + ", ".join(_render(x, exact) for x in v) + "]"


def _parse_inline_vector(text: str, exact: bool, d: int):
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"bad inline vector {text!r}: {e}") from None
    if not isinstance(raw, list) or len(raw) != d:
        raise ParseError(f"inline vector must be a JSON list of length {d}")
    if exact:
        return tuple(parse_exact(x) for x in raw)
    return tuple(float(x) for x in raw)


def _random_rational_vector(d: int, rng: random.Random, exact: bool):
    if exact:
        return tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 9))
                     for _ in range(d))
    return tuple(rng.uniform(-3.0, 3.0) for _ in range(d))


def _require_sensors(pf) -> ProblemDef:
    if pf.problem.sensors is None:
        raise ParseError("this command needs a problem file with sensors")
    return pf.problem


# ---------------------------------------------------------------------------
# subcommands

def cmd_check(args) -> int:
    pf = load_problem(args.problem)
    problem = _require_sensors(pf)
    method = args.method
    try:
        if method == "rank":
            verdict = test_rank(problem)
        elif method == "general":
            verdict = test_general(problem)
        else:
            verdict = auto_test(problem)
    except EigenvalueOnePresent as e:
        print(f"precondition violation: {e}")
        return EXIT_PRECONDITION
    print(f"operator dimension : {problem.d}")
    print(f"source dimension   : {problem.K}")
    print(f"sensors            : {problem.L}")
    print(f"method             : {verdict.method}")
    print(f"verdict            : {'COMPLETE' if verdict.complete else 'NOT COMPLETE'}")
    print(f"detail             : {verdict.explanation}")
    if args.verbose and verdict.method == "general-test":
        chain = conductor_chain(problem.A, problem.sensors)
        print()
        print("conductor chain")
        print(f"{'j':>3}  {'deg':>3}  conductor")
        for j, e in enumerate(chain.entries):
            print(f"{j + 1:>3}  {e.s:>3}  {factored_str(e.kappa)}")
        print()
        print("projected characteristic vectors")
        for j, g in enumerate(verdict.witness):
            print(f"  P_W g_{j + 1} = {_render_vec(g, pf.exact)}")
    return EXIT_OK if verdict.complete else EXIT_INCOMPLETE


def cmd_place(args) -> int:
    pf = load_problem(args.problem)
    problem = pf.problem
    A, W = problem.A, problem.W
    if args.pool == "standard" or args.pool is None:
        pool = None
    elif args.pool.startswith("file:"):
        with open(args.pool[5:], "r", encoding="utf-8") as fh:
            raw = json.load(fh)
        pool = [_parse_inline_vector(json.dumps(v), pf.exact, problem.d)
                for v in raw]
    else:
        raise ParseError('pool must be "standard" or "file:<path>"')
    if args.search:
        if pool is None:
            d = problem.d
            pool = [tuple((Fraction(1) if pf.exact else 1.0) if i == k else
                          (Fraction(0) if pf.exact else 0.0) for i in range(d))
                    for k in range(d)]
        hits = placement_search(A, W, pool, args.max_l)
        if not hits:
            print(f"no complete subset of size <= {args.max_l} in the pool")
            return EXIT_INCOMPLETE
        print(f"minimal complete subsets (size {len(hits[0])}, pool indices 1-based):")
        for idx in hits:
            print("  {" + ", ".join(str(i + 1) for i in idx) + "}")
        sensors = [pool[i] for i in hits[0]]
    else:
        try:
            if has_eigenvalue_one(A) and problem.K == 1:
                sensors = [single_source_construct(A, W.vectors[0])]
            else:
                sensors = list(placement_default(A, W))
        except EigenvalueOnePresent as e:
            print(f"precondition violation: {e}")
            return EXIT_PRECONDITION
        print(f"constructed {len(sensors)} sensor(s):")
        for ell, b in enumerate(sensors):
            print(f"  b_{ell + 1} = {_render_vec(b, pf.exact)}")
    verdict = test_general(problem.with_sensors(sensors))
    print(f"verification: {'COMPLETE' if verdict.complete else 'NOT COMPLETE'}")
    if args.out:
        doc = {"mode": "exact" if pf.exact else "float",
               "sensors": [[_render(x, pf.exact) if pf.exact else float(x)
                            for x in b] for b in sensors]}
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
        print(f"sensors written to {args.out}")
    return EXIT_OK if verdict.complete else EXIT_INCOMPLETE


def cmd_simulate(args) -> int:
    pf = load_problem(args.problem)
    problem = _require_sensors(pf)
    d = problem.d
    rng = random.Random(args.seed)
    if args.omega == "random":
        coeffs = _random_rational_vector(problem.K, rng, pf.exact)
        omega = problem.d * [Fraction(0) if pf.exact else 0.0]
        omega = tuple(omega)
        for c, w in zip(coeffs, problem.W.vectors):
            omega = vec_add(omega, tuple(c * x for x in w))
    else:
        omega = _parse_inline_vector(args.omega, pf.exact, d)
        if not problem.W.contains(omega):
            print("precondition violation: omega is not in the source subspace")
            return EXIT_PRECONDITION
    if args.x0 == "random":
        x0 = _random_rational_vector(d, rng, pf.exact)
    elif args.x0 is None:
        x0 = tuple([Fraction(0) if pf.exact else 0.0] * d)
    else:
        x0 = _parse_inline_vector(args.x0, pf.exact, d)
    _, measurements = simulate(problem.A, x0, omega, problem.sensors, args.horizon)
    save_measurements(args.out, measurements, pf.exact)
    print(f"simulated {args.horizon + 1} samples per sensor "
          f"({problem.L} sensors) into {args.out}")
    print(f"omega = {_render_vec(omega, pf.exact)}")
    return EXIT_OK


def cmd_plan(args) -> int:
    pf = load_problem(args.problem)
    problem = _require_sensors(pf)
    try:
        plan = build_plan(problem)
    except NotComplete as e:
        print(f"sensor set is not complete: {e}")
        return EXIT_INCOMPLETE
    save_plan(args.out, plan)
    print(f"plan written to {args.out}")
    print(f"samples required per sensor: y(0..{plan.T - 1})")
    print(f"frame vectors: {plan.J}")
    return EXIT_OK


def cmd_recover(args) -> int:
    plan = load_plan(args.plan)
    measurements, m_exact = load_measurements(args.measurements)
    if m_exact != plan.exact:
        print("precondition violation: plan and measurements disagree on mode")
        return EXIT_PRECONDITION
    try:
        omega, coeffs = recover(plan, measurements)
    except InsufficientSamples as e:
        print(f"precondition violation: {e}")
        return EXIT_PRECONDITION
    print(f"omega = {_render_vec(omega, plan.exact)}")
    print("coordinates in the stored basis:")
    for k, c in enumerate(coeffs):
        print(f"  c_{k + 1} = {_render(c, plan.exact)}")
    if args.out:
        doc = {"mode": "exact" if plan.exact else "float",
               "omega": [_render(x, plan.exact) if plan.exact else float(x)
                         for x in omega],
               "coordinates": [_render(c, plan.exact) if plan.exact else float(c)
                               for c in coeffs]}
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
    return EXIT_OK


def _grid_ascii(scenario, sensor_cells, recovered_cells):
    lines = []
    src = {cell for cell, _ in scenario.sources}
    sens = set(sensor_cells)
    rec = set(recovered_cells)
    for r in range(scenario.rows):
        row = []
        for c in range(scenario.cols):
            cell = r * scenario.cols + c + 1
            if cell in src and cell in rec:
                row.append("R")   # source, recovered
            elif cell in src:
                row.append("S")   # source, missed
            elif cell in sens:
                row.append("o")   # sensor support
            else:
                row.append(".")
        lines.append(" ".join(row))
    return "\n".join(lines)


def cmd_demo_grid(args) -> int:
    if args.scenario:
        scenario = load_scenario(args.scenario)
    else:
        scenario = scenario_from_dict(DEFAULT_SCENARIO)
    A = scenario.operator()
    W = scenario.source_subspace()
    d = scenario.dim
    print(f"grid {scenario.rows} x {scenario.cols} ({d} cells), "
          f"{len(scenario.sources)} sources")
    sensors = placement_default(A, W)
    problem = ProblemDef(A, W, tuple(sensors))
    verdict = auto_test(problem)
    print(f"default placement: {verdict.method}, "
          f"{'COMPLETE' if verdict.complete else 'NOT COMPLETE'}")
    if not verdict.complete:
        return EXIT_INCOMPLETE
    plan = build_plan(problem)
    rng = random.Random(args.seed)
    x0 = _random_rational_vector(d, rng, exact=True)
    omega = tuple([Fraction(0)] * d)
    for (cell, c), w in zip(scenario.sources, W.vectors):
        omega = vec_add(omega, tuple(c * x for x in w))
    _, measurements = simulate(A, x0, omega, sensors, plan.T - 1)
    rec_omega, coeffs = recover(plan, measurements)
    ok = all(x == y for x, y in zip(rec_omega, omega))
    rec_cells = [cell for cell, _ in scenario.sources] if ok else []
    sensor_cells = set()
    for b in sensors:
        for i, x in enumerate(b):
            if x != 0:
                sensor_cells.add(i + 1)
    print()
    print("legend: R recovered source, S missed source, o sensor support, . empty")
    print(_grid_ascii(scenario, sensor_cells, rec_cells))
    print()
    print(f"samples per sensor: {plan.T}")
    for (cell, truth), got in zip(scenario.sources, coeffs):
        mark = "ok" if got == truth else "MISMATCH"
        print(f"cell {cell:>3}: true intensity {format_exact(truth)}, "
              f"recovered {format_exact(got)}  [{mark}]")
    if not ok:
        print("recovered source differs from the ground truth")
        return EXIT_INCOMPLETE
    print("exact recovery from noiseless samples: success")
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="sourcerec",
        description="Sensor completeness, placement, and exact source recovery "
                    "for discrete-time linear dynamics.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="decide completeness of a sensor set")
    p.add_argument("problem")
    p.add_argument("--method", choices=["auto", "rank", "general"], default="auto")
    p.add_argument("--verbose", action="store_true",
                   help="print the conductor chain and projected vectors")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("place", help="construct or search for complete sensors")
    p.add_argument("problem")
    p.add_argument("--search", action="store_true",
                   help="search the pool for minimal complete subsets")
    p.add_argument("--pool", default=None,
                   help='"standard" (unit vectors) or "file:<path>"')
    p.add_argument("--max-l", type=int, default=4)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_place)

    p = sub.add_parser("simulate", help="run the dynamics and record samples")
    p.add_argument("problem")
    p.add_argument("--omega", required=True,
                   help='JSON vector in W, or "random"')
    p.add_argument("--x0", default="random",
                   help='JSON vector, "random", or omit for zero')
    p.add_argument("--horizon", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("plan", help="synthesize a reusable recovery plan")
    p.add_argument("problem")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("recover", help="reconstruct the source from samples")
    p.add_argument("--plan", required=True)
    p.add_argument("--measurements", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_recover)

    p = sub.add_parser("demo-grid",
                       help="end-to-end demo on a rectangular drift grid")
    p.add_argument("--scenario", default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_demo_grid)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
