"""Problem, measurement, plan, and grid-scenario files (JSON).

Exact scalars are serialized as "p/q" strings, floats as JSON numbers; the
field mode is a file-level declaration and never inferred from entries.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .completeness import ProblemDef
from .linalg import Mat, SubspaceBasis, ZeroVector
from .recovery import MeasurementSeries, RecoveryPlan
from .scalars import ToleranceProfile, format_exact, parse_exact

MAX_DIM = 64


class ParseError(Exception):
    """Malformed or inconsistent input file."""


def _parse_scalar(x, exact: bool):
    if exact:
        try:
            return parse_exact(x)
        except (ValueError, ZeroDivisionError) as e:
            raise ParseError(f"bad exact scalar {x!r}: {e}") from None
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise ParseError(f"bad float scalar {x!r}")
    return float(x)


def _render_scalar(x, exact: bool):
    return format_exact(x) if exact else float(x)


def _parse_vector(obj, exact: bool, d: int | None = None):
    if not isinstance(obj, list) or not obj:
        raise ParseError(f"expected a nonempty vector, got {obj!r}")
    v = tuple(_parse_scalar(x, exact) for x in obj)
    if d is not None and len(v) != d:
        raise ParseError(f"vector has length {len(v)}, expected {d}")
    return v


def _parse_matrix(obj, exact: bool) -> Mat:
    if not isinstance(obj, list) or not obj:
        raise ParseError("expected a nonempty matrix (list of rows)")
    rows = [[_parse_scalar(x, exact) for x in row] for row in obj]
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise ParseError("ragged matrix rows")
    return Mat(rows, exact=exact)


def _parse_mode(doc) -> bool:
    mode = doc.get("mode")
    if mode not in ("exact", "float"):
        raise ParseError('file must declare "mode": "exact" or "float"')
    return mode == "exact"


def _parse_tolerance(doc) -> ToleranceProfile | None:
    t = doc.get("tolerance")
    if t is None:
        return None
    try:
        return ToleranceProfile(rank_threshold=float(t["rank_threshold"]),
                                equality_threshold=float(t["equality_threshold"]))
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"bad tolerance profile: {e}") from None


@dataclass(frozen=True)
class ProblemFile:
    problem: ProblemDef
    exact: bool
    eigenvalues: tuple | None   # optional (lam, mult) factorization of m_A


def load_problem(path) -> ProblemFile:
    doc = _load_json(path)
    exact = _parse_mode(doc)
    tol = _parse_tolerance(doc)
    if "operator" not in doc:
        raise ParseError('problem file needs an "operator" matrix')
    A = _parse_matrix(doc["operator"], exact)
    if not exact and tol is not None:
        A = Mat(A.data, exact=False, tol=tol)
    d = A.rows
    if A.cols != d:
        raise ParseError("operator must be square")
    if d > MAX_DIM:
        raise ParseError(f"dimension {d} exceeds the supported maximum {MAX_DIM}")
    if "source_basis" not in doc or not doc["source_basis"]:
        raise ParseError('problem file needs a nonempty "source_basis"')
    basis = tuple(_parse_vector(v, exact, d) for v in doc["source_basis"])
    try:
        W = SubspaceBasis(d, basis, exact=exact, tol=A.tol)
    except ValueError as e:
        raise ParseError(str(e)) from None
    sensors = None
    if doc.get("sensors"):
        sensors = tuple(_parse_vector(v, exact, d) for v in doc["sensors"])
    eigenvalues = None
    if doc.get("eigenvalues"):
        eigenvalues = tuple((_parse_scalar(lam, exact), int(n))
                            for lam, n in doc["eigenvalues"])
    try:
        problem = ProblemDef(A, W, sensors)
    except (ValueError, ZeroVector) as e:
        raise ParseError(str(e)) from None
    return ProblemFile(problem=problem, exact=exact, eigenvalues=eigenvalues)


# ---------------------------------------------------------------------------
# measurements

def save_measurements(path, measurements: MeasurementSeries, exact: bool):
    doc = {
        "mode": "exact" if exact else "float",
        "series": [
            {"sensor": ell + 1,
             "samples": [{"n": n, "value": _render_scalar(y, exact)}
                         for n, y in enumerate(ys)]}
            for ell, ys in enumerate(measurements.series)
        ],
    }
    _dump_json(path, doc)


def load_measurements(path) -> tuple[MeasurementSeries, bool]:
    doc = _load_json(path)
    exact = _parse_mode(doc)
    if "series" not in doc or not isinstance(doc["series"], list):
        raise ParseError('measurement file needs a "series" list')
    series = []
    for entry in sorted(doc["series"], key=lambda e: e.get("sensor", 0)):
        samples = entry.get("samples")
        if not isinstance(samples, list):
            raise ParseError("each series entry needs a samples list")
        by_n = {}
        for s in samples:
            try:
                by_n[int(s["n"])] = _parse_scalar(s["value"], exact)
            except (KeyError, TypeError) as e:
                raise ParseError(f"bad sample entry {s!r}: {e}") from None
        if set(by_n) != set(range(len(by_n))):
            raise ParseError("sample indices must cover 0..N without gaps")
        series.append(tuple(by_n[n] for n in range(len(by_n))))
    if not series:
        raise ParseError("measurement file has no series")
    return MeasurementSeries(tuple(series)), exact


# ---------------------------------------------------------------------------
# plans

def save_plan(path, plan: RecoveryPlan):
    exact = plan.exact
    doc = {
        "mode": "exact" if exact else "float",
        "T": plan.T,
        "alphas": [[[_render_scalar(a, exact) for a in arow] for arow in jrow]
                   for jrow in plan.alphas],
        "frame": [[_render_scalar(x, exact) for x in v] for v in plan.frame],
        "dual": [[_render_scalar(x, exact) for x in row] for row in plan.dual.data],
        "mu": [[_render_scalar(m, exact) for m in row] for row in plan.mu],
        "w_basis": [[_render_scalar(x, exact) for x in v] for v in plan.w_basis],
    }
    _dump_json(path, doc)


def load_plan(path) -> RecoveryPlan:
    doc = _load_json(path)
    exact = _parse_mode(doc)
    try:
        T = int(doc["T"])
        alphas = tuple(tuple(tuple(_parse_scalar(a, exact) for a in arow)
                             for arow in jrow) for jrow in doc["alphas"])
        frame = tuple(_parse_vector(v, exact) for v in doc["frame"])
        dual = _parse_matrix(doc["dual"], exact)
        mu = tuple(tuple(_parse_scalar(m, exact) for m in row) for row in doc["mu"])
        w_basis = tuple(_parse_vector(v, exact) for v in doc["w_basis"])
    except (KeyError, TypeError) as e:
        raise ParseError(f"bad plan file: {e}") from None
    return RecoveryPlan(T=T, alphas=alphas, frame=frame, dual=dual, mu=mu,
                        w_basis=w_basis, exact=exact)


# ---------------------------------------------------------------------------
# grid scenarios

@dataclass(frozen=True)
class GridScenario:
    """Rectangular pollutant grid with a per-row nilpotent drift operator."""

    rows: int
    cols: int
    sources: tuple          # (cell, intensity), cells 1-based row-major
    sensor_cells: tuple | None

    @property
    def dim(self) -> int:
        return self.rows * self.cols

    def operator(self) -> Mat:
        """Block-diagonal nilpotent shift: the adjoint moves mass one cell
        toward the row start each step."""
        d = self.dim
        zero, one = Fraction(0), Fraction(1)
        m = [[zero] * d for _ in range(d)]
        for r in range(self.rows):
            base = r * self.cols
            for c in range(self.cols - 1):
                m[base + c + 1][base + c] = one   # A e_k = e_{k+1} within a row
        return Mat(m, exact=True)

    def source_subspace(self) -> SubspaceBasis:
        d = self.dim
        basis = []
        for cell, _ in self.sources:
            v = [Fraction(0)] * d
            v[cell - 1] = Fraction(1)
            basis.append(tuple(v))
        return SubspaceBasis(d, tuple(basis), exact=True)

    def intensities(self):
        return tuple(c for _, c in self.sources)


def load_scenario(path) -> GridScenario:
    doc = _load_json(path)
    return scenario_from_dict(doc)


def scenario_from_dict(doc) -> GridScenario:
    try:
        rows = int(doc["rows"])
        cols = int(doc["cols"])
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"bad grid scenario: {e}") from None
    if rows < 1 or cols < 1 or rows * cols > 4 * MAX_DIM:
        raise ParseError("grid dimensions out of range")
    d = rows * cols
    sources = []
    for s in doc.get("sources", []):
        try:
            cell = int(s["cell"])
            intensity = parse_exact(s.get("intensity", "1/1"))
        except (KeyError, TypeError, ValueError) as e:
            raise ParseError(f"bad source entry {s!r}: {e}") from None
        if not 1 <= cell <= d:
            raise ParseError(f"source cell {cell} outside the grid")
        sources.append((cell, intensity))
    if not sources:
        raise ParseError("grid scenario needs at least one source")
    sensor_cells = None
    if doc.get("sensors"):
        sensor_cells = tuple(int(c) for c in doc["sensors"])
        for c in sensor_cells:
            if not 1 <= c <= d:
                raise ParseError(f"sensor cell {c} outside the grid")
    return GridScenario(rows=rows, cols=cols, sources=tuple(sources),
                        sensor_cells=sensor_cells)


DEFAULT_SCENARIO = {
    "rows": 7,
    "cols": 10,
    "sources": [
        {"cell": 14, "intensity": "3/2"},
        {"cell": 19, "intensity": "-2/7"},
        {"cell": 23, "intensity": "5/3"},
        {"cell": 34, "intensity": "4/1"},
    ],
}


# ---------------------------------------------------------------------------

def _load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise ParseError(f"cannot read {path}: {e}") from None


def _dump_json(path, doc):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")
