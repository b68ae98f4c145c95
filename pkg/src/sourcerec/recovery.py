"""Simulation, recovery-plan synthesis, and source reconstruction.

A recovery plan turns a complete sensor set into coefficient tables
alpha[j][l][n] whose combinations of measurements cancel the unknown initial
state and expose the frame coefficients <omega, P_W g_j>; a dual-frame matrix
then inverts those coefficients on W.  Plans are reusable across measurement
series from the same deployment and serialize losslessly.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .completeness import ProblemDef, test_general
from .krylov import conductor_chain, lambda_accumulate
from .linalg import (Mat, inner, invert, rank, solve, vec_add, vec_is_zero,
                     vec_scale, vec_sub, zero_vector)
from .poly import Poly, hat_transform
from .scalars import scalar_is_zero


class NotComplete(Exception):
    """Plan synthesis requires a complete sensor set."""


class InsufficientSamples(Exception):
    """Measurements do not cover the plan's time horizon."""


class OrthogonalSensor(Exception):
    """The eigenvector shortcut needs a sensor not orthogonal to the source."""


@dataclass(frozen=True)
class Trajectory:
    """States x(0..N) of x(n+1) = A* x(n) + omega."""

    x0: tuple
    omega: tuple
    states: tuple


@dataclass(frozen=True)
class MeasurementSeries:
    """Per-sensor sample sequences y_l(0..N)."""

    series: tuple  # series[l][n]

    @property
    def horizon(self) -> int:
        return min(len(s) for s in self.series) - 1


def simulate(A: Mat, x0, omega, sensors, N: int):
    """Run the dynamics and sample it; exact mode cross-checks the closed form.

    The recursion x(n+1) = A* x(n) + omega and the closed form
    y_l(n) = <x0, A^n b_l> + <omega, Lambda_n b_l> are computed independently
    and must agree exactly over the rationals.
    """
    d = A.rows
    x0 = tuple(x0)
    omega = tuple(omega)
    sensors = [tuple(b) for b in sensors]
    if len(x0) != d or len(omega) != d or any(len(b) != d for b in sensors):
        raise ValueError("dimension mismatch in simulate")
    Astar = A.adjoint()
    states = [x0]
    for _ in range(N):
        states.append(vec_add(Astar.matvec(states[-1]), omega))
    series = []
    for b in sensors:
        ys = []
        power = b              # A^n b
        lam = zero_vector(d, exact=A.exact)  # Lambda_n b
        for n in range(N + 1):
            y = inner(states[n], b)
            if A.exact:
                closed = inner(x0, power) + inner(omega, lam)
                if y != closed:
                    raise AssertionError("recursion and closed form disagree")
            ys.append(y)
            lam = vec_add(lam, power)
            power = A.matvec(power)
        series.append(tuple(ys))
    return Trajectory(x0=x0, omega=omega, states=tuple(states)), MeasurementSeries(tuple(series))


@dataclass(frozen=True)
class RecoveryPlan:
    """Coefficient tables and dual frame for source reconstruction."""

    T: int                 # samples y_l(0..T-1) required per sensor
    alphas: tuple          # alphas[j][l][n], each row padded to length T
    frame: tuple           # projected characteristic vectors P_W g_j
    dual: Mat              # d x J matrix, omega = dual @ z
    mu: tuple              # mu[j][l], coefficients of (A-I) g_j over the sensors
    w_basis: tuple         # basis of W (for coordinates of the recovered source)
    exact: bool

    @property
    def J(self) -> int:
        return len(self.alphas)

    @property
    def L(self) -> int:
        return len(self.alphas[0]) if self.alphas else 0


def build_plan(problem: ProblemDef) -> RecoveryPlan:
    """Synthesize recovery coefficients from the conductor chain.

    For each characteristic vector g_j = sum_l p_{j,l}(A) b_l (with
    p_{j,j} = hat(kappa_j), p_{j,i} = -hat(q_j^i)), coefficients in
    Lambda-coordinates follow from the telescoping A^k b = Lambda_{k+1} b -
    Lambda_k b, and the n = 0 coefficient absorbs the (A-I) g_j residue so the
    initial-state term vanishes.
    """
    A = problem.A
    chain = conductor_chain(A, problem.sensors)
    verdict = test_general(problem, chain)
    if not verdict.complete:
        raise NotComplete(verdict.explanation)
    L = problem.L
    zero = Fraction(0) if A.exact else 0.0
    polys = []   # polys[j][l] = p_{j,l}
    for j, e in enumerate(chain.entries):
        row = [Poly.zero()] * L
        row[j] = hat_transform(e.kappa)
        for i, q in enumerate(e.q):
            row[i] = row[i] - hat_transform(q)
        polys.append(row)
    max_deg = max((p.degree for row in polys for p in row), default=0)
    T = max_deg + 2
    alphas = []
    for j, row in enumerate(polys):
        jrow = []
        for ell, p in enumerate(row):
            cs = [p.coeffs[k] if k <= p.degree else zero for k in range(T)]
            a = [zero] * T
            for n in range(1, T):
                a[n] = cs[n - 1] - cs[n]
            a[0] = -chain.entries[j].mu[ell] - cs[0]
            jrow.append(tuple(a))
        alphas.append(tuple(jrow))
    if A.exact:
        _check_plan_tables(A, chain, alphas, T)
    # dual frame on W: z_j = <omega, P_W g_j>, omega = C w with C the W basis
    frame = verdict.witness
    Gf = Mat.from_cols(list(frame), exact=A.exact, tol=A.tol)
    C = problem.W.matrix()
    CsGf = C.adjoint() @ Gf
    if CsGf.rows == CsGf.cols:
        # square case (one frame vector per W dimension): z = (G_f* C) w, so
        # invert that factor directly; the normal-equation route would square
        # the conditioning
        dual = C @ invert(Gf.adjoint() @ C)
    else:
        normal = CsGf @ CsGf.adjoint()
        if A.exact and rank(normal) != problem.K:
            raise AssertionError("frame normal matrix is singular")
        dual = C @ invert(normal) @ CsGf
    return RecoveryPlan(T=T, alphas=tuple(alphas), frame=tuple(frame), dual=dual,
                        mu=tuple(e.mu for e in chain.entries),
                        w_basis=tuple(problem.W.vectors), exact=A.exact)


def _check_plan_tables(A: Mat, chain, alphas, T: int):
    """Exact self-check: initial-state terms cancel and Lambda-sums hit g_j."""
    d = A.rows
    powers = {}
    lams = {}
    for ell, b in enumerate(chain.sensors):
        v = b
        ps, ls = [], []
        for n in range(T):
            ps.append(v)
            ls.append(lambda_accumulate(A, b, n))
            v = A.matvec(v)
        powers[ell] = ps
        lams[ell] = ls
    for j, jrow in enumerate(alphas):
        f = zero_vector(d, exact=A.exact)
        g = zero_vector(d, exact=A.exact)
        for ell, a in enumerate(jrow):
            for n in range(T):
                f = vec_add(f, vec_scale(a[n], powers[ell][n]))
                g = vec_add(g, vec_scale(a[n], lams[ell][n]))
        assert vec_is_zero(f), "initial-state coefficients do not cancel"
        assert vec_is_zero(vec_sub(g, chain.entries[j].g)), \
            "Lambda-coordinates do not reproduce the characteristic vector"


def recover(plan: RecoveryPlan, measurements: MeasurementSeries):
    """Reconstruct the source from measurements covering the plan horizon.

    Returns (omega, coeffs) with coeffs the coordinates of omega in the
    stored W basis.  Independent of the unknown initial state.
    """
    if len(measurements.series) != plan.L:
        raise ValueError("measurement series count does not match the plan")
    if measurements.horizon < plan.T - 1:
        raise InsufficientSamples(
            f"plan needs samples y(0..{plan.T - 1}); have up to y({measurements.horizon})")
    z = []
    for jrow in plan.alphas:
        acc = 0
        for ell, a in enumerate(jrow):
            ys = measurements.series[ell]
            for n in range(plan.T):
                acc = acc + a[n] * ys[n]
        z.append(acc)
    omega = plan.dual.matvec(tuple(z))
    # coordinates in the W basis via normal equations (exact: C has full rank)
    C = Mat.from_cols(list(plan.w_basis), exact=plan.exact)
    Cs = C.adjoint()
    coeffs = solve(Cs @ C, Cs @ Mat.from_cols([omega], exact=plan.exact, tol=C.tol))
    return omega, tuple(coeffs.col(0))


def eigen_shortcut_recover(A: Mat, omega1, b, lam, y0, y1):
    """Two-sample recovery c_1 = (y(1) - lam*y(0)) / <omega_1, b> for an
    eigenvector sensor (A b = conj(lam) b)."""
    from .scalars import conj
    check = vec_sub(A.matvec(tuple(b)), vec_scale(conj(lam), tuple(b)))
    if not vec_is_zero(check, A.tol):
        raise ValueError("sensor is not an eigenvector for the given eigenvalue")
    denom = inner(tuple(omega1), tuple(b))
    if scalar_is_zero(denom, A.tol):
        raise OrthogonalSensor("sensor is orthogonal to the source direction")
    return (y1 - lam * y0) / denom
