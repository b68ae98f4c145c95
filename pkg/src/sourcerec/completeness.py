"""Completeness verdicts and sensor constructions.

A sensor set is complete when every source in the subspace W can be recovered
from finitely many space-time samples regardless of the unknown initial
state.  When 1 is not an eigenvalue of the operator a rank test decides this
directly; in general the verdict comes from projecting the characteristic
vectors of the conductor chain onto W.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .krylov import KrylovChain, conductor_chain, minimal_annihilator
from .linalg import (Mat, NoSolution, SubspaceBasis, ZeroVector, inner, kernel,
                     orthogonal_projector, rank, scalar_is_zero, solve, span_of,
                     vec_is_zero, vec_sub)
from .poly import eval_on_vector, hat_transform
from .spectral import fitting_projector_eig1


class EigenvalueOnePresent(Exception):
    """The fast rank test requires 1 not to be an eigenvalue of A."""


class NotRecoverable(Exception):
    """No single complete observational vector exists for this source."""


@dataclass(frozen=True)
class ProblemDef:
    """Operator, source subspace, and (optionally) the sensor set."""

    A: Mat
    W: SubspaceBasis
    sensors: tuple | None = None

    def __post_init__(self):
        d = self.A.rows
        if self.A.cols != d:
            raise ValueError("operator must be square")
        if self.W.ambient_dim != d:
            raise ValueError("source subspace has wrong ambient dimension")
        if self.W.dim < 1:
            raise ValueError("source subspace must have dimension at least 1")
        if self.W.exact != self.A.exact:
            raise ValueError("operator and source subspace disagree on field mode")
        if self.sensors is not None:
            sensors = tuple(tuple(b) for b in self.sensors)
            for b in sensors:
                if len(b) != d:
                    raise ValueError("sensor has wrong dimension")
                if vec_is_zero(b, self.A.tol):
                    raise ZeroVector("sensors must be nonzero")
            object.__setattr__(self, "sensors", sensors)

    @property
    def d(self) -> int:
        return self.A.rows

    @property
    def K(self) -> int:
        return self.W.dim

    @property
    def L(self) -> int:
        return len(self.sensors) if self.sensors is not None else 0

    def sensor_matrix(self) -> Mat:
        if not self.sensors:
            raise ValueError("problem has no sensors")
        return Mat.from_cols(self.sensors, exact=self.A.exact, tol=self.A.tol)

    def with_sensors(self, sensors) -> "ProblemDef":
        return ProblemDef(self.A, self.W, tuple(tuple(b) for b in sensors))

    def projector(self) -> Mat:
        return orthogonal_projector(self.W)


@dataclass(frozen=True)
class Verdict:
    """Outcome of a completeness test, with the witness that justifies it."""

    complete: bool
    method: str           # "rank-test" | "general-test" | "single-source"
    witness: object       # projected vectors, or the rank value
    explanation: str

    def to_dict(self, render=str):
        w = self.witness
        if isinstance(w, (list, tuple)) and w and isinstance(w[0], (list, tuple)):
            w = [[render(x) for x in v] for v in w]
        return {"complete": self.complete, "method": self.method,
                "witness": w, "explanation": self.explanation}


def has_eigenvalue_one(A: Mat) -> bool:
    return kernel(A - Mat.identity(A.rows, exact=A.exact, tol=A.tol)).dim > 0


def test_rank(problem: ProblemDef) -> Verdict:
    """Fast completeness test for 1 not in the spectrum: rank(P_W (A-I)^{-1} B) = K."""
    A = problem.A
    if has_eigenvalue_one(A):
        raise EigenvalueOnePresent("rank test requires 1 not in the spectrum; "
                                   "use the general test")
    B = problem.sensor_matrix()
    X = solve(A - Mat.identity(problem.d, exact=A.exact, tol=A.tol), B)
    projected = problem.projector() @ X
    r = rank(projected)
    complete = r == problem.K
    return Verdict(
        complete=complete, method="rank-test", witness=r,
        explanation=(f"rank of projected solution columns is {r} "
                     f"(need {problem.K} = dim W)"))


def test_general(problem: ProblemDef, chain: KrylovChain | None = None) -> Verdict:
    """General completeness test: L >= K and span{P_W g_j} = W."""
    if chain is None:
        chain = conductor_chain(problem.A, problem.sensors)
    P = problem.projector()
    projected = [P.matvec(g) for g in chain.characteristic_vectors()]
    r = span_of(projected, problem.d, exact=problem.A.exact, tol=problem.A.tol).dim
    complete = problem.L >= problem.K and r == problem.K
    return Verdict(
        complete=complete, method="general-test", witness=tuple(projected),
        explanation=(f"projected characteristic vectors span a {r}-dimensional "
                     f"subspace of W (need {problem.K} = dim W, with L = "
                     f"{problem.L} sensors)"))


def verify_certificate(problem: ProblemDef, g_vectors, M: Mat) -> Verdict:
    """Check a user-supplied certificate (G, M): B M = (A-I) G and span{P_W g_j} = W."""
    A = problem.A
    G = Mat.from_cols([tuple(g) for g in g_vectors], exact=A.exact, tol=A.tol)
    B = problem.sensor_matrix()
    lhs = B @ M
    rhs = (A - Mat.identity(problem.d, exact=A.exact, tol=A.tol)) @ G
    diff = lhs - rhs
    tol = A.tol
    eq_ok = all(scalar_is_zero(diff[i, j], tol)
                for i in range(diff.rows) for j in range(diff.cols))
    P = problem.projector()
    projected = [P.matvec(g) for g in g_vectors]
    span_ok = span_of(projected, problem.d, exact=A.exact, tol=tol).dim == problem.K
    return Verdict(
        complete=eq_ok and span_ok, method="general-test", witness=tuple(projected),
        explanation=(f"certificate relation {'holds' if eq_ok else 'fails'}; "
                     f"projected vectors {'span' if span_ok else 'do not span'} W"))


def auto_test(problem: ProblemDef) -> Verdict:
    """Rank test when 1 is not an eigenvalue, general test otherwise."""
    if has_eigenvalue_one(problem.A):
        return test_general(problem)
    return test_rank(problem)


# ---------------------------------------------------------------------------
# single source (dim W = 1)

def single_vector_test(A: Mat, omega1, b) -> bool:
    """One-sensor completeness test: <omega_1, hat(m_b)(A) b> != 0."""
    if vec_is_zero(b, A.tol):
        raise ZeroVector("sensor is the zero vector")
    m_b = minimal_annihilator(A, b).poly
    g = eval_on_vector(hat_transform(m_b), A, b)
    return not scalar_is_zero(inner(omega1, g), A.tol)


def single_source_exists(A: Mat, omega1) -> bool:
    """Whether any single sensor can recover a source along omega_1.

    Fails exactly when omega_1 lies in Ker(A*-I)^d and is orthogonal to
    Ker(A-I).  Scale-invariant, so omega_1 need not be normalized.
    """
    omega1 = tuple(omega1)
    if vec_is_zero(omega1, A.tol):
        raise ZeroVector("source direction is the zero vector")
    d = A.rows
    eye = Mat.identity(d, exact=A.exact, tol=A.tol)
    adj_ker = kernel((A.adjoint() - eye).power(d))
    in_adj_ker = adj_ker.contains(omega1)
    eig_ker = kernel(A - eye)
    orth = all(scalar_is_zero(inner(omega1, v), A.tol) for v in eig_ker.vectors)
    return not (in_adj_ker and orth)


def single_source_construct(A: Mat, omega1):
    """A complete single sensor for the source direction omega_1.

    Strategy: (I-A) omega_1 when 1 is not an eigenvalue; an eigenvector of A
    for eigenvalue 1 not orthogonal to omega_1 when omega_1 is fixed by E_1*;
    otherwise (A-I)(I-E_1)(I-E_1*) omega_1 with E_1 the Fitting projector.
    """
    omega1 = tuple(omega1)
    if vec_is_zero(omega1, A.tol):
        raise ZeroVector("source direction is the zero vector")
    d = A.rows
    eye = Mat.identity(d, exact=A.exact, tol=A.tol)
    if not has_eigenvalue_one(A):
        b = (eye - A).matvec(omega1)
        return b
    E1 = fitting_projector_eig1(A)
    E1s = E1.adjoint()
    fixed = vec_is_zero(vec_sub(omega1, E1s.matvec(omega1)), A.tol)
    if fixed:
        for v in kernel(A - eye).vectors:
            if not scalar_is_zero(inner(omega1, v), A.tol):
                return v
        raise NotRecoverable("source direction is orthogonal to Ker(A-I) and "
                             "fixed by the adjoint eigenvalue-1 projector")
    b = (A - eye).matvec((eye - E1).matvec(vec_sub(omega1, E1s.matvec(omega1))))
    if not single_vector_test(A, omega1, b):
        raise AssertionError("constructed sensor failed the single-vector test")
    return b


# ---------------------------------------------------------------------------
# placement

def placement_default(A: Mat, W: SubspaceBasis):
    """The guaranteed complete set b_k = (I - A) omega_k (needs 1 off the spectrum)."""
    if has_eigenvalue_one(A):
        raise EigenvalueOnePresent("default placement requires 1 not in the spectrum")
    eye = Mat.identity(A.rows, exact=A.exact, tol=A.tol)
    return tuple((eye - A).matvec(w) for w in W.vectors)


def placement_search(A: Mat, W: SubspaceBasis, pool, max_l: int):
    """All complete subsets of minimal size <= max_l from the candidate pool.

    Subsets are enumerated in size order and lexicographically within a size;
    each subset is tested in its listed order (the verdict does not depend on
    the order).  Returns a list of index tuples into the pool; empty when no
    complete subset of size <= max_l exists.
    """
    pool = [tuple(b) for b in pool]
    found = []
    for size in range(1, max_l + 1):
        for idx in combinations(range(len(pool)), size):
            subset = [pool[i] for i in idx]
            if any(vec_is_zero(b, A.tol) for b in subset):
                continue
            problem = ProblemDef(A, W, tuple(subset))
            if test_general(problem).complete:
                found.append(idx)
        if found:
            return sorted(found)
    return []
