from fractions import Fraction

import pytest

from sourcerec import Mat, NoSolution, SubspaceBasis, kernel, rank, solve, span_of
from sourcerec.linalg import (SpanTracker, column_space, inner, invert,
                              orthogonal_projector, spans_equal, unit_vector,
                              vec_is_zero)

from conftest import random_exact_matrix, random_exact_vector


def F(x):
    return Fraction(x)


def test_inner_conjugates_second_argument():
    from sourcerec import QI
    u = (QI(1, 2),)
    v = (QI(0, 1),)
    assert inner(u, v) == QI(2, -1)


def test_rank_exact_known():
    M = Mat([[F(1), F(2), F(3)], [F(2), F(4), F(6)], [F(0), F(1), F(1)]])
    assert rank(M) == 2
    assert rank(Mat.identity(4)) == 4
    assert rank(Mat.zeros(3, 5)) == 0


def test_rank_float_agrees_with_exact(rng):
    for _ in range(20):
        A = random_exact_matrix(4, rng, -2, 2)
        assert rank(A) == rank(A.to_float())


def test_kernel_vectors_annihilate(rng):
    for _ in range(20):
        A = random_exact_matrix(5, rng, -2, 2)
        ker = kernel(A)
        assert ker.dim == 5 - rank(A)
        for v in ker.vectors:
            assert vec_is_zero(A.matvec(v))


def test_solve_and_invert():
    A = Mat([[F(2), F(1)], [F(1), F(1)]])
    rhs = Mat.from_cols([(F(3), F(2))])
    x = solve(A, rhs)
    assert A @ x == rhs
    assert A @ invert(A) == Mat.identity(2)


def test_solve_raises_on_inconsistent_system():
    A = Mat([[F(1), F(1)], [F(1), F(1)]])
    rhs = Mat.from_cols([(F(1), F(2))])
    with pytest.raises(NoSolution):
        solve(A, rhs)


def test_solve_underdetermined_is_deterministic():
    A = Mat([[F(1), F(1), F(0)], [F(0), F(0), F(1)]])
    rhs = Mat.from_cols([(F(2), F(3))])
    x1 = solve(A, rhs)
    x2 = solve(A, rhs)
    assert x1 == x2
    assert A @ x1 == rhs


def test_power_matches_repeated_product(rng):
    A = random_exact_matrix(3, rng, -2, 2)
    P = Mat.identity(3)
    for n in range(6):
        assert A.power(n) == P
        P = P @ A


def test_adjoint_is_conjugate_transpose():
    from sourcerec import QI
    A = Mat([[QI(1, 2), QI(0, 1)], [QI(3), QI(0, -1)]])
    As = A.adjoint()
    assert As[0, 0] == QI(1, -2)
    assert As[1, 0] == QI(0, -1)
    assert As[0, 1] == QI(3)


def test_subspace_basis_rejects_dependent_vectors():
    with pytest.raises(ValueError):
        SubspaceBasis(3, ((F(1), F(0), F(0)), (F(2), F(0), F(0))), exact=True)


def test_span_of_and_contains():
    vs = [(F(1), F(1), F(0)), (F(0), F(1), F(1)), (F(1), F(2), F(1))]
    S = span_of(vs, 3)
    assert S.dim == 2
    assert S.contains((F(1), F(2), F(1)))
    assert not S.contains((F(0), F(0), F(1)))


def test_spans_equal():
    a = span_of([(F(1), F(0)), (F(0), F(1))], 2)
    b = span_of([(F(1), F(1)), (F(1), F(-1))], 2)
    assert spans_equal(a, b)


def test_orthogonal_projector_properties(rng):
    vs = [random_exact_vector(5, rng) for _ in range(2)]
    W = span_of(vs, 5)
    P = orthogonal_projector(W)
    assert P @ P == P
    assert P.adjoint() == P
    for w in W.vectors:
        assert P.matvec(w) == w


def test_column_space_spans_the_columns(rng):
    A = random_exact_matrix(4, rng, -2, 2)
    cs = column_space(A)
    assert cs.dim == rank(A)
    for j in range(4):
        assert cs.contains(A.col(j))


def test_span_tracker_coordinates():
    t = SpanTracker(3)
    assert t.add((F(1), F(1), F(0))) is None
    assert t.add((F(0), F(1), F(1))) is None
    coords = t.add((F(2), F(3), F(1)))
    assert coords == [F(2), F(1)]
    assert t.add(unit_vector(3, 0)) is None
    assert t.count == 3


def test_span_tracker_float_detects_dependence():
    t = SpanTracker(2, exact=False)
    assert t.add((1.0, 0.0)) is None
    coords = t.add((2.0 + 1e-13, 1e-13))
    assert coords is not None
    assert coords[0] == pytest.approx(2.0)
