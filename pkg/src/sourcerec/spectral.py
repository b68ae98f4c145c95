"""Spectral projectors onto generalized eigenspaces.

Two routes are provided: a structural one for the eigenvalue 1 (via the
direct-sum decomposition F^d = Ker(A-I)^d + Range(A-I)^d, no factorization
needed), and a factorization-supplied one that builds every projector from
the Hermite interpolant of the indicator function of each eigenvalue.
"""
from __future__ import annotations

from fractions import Fraction

from .krylov import minimal_annihilator
from .linalg import Mat, column_space, kernel, solve, unit_vector
from .poly import Poly, hermite_interpolant, poly_lcm


class BadFactorization(Exception):
    """Supplied eigenvalue factorization does not reproduce m_A."""


def minimal_polynomial(A: Mat) -> Poly:
    """Minimal polynomial of A, as the lcm of the annihilators of e_1..e_d."""
    if A.rows != A.cols:
        raise ValueError("minimal polynomial of a non-square matrix")
    m = Poly.constant(Fraction(1) if A.exact else 1.0)
    for i in range(A.rows):
        m = poly_lcm(m, minimal_annihilator(A, unit_vector(A.rows, i, exact=A.exact)).poly)
        if m.degree == A.rows:
            break
    return m


def spectral_projectors(A: Mat, eigenvalues) -> list[Mat]:
    """Projectors E_lam for the supplied (lam, multiplicity) factorization of m_A.

    Each E_lam is p(A) for the Hermite interpolant p of the indicator of lam
    on the root set of m_A; together they form a partition of unity with
    pairwise products zero.  Raises BadFactorization when the product of
    (x - lam)^n does not equal m_A.
    """
    eigenvalues = [(lam, int(n)) for lam, n in eigenvalues]
    m_A = minimal_polynomial(A)
    prod = Poly.constant(1)
    for lam, n in eigenvalues:
        if n < 1:
            raise BadFactorization("multiplicities must be positive")
        for _ in range(n):
            prod = prod * Poly.x_minus(lam)
    if prod.monic() != m_A:
        raise BadFactorization("supplied factorization does not multiply out to m_A")
    projectors = []
    for i, (lam, n) in enumerate(eigenvalues):
        nodes = []
        for k, (lam_k, n_k) in enumerate(eigenvalues):
            value = 1 if k == i else 0
            nodes.append((lam_k, [value] + [0] * (n_k - 1)))
        p = hermite_interpolant(nodes)
        projectors.append(p.at_matrix(A))
    return projectors


def fitting_projector_eig1(A: Mat) -> Mat:
    """Projector onto Ker(A-I)^d along Range(A-I)^d, computed structurally.

    The zero matrix when 1 is not an eigenvalue; never needs an eigenvalue
    factorization.
    """
    d = A.rows
    M = (A - Mat.identity(d, exact=A.exact, tol=A.tol)).power(d)
    ker = kernel(M)
    if ker.dim == 0:
        return Mat.zeros(d, d, exact=A.exact, tol=A.tol)
    ran = column_space(M)
    if ker.dim + ran.dim != d:
        raise AssertionError("Fitting decomposition dimensions do not add up")
    cols = list(ker.vectors) + list(ran.vectors)
    S = Mat.from_cols(cols, exact=A.exact, tol=A.tol)
    X = solve(S, Mat.identity(d, exact=A.exact, tol=A.tol))
    K = Mat.from_cols(ker.vectors, exact=A.exact, tol=A.tol)
    top = Mat([X.row(i) for i in range(ker.dim)], exact=A.exact, tol=A.tol)
    return K @ top
