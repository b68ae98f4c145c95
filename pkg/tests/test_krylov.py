from fractions import Fraction

import pytest

from sourcerec import (Mat, ZeroVector, augmented_orbit_space,
                       characteristic_space, conductor_chain,
                       lambda_accumulate, minimal_annihilator)
from sourcerec.linalg import span_of, vec_is_zero, vec_sub, zero_vector
from sourcerec.poly import Poly, eval_on_vector

from conftest import e, j7, jordan, random_exact_matrix, random_exact_vector


def F(x):
    return Fraction(x)


def test_minimal_annihilator_jordan_chain_degrees():
    A = j7()
    for i, expected in enumerate([1, 2, 3, 1, 2, 3, 4]):
        r = minimal_annihilator(A, e(7, i))
        assert r.degree == expected
        assert r.poly(F(1)) == 0
        assert vec_is_zero(eval_on_vector(r.poly, A, e(7, i)))
        assert len(r.orbit_basis) == expected


def test_minimal_annihilator_is_monic_and_minimal(rng):
    for _ in range(10):
        A = random_exact_matrix(4, rng, -2, 2)
        b = random_exact_vector(4, rng)
        if vec_is_zero(b):
            continue
        r = minimal_annihilator(A, b)
        assert r.poly.coeffs[-1] == 1
        # no proper monic divisor of smaller degree annihilates b
        orbit = span_of(r.orbit_basis, 4)
        assert orbit.dim == r.degree


def test_minimal_annihilator_rejects_zero():
    with pytest.raises(ZeroVector):
        minimal_annihilator(Mat.identity(3), zero_vector(3))


def test_lambda_accumulate_identity(rng):
    # (A - I) Lambda_k b = (A^k - I) b
    A = random_exact_matrix(4, rng, -2, 2)
    eye = Mat.identity(4)
    b = random_exact_vector(4, rng)
    for k in range(6):
        lhs = (A - eye).matvec(lambda_accumulate(A, b, k))
        rhs = (A.power(k) - eye).matvec(b)
        assert lhs == rhs
    assert lambda_accumulate(A, b, 0) == zero_vector(4)


def test_conductor_chain_known_example():
    A = j7()
    chain = conductor_chain(A, (e(7, 2), e(7, 1)))
    # m_{e3} = (x-1)^3 is the first conductor; e2 lies in Z(A; e3)
    assert chain.entries[0].s == 3
    assert chain.entries[1].s == 0
    assert chain.entries[1].kappa == Poly.constant(F(1))
    # q degree bound: deg q_2^1 < s_1
    for q in chain.entries[1].q:
        assert q.degree < chain.entries[0].s


def test_conductor_chain_identities_random(rng):
    for _ in range(10):
        A = random_exact_matrix(5, rng, -2, 2)
        sensors = [random_exact_vector(5, rng) for _ in range(2)]
        if any(vec_is_zero(b) for b in sensors):
            continue
        chain = conductor_chain(A, sensors)  # exact mode self-checks identities
        for j, entry in enumerate(chain.entries):
            # kappa_j is monic unless the orbit is already covered
            if entry.s > 0:
                assert entry.kappa.coeffs[-1] == 1
            for i, q in enumerate(entry.q):
                assert q.degree < chain.entries[i].s or q.is_zero()
            # (A - I) g_j lies in the sensor span
            img = vec_sub(A.matvec(entry.g), entry.g)
            assert span_of(list(sensors) + [img], 5).dim == span_of(sensors, 5).dim


def test_characteristic_space_dimension():
    A = j7()
    chain = conductor_chain(A, (e(7, 2), e(7, 1), e(7, 0)))
    assert characteristic_space(chain).dim <= 3


def test_augmented_orbit_dim_single_vector():
    A = j7()
    for i, deg in enumerate([1, 2, 3, 1, 2, 3, 4]):
        O = augmented_orbit_space(A, [e(7, i)])
        assert O.dim == deg + 1


def test_augmented_orbit_upper_bound(rng):
    d = 5
    A = random_exact_matrix(d, rng, -2, 2)
    sensors = [random_exact_vector(d, rng) for _ in range(3)]
    sensors = [b for b in sensors if not vec_is_zero(b)]
    O = augmented_orbit_space(A, sensors)
    assert O.dim <= min(d + len(sensors), 2 * d)


def test_augmented_orbit_saturates_at_minimal_degree():
    A = jordan([(F(2), 2), (F(3), 1)])
    b = (F(1), F(1), F(1))
    full = augmented_orbit_space(A, [b])
    short = augmented_orbit_space(A, [b], horizon=minimal_annihilator(A, b).degree)
    assert full.dim == short.dim
