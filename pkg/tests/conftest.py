import random
from fractions import Fraction

import pytest

from sourcerec import Mat
from sourcerec.linalg import unit_vector


def jordan(blocks, exact=True):
    """Block-diagonal Jordan matrix; blocks = [(eigenvalue, size), ...]."""
    d = sum(s for _, s in blocks)
    zero = Fraction(0) if exact else 0.0
    m = [[zero] * d for _ in range(d)]
    base = 0
    for lam, s in blocks:
        for k in range(s):
            m[base + k][base + k] = lam if exact else float(lam)
            if k + 1 < s:
                m[base + k][base + k + 1] = Fraction(1) if exact else 1.0
        base += s
    return Mat(m, exact=exact)


def j7():
    """7x7 Jordan matrix with eigenvalue-1 blocks of sizes 3 and 4."""
    return jordan([(Fraction(1), 3), (Fraction(1), 4)])


def random_exact_matrix(d, rng, lo=-3, hi=3):
    return Mat([[Fraction(rng.randint(lo, hi)) for _ in range(d)]
                for _ in range(d)], exact=True)


def random_exact_vector(d, rng, lo=-4, hi=4):
    return tuple(Fraction(rng.randint(lo, hi)) for _ in range(d))


def random_unimodular(d, rng, steps=None):
    """Random integer matrix with determinant +-1 (product of shear steps)."""
    m = [[Fraction(1 if i == j else 0) for j in range(d)] for i in range(d)]
    steps = 3 * d if steps is None else steps
    for _ in range(steps):
        i, j = rng.randrange(d), rng.randrange(d)
        if i == j:
            continue
        c = Fraction(rng.randint(-2, 2))
        for k in range(d):
            m[i][k] += c * m[j][k]
    return Mat(m, exact=True)


def shift_off_one(A, rng):
    """Add small rational multiples of I until 1 is not an eigenvalue."""
    from sourcerec import has_eigenvalue_one
    eye = Mat.identity(A.rows, exact=True)
    while has_eigenvalue_one(A):
        A = A + eye.scale(Fraction(rng.randint(1, 5), 7))
    return A


def e(d, i, exact=True):
    return unit_vector(d, i, exact=exact)


@pytest.fixture
def rng():
    return random.Random(20240817)
