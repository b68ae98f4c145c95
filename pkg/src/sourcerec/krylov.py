"""Orbit spaces, minimal annihilators, conductor chains, characteristic vectors.

The orbit space of sensors b_1..b_L under an operator A is the joint Krylov
space span{A^n b_l}.  For each sensor, the conductor chain records the
least-degree monic polynomial driving its orbit into the span of the earlier
orbits, the representation of that boundary vector over the canonical joint
basis, and the resulting characteristic vector whose image under (A - I)
stays inside the sensor span.
"""
from __future__ import annotations

from dataclasses import dataclass

from .linalg import (Mat, SpanTracker, SubspaceBasis, ZeroVector, span_of,
                     vec_is_zero, vec_sub, zero_vector)
from .poly import Poly, eval_on_vector, hat_transform


@dataclass(frozen=True)
class AnnihilatorResult:
    """Minimal annihilating polynomial of b under A with its orbit basis."""

    poly: Poly
    degree: int
    orbit_basis: tuple  # (b, Ab, ..., A^{r-1} b)


def minimal_annihilator(A: Mat, b) -> AnnihilatorResult:
    """Least-degree monic m with m(A) b = 0, found at the first Krylov dependence."""
    if vec_is_zero(b, A.tol):
        raise ZeroVector("minimal annihilator of the zero vector")
    tracker = SpanTracker(A.rows, exact=A.exact, tol=A.tol)
    powers = [tuple(b)]
    v = tuple(b)
    for n in range(A.rows + 1):
        coords = tracker.add(v)
        if coords is not None:
            # A^n b = sum coords[k] A^k b  ->  m = x^n - sum coords[k] x^k
            cs = [-c for c in coords] + [1]
            return AnnihilatorResult(Poly(cs), n, tuple(powers[:n]))
        v = A.matvec(v)
        powers.append(v)
    raise AssertionError("Krylov iteration failed to terminate")


@dataclass(frozen=True)
class ChainEntry:
    """Per-sensor record of the conductor chain."""

    kappa: Poly           # minimal conductor of b_j into V_j (monic)
    s: int                # deg kappa
    q: tuple              # representation polynomials q_j^i, i < j, deg q_j^i < s_i
    g: tuple              # characteristic vector
    mu: tuple             # coefficients of (A - I) g_j over b_1..b_L


@dataclass(frozen=True)
class KrylovChain:
    A: Mat
    sensors: tuple        # b_1..b_L in processing order
    entries: tuple        # ChainEntry per sensor
    joint_basis: tuple    # canonical basis vectors A^n b_j of Z(A;b_1..b_L)
    joint_tags: tuple     # (sensor index, power) per joint basis vector

    @property
    def L(self) -> int:
        return len(self.sensors)

    def characteristic_vectors(self):
        return tuple(e.g for e in self.entries)


def conductor_chain(A: Mat, sensors) -> KrylovChain:
    """Process b_1..b_L in order, building conductors, representations and g_j.

    The canonical joint basis extends {b_1, ..., A^{s_1-1} b_1} with powers of
    each later sensor up to its conductor degree, which pins down the unique
    representation polynomials with deg q_j^i < s_i.
    """
    sensors = [tuple(b) for b in sensors]
    d = A.rows
    tracker = SpanTracker(d, exact=A.exact, tol=A.tol)
    basis_vectors = []
    basis_tags = []   # (sensor index, power)
    entries = []
    for j, b in enumerate(sensors):
        if vec_is_zero(b, A.tol):
            raise ZeroVector(f"sensor {j + 1} is the zero vector")
        v = b
        kappa = None
        coords = None
        own_powers = []
        for n in range(d + 1):
            coords = tracker.add(v)
            if coords is not None:
                cs = [0] * (n + 1)
                cs[n] = 1
                for (bi, bn), c in zip(basis_tags + [(j, k) for k in range(n)],
                                       coords, strict=True):
                    if bi == j:
                        cs[bn] = -c
                kappa = Poly(cs)
                break
            own_powers.append((v, n))
            v = A.matvec(v)
        assert kappa is not None, "conductor search failed to terminate"
        s = kappa.degree
        # q_j^i read off from the dependence coordinates over earlier sensors
        qs = []
        for i in range(j):
            qc = [0] * d
            for (bi, bn), c in zip(basis_tags, coords[:len(basis_tags)], strict=True):
                if bi == i:
                    qc[bn] = c
            qs.append(Poly(qc))
        g = eval_on_vector(hat_transform(kappa), A, b)
        for i, q in enumerate(qs):
            g = vec_sub(g, eval_on_vector(hat_transform(q), A, sensors[i]))
        mu = [0] * len(sensors)
        for i, q in enumerate(qs):
            mu[i] = q(1)
        mu[j] = -kappa(1)
        entries.append(ChainEntry(kappa=kappa, s=s, q=tuple(qs), g=tuple(g), mu=tuple(mu)))
        for v, n in own_powers:
            basis_vectors.append(v)
            basis_tags.append((j, n))
    chain = KrylovChain(A=A, sensors=tuple(sensors), entries=tuple(entries),
                        joint_basis=tuple(basis_vectors), joint_tags=tuple(basis_tags))
    if A.exact:
        _check_chain(chain)
    return chain


def _check_chain(chain: KrylovChain):
    """Exact-mode self-check of the defining identities of the chain."""
    A = chain.A
    for j, e in enumerate(chain.entries):
        # kappa_j(A) b_j = sum_i q_j^i(A) b_i
        lhs = eval_on_vector(e.kappa, A, chain.sensors[j])
        for i, q in enumerate(e.q):
            lhs = vec_sub(lhs, eval_on_vector(q, A, chain.sensors[i]))
        assert vec_is_zero(lhs), "conductor representation identity failed"
        # (A - I) g_j = sum_l mu_l b_l
        img = vec_sub(A.matvec(e.g), e.g)
        for c, b in zip(e.mu, chain.sensors):
            img = vec_sub(img, tuple(c * x for x in b))
        assert vec_is_zero(img), "characteristic vector image identity failed"


def characteristic_space(chain: KrylovChain) -> SubspaceBasis:
    """span{g_1..g_L}; has dimension L when the sensors are independent."""
    return span_of(chain.characteristic_vectors(), chain.A.rows,
                   exact=chain.A.exact, tol=chain.A.tol)


def lambda_accumulate(A: Mat, b, n: int):
    """Lambda_n b = sum_{j<n} A^j b (the zero vector for n = 0)."""
    acc = zero_vector(A.rows, exact=A.exact)
    v = tuple(b)
    for _ in range(n):
        acc = tuple(x + y for x, y in zip(acc, v))
        v = A.matvec(v)
    return acc


def augmented_orbit_space(A: Mat, sensors, horizon: int | None = None) -> SubspaceBasis:
    """Basis of span{[A^n b_l ; Lambda_n b_l]} in F^{2d}.

    The span saturates once the horizon reaches deg(m_A); the default
    horizon d is always sufficient.
    """
    d = A.rows
    N = d if horizon is None else horizon
    stacked = []
    for b in sensors:
        v = tuple(b)                       # A^n b
        acc = zero_vector(d, exact=A.exact)  # Lambda_n b
        for _ in range(N + 1):
            stacked.append(v + acc)
            acc = tuple(x + y for x, y in zip(acc, v))
            v = A.matvec(v)
    return span_of(stacked, 2 * d, exact=A.exact, tol=A.tol)
