"""Univariate polynomials over the field, the hat transform, and p(A)b.

Coefficients are stored dense and ascending; the zero polynomial is the
empty coefficient tuple.  Degrees in this package never exceed the ambient
dimension, so density is the simplest faithful representation.
"""
from __future__ import annotations

import math
from fractions import Fraction

from .linalg import Mat
from .scalars import scalar_is_zero


class Poly:
    """Immutable dense univariate polynomial, ascending coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = list(coeffs)
        while cs and not _nonzero(cs[-1]):
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- basics ------------------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    @staticmethod
    def zero() -> "Poly":
        return Poly(())

    @staticmethod
    def constant(c) -> "Poly":
        return Poly((c,))

    @staticmethod
    def x_minus(lam) -> "Poly":
        return Poly((-lam, 1))

    @staticmethod
    def monomial(n: int, c=1) -> "Poly":
        return Poly((0,) * n + (c,))

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return Poly(tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                          for i in range(n)))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __mul__(self, other: "Poly") -> "Poly":
        if self.is_zero() or other.is_zero():
            return Poly.zero()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(tuple(out))

    def scale(self, c) -> "Poly":
        return Poly(tuple(c * a for a in self.coeffs))

    def __divmod__(self, other: "Poly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero polynomial")
        rem = list(self.coeffs)
        d = other.degree
        lead = other.coeffs[-1]
        quot = [0] * max(len(rem) - d, 0)
        for i in range(len(rem) - 1, d - 1, -1):
            if _nonzero(rem[i]):
                f = rem[i] / lead
                quot[i - d] = f
                for j, b in enumerate(other.coeffs):
                    rem[i - d + j] = rem[i - d + j] - f * b
        return Poly(tuple(quot)), Poly(tuple(rem))

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        lead = self.coeffs[-1]
        return Poly(tuple(c / lead for c in self.coeffs))

    # -- evaluation --------------------------------------------------------
    def __call__(self, t):
        """Horner evaluation at a scalar."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def at_matrix(self, A: Mat) -> Mat:
        """p(A) as a matrix, by Horner in A."""
        if A.rows != A.cols:
            raise ValueError("p(A) needs a square matrix")
        n = A.rows
        acc = Mat.zeros(n, n, exact=A.exact, tol=A.tol)
        eye = Mat.identity(n, exact=A.exact, tol=A.tol)
        for c in reversed(self.coeffs):
            acc = acc @ A + eye.scale(_cast(c, A.exact))
        return acc

    def __repr__(self):
        return f"Poly({list(self.coeffs)!r})"


def _nonzero(c) -> bool:
    if isinstance(c, float):
        return c != 0.0
    return bool(c)


def _cast(c, exact: bool):
    if exact and isinstance(c, int):
        return Fraction(c)
    if not exact:
        return float(c)
    return c


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic greatest common divisor by the Euclidean algorithm."""
    a, b = p, q
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_lcm(p: Poly, q: Poly) -> Poly:
    if p.is_zero() or q.is_zero():
        return Poly.zero()
    return ((p * q) // poly_gcd(p, q)).monic()


def hat_transform(p: Poly) -> Poly:
    """(p(x) - p(1)) / (x - 1) by one synthetic-division pass.

    The remainder of dividing p by (x - 1) is p(1), so the quotient is
    exactly the hat transform; no subtraction step is needed.
    """
    if p.degree < 1:
        return Poly.zero()
    cs = p.coeffs
    quot = [0] * p.degree
    acc = cs[-1]
    for i in range(p.degree - 1, -1, -1):
        quot[i] = acc
        acc = acc + cs[i]   # synthetic division at the root 1
    return Poly(tuple(quot))


def eval_on_vector(p: Poly, A: Mat, b):
    """p(A) b using only matrix-vector products (p(A) is never formed)."""
    if A.rows != A.cols:
        raise ValueError("eval_on_vector needs a square matrix")
    if len(b) != A.rows:
        raise ValueError("dimension mismatch between A and b")
    zero = Fraction(0) if A.exact else 0.0
    acc = (zero,) * A.rows
    for c in reversed(p.coeffs):
        acc = tuple(x + _cast(c, A.exact) * e for x, e in zip(A.matvec(acc), b))
    return acc


def hermite_interpolant(nodes) -> Poly:
    """Hermite interpolating polynomial by Newton divided differences.

    nodes: sequence of (lam, derivs) where derivs lists f(lam), f'(lam), ...,
    f^(n-1)(lam); the node lam then has multiplicity n.  Returns the unique
    polynomial of degree < sum(n_i) matching every prescribed derivative.
    """
    lams = [lam for lam, _ in nodes]
    if len(set(lams)) != len(lams):
        raise ValueError("duplicate interpolation nodes")
    z = []       # node list with repetitions
    fval = []    # f at the corresponding node
    derivs = {}  # lam -> deriv list
    for lam, dv in nodes:
        # ints are promoted to Fractions so true division stays exact
        dv = [Fraction(v) if isinstance(v, int) else v for v in dv]
        if not dv:
            raise ValueError("empty derivative list")
        for _ in dv:
            z.append(lam)
            fval.append(dv[0])
        derivs[lam] = dv
    n = len(z)
    # dd[i] holds the current column of divided differences
    dd = list(fval)
    coeffs = [dd[0]]
    for k in range(1, n):
        new = [0] * (n - k)
        for i in range(n - k):
            if z[i + k] == z[i]:
                lam = z[i]
                new[i] = derivs[lam][k] / math.factorial(k)
            else:
                new[i] = (dd[i + 1] - dd[i]) / (z[i + k] - z[i])
        dd = new
        coeffs.append(dd[0])
    # assemble Newton form: sum_k coeffs[k] * prod_{j<k} (x - z[j])
    result = Poly.zero()
    basis = Poly.constant(1)
    for k in range(n):
        result = result + basis.scale(coeffs[k])
        if k + 1 < n:
            basis = basis * Poly.x_minus(z[k])
    return result


# ---------------------------------------------------------------------------
# display

def poly_str(p: Poly, var: str = "x") -> str:
    """Expanded human-readable form, highest degree first."""
    if p.is_zero():
        return "0"
    parts = []
    for k in range(p.degree, -1, -1):
        c = p.coeffs[k]
        if not _nonzero(c):
            continue
        if k == 0:
            term = f"{c}"
        else:
            mag = "" if c == 1 else ("-" if c == -1 else f"{c}*")
            term = f"{mag}{var}" + (f"^{k}" if k > 1 else "")
        parts.append(term)
    out = parts[0]
    for term in parts[1:]:
        out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
    return out


def factored_str(p: Poly, var: str = "x") -> str:
    """Factored display over rational linear factors when possible.

    Splits off every rational root; if a nonlinear factor remains, falls back
    to the expanded form of that factor.
    """
    if p.is_zero():
        return "0"
    if p.degree == 0:
        return f"{p.coeffs[0]}"
    work = p
    lead = work.coeffs[-1]
    factors = []  # (root, multiplicity)
    for root in _rational_roots(work):
        mult = 0
        while True:
            q, r = divmod(work, Poly.x_minus(root))
            if not r.is_zero():
                break
            work = q
            mult += 1
        if mult:
            factors.append((root, mult))
    parts = []
    if lead != 1:
        parts.append(f"{lead}")
    for root, mult in factors:
        if root == 0:
            base = var
        elif root > 0:
            base = f"({var}-{root})"
        else:
            base = f"({var}+{-root})"
        parts.append(base + (f"^{mult}" if mult > 1 else ""))
    rest = work.monic()
    if rest.degree > 0:
        parts.append(f"({poly_str(rest, var)})")
    return "*".join(parts) if parts else "1"


def _rational_roots(p: Poly):
    """Candidate rational roots that actually vanish, for exact polynomials."""
    try:
        cs = [Fraction(c) for c in p.coeffs]
    except (TypeError, ValueError):
        return []
    den = math.lcm(*[c.denominator for c in cs]) if cs else 1
    ints = [int(c * den) for c in cs]
    while ints and ints[0] == 0:
        ints = ints[1:]  # zero root handled by divisor candidates below
    roots = set()
    if not ints:
        return []
    a0, an = abs(ints[0]), abs(ints[-1])
    for pnum in _divisors(a0) | {0}:
        for qden in _divisors(an):
            for cand in (Fraction(pnum, qden), Fraction(-pnum, qden)):
                if p(cand) == 0:
                    roots.add(cand)
    return sorted(roots)


def _divisors(n: int):
    if n == 0:
        return {1}
    out = set()
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.add(i)
            out.add(n // i)
        i += 1
    return out
