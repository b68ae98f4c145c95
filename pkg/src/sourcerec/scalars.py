"""Field scalars: exact rationals, exact Gaussian rationals, and floats.

Exact mode works over the rationals (``fractions.Fraction``) or the Gaussian
rationals (:class:`QI`).  Float mode pairs ``float`` entries with a
:class:`ToleranceProfile` that fixes how rank and equality decisions are made.
The two modes are never mixed silently: matrix operations check that all
operands agree on exactness.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class ToleranceProfile:
    """Thresholds for float-mode decisions.

    rank_threshold is a relative pivot cutoff (pivots below
    rank_threshold * scale count as zero); equality_threshold is an absolute
    cutoff for scalar comparisons.
    """

    rank_threshold: float = 1e-9
    equality_threshold: float = 1e-9

    def __post_init__(self):
        if self.rank_threshold <= 0.0 or self.equality_threshold <= 0.0:
            raise ValueError("tolerances must be strictly positive")
        if self.rank_threshold > 1e-6:
            raise ValueError("rank_threshold must be at most 1e-6")


DEFAULT_TOL = ToleranceProfile()


class QI:
    """Gaussian rational a + b*i with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("QI is immutable")

    @staticmethod
    def _coerce(x):
        if isinstance(x, QI):
            return x
        if isinstance(x, (int, Fraction)):
            return QI(x, 0)
        return None

    def __add__(self, other):
        o = QI._coerce(other)
        if o is None:
            return NotImplemented
        return QI(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = QI._coerce(other)
        if o is None:
            return NotImplemented
        return QI(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = QI._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = QI._coerce(other)
        if o is None:
            return NotImplemented
        return QI(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = QI._coerce(other)
        if o is None:
            return NotImplemented
        den = o.re * o.re + o.im * o.im
        if den == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return QI((self.re * o.re + self.im * o.im) / den,
                  (self.im * o.re - self.re * o.im) / den)

    def __rtruediv__(self, other):
        o = QI._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return QI(-self.re, -self.im)

    def __eq__(self, other):
        o = QI._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def conjugate(self):
        return QI(self.re, -self.im)

    def __repr__(self):
        return f"QI({self.re!s}, {self.im!s})"


def conj(x):
    """Complex conjugate; identity on rationals and floats."""
    if isinstance(x, (QI, complex)):
        return x.conjugate()
    return x


def is_exact_scalar(x) -> bool:
    return isinstance(x, (int, Fraction, QI))


def scalar_is_zero(x, tol: ToleranceProfile | None = None) -> bool:
    if isinstance(x, float):
        t = (tol or DEFAULT_TOL).equality_threshold
        return abs(x) <= t
    return not x if isinstance(x, QI) else x == 0


def abs_mag(x) -> float:
    """Magnitude usable for float pivot selection; exact scalars map through."""
    if isinstance(x, QI):
        return math.hypot(float(x.re), float(x.im))
    return abs(float(x))


def parse_exact(text) -> Fraction:
    """Parse an exact rational from an int or a "p/q" string."""
    if isinstance(text, bool):
        raise ValueError(f"not an exact scalar: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, Fraction):
        return text
    if isinstance(text, str):
        return Fraction(text.strip())
    raise ValueError(f"not an exact scalar: {text!r}")


def format_exact(x) -> str:
    """Serialize an exact rational, always as "p/q"."""
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"
