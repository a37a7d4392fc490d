"""Exact rational kernel.

Catalan numbers, the scaled normalization constants of the ultraspherical
family, and the polynomial pair (Q_n, P_n) that turns the semicircle Cauchy
transform into the transform of the n-th family member.  Everything here is
computed in exact integer/rational arithmetic; floats only appear when a
polynomial is evaluated at a complex point.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

__all__ = [
    "RationalPolynomial",
    "catalan",
    "odd_double_factorial",
    "scaled_norm_const",
    "build_Q",
    "build_Q_binomial",
    "build_P",
    "build_P_recurrence",
    "check_index",
]


def check_index(n: int) -> int:
    """Validate a family index (positive integer) and return it."""
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ValueError(f"family index must be a positive integer, got {n!r}")
    return n


def catalan(j: int) -> int:
    """j-th Catalan number C_j = (2j)! / (j! (j+1)!)."""
    if j < 0:
        raise ValueError("Catalan index must be nonnegative")
    return math.comb(2 * j, j) // (j + 1)


def odd_double_factorial(n: int) -> int:
    """(2n-1)!! = 1*3*5*...*(2n-1), with the empty product for n = 0."""
    return math.prod(range(1, 2 * n, 2))


class RationalPolynomial:
    """Immutable polynomial with exact Fraction coefficients, ascending order.

    Supports only the arithmetic the kernel needs: addition, multiplication
    by polynomials and scalars, and Horner evaluation (exact for rational
    arguments, floating point for real/complex ones).
    """

    __slots__ = ("coeffs", "_float_coeffs")

    def __init__(self, coeffs=()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)
        self._float_coeffs = None

    @property
    def degree(self):
        """Degree; -inf for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else float("-inf")

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, RationalPolynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RationalPolynomial([other])
        if not isinstance(other, RationalPolynomial):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return RationalPolynomial(out)

    __radd__ = __add__

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalPolynomial([other * c for c in self.coeffs])
        if not isinstance(other, RationalPolynomial):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return RationalPolynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RationalPolynomial(out)

    __rmul__ = __mul__

    def __call__(self, x):
        """Horner evaluation: exact for int/Fraction x, floating otherwise."""
        if isinstance(x, (int, Fraction)):
            acc = Fraction(0)
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc
        if self._float_coeffs is None:
            self._float_coeffs = tuple(complex(c) for c in self.coeffs)
        acc = 0.0 + 0.0j
        for c in reversed(self._float_coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self):
        if not self.coeffs:
            return "RationalPolynomial(0)"
        terms = " + ".join(f"({c})*X^{j}" for j, c in enumerate(self.coeffs) if c)
        return f"RationalPolynomial({terms})"


@lru_cache(maxsize=None)
def scaled_norm_const(n: int) -> Fraction:
    """The rational constant n! / (2^(n-1) * (2n-1)!!).

    This is 2*pi times the normalizer of the n-th ultraspherical density;
    scaling by 2*pi removes pi from the whole combinatorial layer.
    """
    check_index(n)
    return Fraction(math.factorial(n), 2 ** (n - 1) * odd_double_factorial(n))


@lru_cache(maxsize=None)
def build_Q(n: int) -> RationalPolynomial:
    """Q_n(X), the compact product form: scaled constant times (4 - X)^(n-1)."""
    check_index(n)
    base = RationalPolynomial([4, -1])
    poly = RationalPolynomial([1])
    for _ in range(n - 1):
        poly = poly * base
    return scaled_norm_const(n) * poly


@lru_cache(maxsize=None)
def build_Q_binomial(n: int) -> RationalPolynomial:
    """Q_n(X) assembled term-by-term from its binomial expansion."""
    check_index(n)
    coeffs = [
        Fraction((-1) ** j * 4 ** (n - 1 - j) * math.comb(n - 1, j))
        for j in range(n)
    ]
    return scaled_norm_const(n) * RationalPolynomial(coeffs)


@lru_cache(maxsize=None)
def build_P(n: int) -> RationalPolynomial:
    """P_n(X) via the Catalan-weighted double sum; the empty sum gives 0."""
    check_index(n)
    fact = math.factorial(n - 1)
    coeffs = []
    for k in range(1, n):
        acc = Fraction(0)
        for j in range(1, n - k + 1):
            acc += Fraction(
                (-1) ** (j + k) * 4 ** (n - j - k) * fact * catalan(j - 1),
                math.factorial(j + k - 1) * math.factorial(n - j - k),
            )
        coeffs.append(acc)
    return scaled_norm_const(n) * RationalPolynomial(coeffs)


@lru_cache(maxsize=None)
def build_P_recurrence(n: int) -> RationalPolynomial:
    """P_n(X) grown from P_1 = 0 by the family recurrence.

    Independent cross-check of the double sum in :func:`build_P`:
    P_{k+1} = (k+1)/(2(2k+1)) * ((4 - X) * P_k + 1).
    """
    check_index(n)
    four_minus_x = RationalPolynomial([4, -1])
    poly = RationalPolynomial()
    for k in range(1, n):
        poly = Fraction(k + 1, 2 * (2 * k + 1)) * (four_minus_x * poly + 1)
    return poly
