"""Density-level facts about the ultraspherical family.

Closed-form densities, Stieltjes inversion, exact half-integer Beta
arithmetic for the push-forward identities, moments, and the sup-norm
convergence report toward the Gaussian.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .config import DomainError
from .exact import check_index, odd_double_factorial, scaled_norm_const
from .transforms import gn_closed

__all__ = [
    "DensityGrid",
    "BetaParams",
    "ConvergenceReport",
    "density_ultra",
    "stieltjes_invert",
    "beta_density",
    "check_beta_symmetric",
    "check_beta_square",
    "moment",
    "poincare_report",
]


@dataclass(frozen=True)
class DensityGrid:
    """Sampled density: abscissae and nonnegative values of equal length."""

    abscissae: tuple
    values: tuple

    def __post_init__(self):
        if len(self.abscissae) != len(self.values):
            raise ValueError("abscissae and values must have equal length")

    def to_csv(self) -> str:
        lines = ["x,value"]
        for x, v in zip(self.abscissae, self.values):
            lines.append(f"{x:.17g},{v:.17g}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class ConvergenceReport:
    """Per-index sup-norm distance of the normalized density to the Gaussian."""

    entries: tuple  # of (n, sup_distance)

    def to_csv(self) -> str:
        lines = ["n,sup_distance"]
        for n, d in self.entries:
            lines.append(f"{n},{d:.17g}")
        return "\n".join(lines) + "\n"


class BetaParams:
    """Beta distribution parameters restricted to positive half-integers."""

    __slots__ = ("alpha", "beta")

    def __init__(self, alpha, beta):
        a, b = Fraction(alpha), Fraction(beta)
        for v in (a, b):
            if v <= 0 or (2 * v).denominator != 1:
                raise DomainError(f"parameters must be positive half-integers, got {v}")
        self.alpha = a
        self.beta = b


def _gamma_half(twice: int):
    """Gamma(twice/2) as (rational, power of sqrt(pi) in {0, 1})."""
    if twice % 2 == 0:
        return Fraction(math.factorial(twice // 2 - 1)), 0
    k = (twice - 1) // 2
    return Fraction(odd_double_factorial(k), 2**k), 1


@lru_cache(maxsize=None)
def _beta_value(twice_a: int, twice_b: int) -> float:
    """B(a, b) for half-integer a, b via exact factorial identities."""
    fa, pa = _gamma_half(twice_a)
    fb, pb = _gamma_half(twice_b)
    fc, pc = _gamma_half(twice_a + twice_b)
    frac = fa * fb / fc
    return float(frac) * math.pi ** ((pa + pb - pc) / 2.0)


def beta_density(p: BetaParams, u) -> float:
    """Beta(alpha, beta) density at u in (0, 1)."""
    uu = np.asarray(u, dtype=float)
    if np.any((uu <= 0.0) | (uu >= 1.0)):
        raise DomainError("beta_density requires 0 < u < 1")
    bval = _beta_value(int(2 * p.alpha), int(2 * p.beta))
    a = float(p.alpha)
    b = float(p.beta)
    out = uu ** (a - 1.0) * (1.0 - uu) ** (b - 1.0) / bval
    return float(out[()]) if np.ndim(u) == 0 else out


@lru_cache(maxsize=None)
def _cn(n: int) -> float:
    return float(scaled_norm_const(n)) / (2.0 * math.pi)


def density_ultra(n: int, x):
    """Ultraspherical density c_n (4 - x^2)^(n - 1/2) on [-2, 2], else 0."""
    check_index(n)
    xx = np.asarray(x, dtype=float)
    inside = np.abs(xx) < 2.0
    out = np.zeros_like(xx)
    out[inside] = _cn(n) * (4.0 - xx[inside] ** 2) ** (n - 0.5)
    return float(out[()]) if np.ndim(x) == 0 else out


def stieltjes_invert(n: int, x, eps: float):
    """Density recovered from the transform: -Im G_n(x + i*eps) / pi."""
    check_index(n)
    if eps <= 0:
        raise DomainError("eps must be positive")
    xx = np.asarray(x, dtype=float)
    if np.any(np.abs(xx) >= 2.0):
        raise DomainError("stieltjes_invert is defined for |x| < 2")
    vals = gn_closed(n, xx + 1j * eps)
    out = -np.imag(vals) / math.pi
    return float(np.asarray(out)[()]) if np.ndim(x) == 0 else out


def check_beta_symmetric(n: int, grid) -> float:
    """Max residual of the affine push-forward onto Beta(n+1/2, n+1/2).

    Under u = (2 - x)/4 the family density maps to the symmetric Beta law;
    the residual compares 4 * density(2 - 4u) with the Beta density.
    """
    check_index(n)
    u = np.asarray(grid, dtype=float)
    if u.size == 0:
        raise ValueError("grid must be nonempty")
    lhs = 4.0 * density_ultra(n, 2.0 - 4.0 * u)
    rhs = beta_density(BetaParams(Fraction(2 * n + 1, 2), Fraction(2 * n + 1, 2)), u)
    return float(np.max(np.abs(lhs - rhs)))


def check_beta_square(n: int, grid) -> float:
    """Max residual of the quarter-square push-forward onto Beta(1/2, n+1/2).

    Y = X^2/4 folds both branches by symmetry, giving density
    2 * density(2*sqrt(u)) / sqrt(u); the reflected variable 1 - Y is checked
    against Beta(n+1/2, 1/2) as well.  Returns the larger of the two maxima.
    """
    check_index(n)
    u = np.asarray(grid, dtype=float)
    if u.size == 0:
        raise ValueError("grid must be nonempty")
    half = Fraction(1, 2)
    nph = Fraction(2 * n + 1, 2)
    lhs = 2.0 * density_ultra(n, 2.0 * np.sqrt(u)) / np.sqrt(u)
    r1 = np.max(np.abs(lhs - beta_density(BetaParams(half, nph), u)))
    lhs_ref = 2.0 * density_ultra(n, 2.0 * np.sqrt(1.0 - u)) / np.sqrt(1.0 - u)
    r2 = np.max(np.abs(lhs_ref - beta_density(BetaParams(nph, half), u)))
    return float(max(r1, r2))


def moment(n: int, order: int, n_max: int = 1 << 15) -> float:
    """Moment of the n-th density by quadrature; odd orders vanish by symmetry.

    Uses t = 2cos(theta): the integrand becomes a smooth periodic function,
    so the doubling trapezoid rule converges spectrally.
    """
    check_index(n)
    if order < 0:
        raise ValueError("order must be nonnegative")
    if order % 2 == 1:
        return 0.0

    def trap(m):
        theta = np.arange(m) * (2.0 * np.pi / m)
        vals = (2.0 * np.cos(theta)) ** order * np.sin(theta) ** (2 * n)
        return _cn(n) * 4.0**n * np.pi / m * vals.sum()

    m = 64
    prev = trap(m)
    while m < n_max:
        m *= 2
        cur = trap(m)
        if abs(cur - prev) <= 1e-14 * max(1.0, abs(cur)):
            return float(cur)
        prev = cur
    return float(prev)


def poincare_report(n_list, x_grid) -> ConvergenceReport:
    """Sup-norm distance of each normalized density to the standard Gaussian."""
    ns = sorted(set(int(n) for n in n_list))
    x = np.asarray(x_grid, dtype=float)
    if not ns or x.size == 0:
        raise ValueError("n_list and x_grid must be nonempty")
    gauss = np.exp(-(x**2) / 2.0) / math.sqrt(2.0 * math.pi)
    entries = []
    for n in ns:
        sigma = math.sqrt(moment(n, 2))
        dist = float(np.max(np.abs(sigma * density_ultra(n, sigma * x) - gauss)))
        entries.append((n, dist))
    return ConvergenceReport(tuple(entries))
