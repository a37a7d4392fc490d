"""Branch-correct Cauchy transforms of the ultraspherical family.

Everything is evaluated on the slit plane C \\ ((-inf,-2] u [2,+inf)).  Real
inputs inside the gap (-2, 2) are read as limits from the upper half-plane.
All operations accept scalars or numpy arrays of complex numbers and are
pure, so grid sweeps can run in parallel.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .config import DEFAULT, DomainError, PrecisionWarning
from .exact import build_P, build_Q, catalan, check_index, scaled_norm_const

__all__ = [
    "IdentityResidual",
    "classify",
    "sqrt_asym",
    "g1_continued",
    "g1_offcut",
    "gn_closed",
    "gn_recurrence",
    "gn_quadrature",
    "gn_derivative",
    "check_derivative_identity",
    "check_eq3",
    "estimate_dn",
]


@dataclass(frozen=True)
class IdentityResidual:
    """|LHS - RHS| of a named identity at a point."""

    point: complex
    residual: float
    identity_name: str


# ---------------------------------------------------------------------------
# domain handling

def _as_complex(z):
    """Coerce to a complex array, folding -0.0 imaginary parts to +0.0.

    The fold makes the gap a limit from above regardless of the sign of a
    zero imaginary part the caller happened to produce.
    """
    arr = np.asarray(z, dtype=complex)
    if not np.all(np.isfinite(arr)):
        raise DomainError("input must have finite components")
    mask = arr.imag == 0.0
    if np.any(mask):
        arr = np.where(mask, arr.real + 0.0j, arr)
    return arr


def _ret(values, like):
    return complex(values[()]) if np.ndim(like) == 0 else values


def _require_slit_plane(arr):
    # +-2 themselves are admitted as boundary limits from the upper half-plane
    on_cut = (arr.imag == 0.0) & (np.abs(arr.real) > 2.0)
    if np.any(on_cut):
        raise DomainError("point lies on the forbidden rays (-inf,-2] u [2,+inf)")


def classify(z) -> str:
    """Region tag of a slit-plane point: 'upper', 'lower' or 'gap'."""
    arr = _as_complex(z)
    if arr.ndim != 0:
        raise TypeError("classify takes a single point")
    _require_slit_plane(arr)
    im = float(arr.imag)
    if im > 0:
        return "upper"
    if im < 0:
        return "lower"
    return "gap"


# ---------------------------------------------------------------------------
# semicircle transform and its two extensions

def sqrt_asym(z):
    """The square root of z^2 - 4 cut along [-2, 2] and asymptotic to z.

    Realized as sqrt(z-2)*sqrt(z+2) with principal square roots: the two
    half-line cuts cancel outside [-2, 2], leaving exactly the required
    branch with s(z)/z -> 1 at infinity.
    """
    arr = _as_complex(z)
    if np.any((arr.imag == 0.0) & (np.abs(arr.real) <= 2.0)):
        raise DomainError("sqrt_asym is undefined on [-2, 2]")
    return _ret(np.sqrt(arr - 2.0) * np.sqrt(arr + 2.0), z)


def g1_continued(z):
    """Semicircle transform continued through the gap onto all of C^-.

    (z - s(z))/2 on the closed upper half-plane, (z + s(z))/2 below; the two
    glue continuously across (-2, 2) and the range is the closed lower
    half-plane.
    """
    arr = _as_complex(z)
    _require_slit_plane(arr)
    s = np.sqrt(arr - 2.0) * np.sqrt(arr + 2.0)
    w = np.where(arr.imag < 0.0, (arr + s) / 2.0, (arr - s) / 2.0)
    return _ret(w, z)


def g1_offcut(z):
    """Standard semicircle Cauchy transform, analytic off [-2, 2].

    (z - s(z))/2 on both half-planes; satisfies conjugate symmetry.
    """
    arr = _as_complex(z)
    if np.any((arr.imag == 0.0) & (np.abs(arr.real) <= 2.0)):
        raise DomainError("g1_offcut is undefined on [-2, 2]")
    s = np.sqrt(arr - 2.0) * np.sqrt(arr + 2.0)
    return _ret((arr - s) / 2.0, z)


# ---------------------------------------------------------------------------
# the n-th family member

@lru_cache(maxsize=None)
def _poly_pair(n):
    return build_Q(n), build_P(n)


# The polynomial form cancels catastrophically for large |z| in the upper
# half-plane (the two terms grow like |z|^(2n-1) while G itself decays like
# 1/|z|).  Past the radius where the cancellation would cost ~3 digits we
# evaluate the moment series m_0/z + m_2/z^3 + ... instead; the exact moments
# are m_{2k} = (2k)!/k! * n!/(n+k)!, and the series converges for |z| > 2.

_SERIES_TERMS = 260


@lru_cache(maxsize=None)
def _moments_float(n):
    from fractions import Fraction

    return np.array(
        [
            float(
                Fraction(math.factorial(2 * k), math.factorial(k))
                * Fraction(math.factorial(n), math.factorial(n + k))
            )
            for k in range(_SERIES_TERMS)
        ]
    )


@lru_cache(maxsize=None)
def _switch_level(n):
    """Series kicks in where |z^2 - 4|^(n-1) would cancel ~1.5 digits.

    For n = 1 the loss is the z - sqrt(z^2-4) subtraction itself, whose
    relative error grows like |z|^2 eps, so switch at a fixed radius.
    """
    if n == 1:
        return 21.0  # |z^2 - 4| > 21, i.e. roughly |z| > 5
    c = float(scaled_norm_const(n))
    return (30.0 / c) ** (1.0 / (n - 1))


def _series_mask(n, arr):
    # stray root-tracking iterates can be huge; |z^2| overflowing to inf
    # still classifies correctly, so silence the overflow warning
    with np.errstate(over="ignore"):
        return (
            (arr.imag >= 0.0)
            & (np.abs(arr) > 2.5)
            & (np.abs(arr * arr - 4.0) > _switch_level(n))
        )


def _series_eval(n, z, derivative=False):
    """Moment-series value (or derivative) of the transform; needs |z| > 2."""
    m = _moments_float(n)
    amin = float(np.min(np.abs(z)))
    if amin > 1e8:
        # stray iterates from root tracking can land arbitrarily far out;
        # a handful of terms already reaches machine precision there
        terms = 8
    else:
        q = (2.0 / amin) ** 2  # squared convergence ratio
        terms = min(_SERIES_TERMS, max(8, int(math.log(1e-18) / math.log(q)) + 2))
    with np.errstate(over="ignore", under="ignore"):
        zinv2 = 1.0 / (z * z)
    if derivative:
        acc = np.zeros_like(z)
        power = zinv2.copy()
        for k in range(terms):
            acc = acc - (2 * k + 1) * m[k] * power
            power = power * zinv2
        return acc
    acc = np.zeros_like(z)
    power = 1.0 / z
    for k in range(terms):
        acc = acc + m[k] * power
        power = power * zinv2
    return acc


def gn_closed(n: int, z):
    """Transform of the n-th family member on the slit plane.

    Q_n(z^2) * G_1(z) + z * P_n(z^2) where the polynomial form is stable,
    switching to the moment series in the far upper half-plane.
    """
    check_index(n)
    arr = _as_complex(z)
    _require_slit_plane(arr)
    q, p = _poly_pair(n)
    far = _series_mask(n, arr)
    s = np.sqrt(arr - 2.0) * np.sqrt(arr + 2.0)
    g1 = np.where(arr.imag < 0.0, (arr + s) / 2.0, (arr - s) / 2.0)
    z2 = arr * arr
    val = q(z2) * g1 + arr * p(z2)
    if np.any(far):
        if arr.ndim == 0:
            val = _series_eval(n, arr.reshape(1))[0]
        else:
            val = np.array(val, copy=True)
            val[far] = _series_eval(n, arr[far])
    return _ret(np.asarray(val, dtype=complex), z)


def gn_recurrence(n: int, z):
    """Same transform grown from the semicircle by the family recurrence."""
    check_index(n)
    arr = _as_complex(z)
    _require_slit_plane(arr)
    w = g1_continued(arr)
    z2 = arr * arr
    for k in range(1, n):
        w = (k + 1) / (2.0 * (2 * k + 1)) * ((4.0 - z2) * w + arr)
    return _ret(np.asarray(w, dtype=complex), z)


def gn_derivative(n: int, z):
    """Analytic derivative of the closed form (no finite differences).

    Uses w' = w / (2w - z) for w = g1_continued(z), which follows from the
    quadratic relation w^2 - zw + 1 = 0.  Singular exactly at z = +-2.
    """
    check_index(n)
    arr = _as_complex(z)
    _require_slit_plane(arr)
    if np.any((arr == 2.0) | (arr == -2.0)):
        raise DomainError("derivative is singular at z = +-2")
    q, p = _poly_pair(n)
    dq = RationalDeriv.of(q)
    dp = RationalDeriv.of(p)
    far = _series_mask(n, arr)
    s = np.sqrt(arr - 2.0) * np.sqrt(arr + 2.0)
    w = np.where(arr.imag < 0.0, (arr + s) / 2.0, (arr - s) / 2.0)
    wp = w / (2.0 * w - arr)
    z2 = arr * arr
    val = 2.0 * arr * dq(z2) * w + q(z2) * wp + p(z2) + 2.0 * z2 * dp(z2)
    if np.any(far):
        if arr.ndim == 0:
            val = _series_eval(n, arr.reshape(1), derivative=True)[0]
        else:
            val = np.array(val, copy=True)
            val[far] = _series_eval(n, arr[far], derivative=True)
    return _ret(np.asarray(val, dtype=complex), z)


class RationalDeriv:
    """Tiny cache for formal derivatives of the kernel polynomials."""

    _cache: dict = {}

    @classmethod
    def of(cls, poly):
        key = poly.coeffs
        if key not in cls._cache:
            from .exact import RationalPolynomial

            cls._cache[key] = RationalPolynomial(
                [j * c for j, c in enumerate(poly.coeffs)][1:]
            )
        return cls._cache[key]


# ---------------------------------------------------------------------------
# quadrature oracle

class _PeriodicCauchyQuad:
    """(1/2) * integral over [0, 2pi] of F(theta) / (z - 2cos(theta)).

    F must be smooth, 2pi-periodic and reflection symmetric,
    F(2pi - theta) = F(theta); then the half-circle integral that arises from
    the substitution t = 2cos(theta) equals half the full-circle one and the
    trapezoid rule converges spectrally.
    """

    def __init__(self, ffunc, target=None, n_start=128, n_max=1 << 17):
        self.ffunc = ffunc
        self.target = DEFAULT.quad_target if target is None else target
        self.n_start = n_start
        self.n_max = n_max
        self._tables = {}

    def _table(self, m):
        if m not in self._tables:
            theta = np.arange(m) * (2.0 * np.pi / m)
            self._tables[m] = (theta, 2.0 * np.cos(theta), self.ffunc(theta))
        return self._tables[m]

    def _trapezoid(self, m, z):
        _, two_cos, fvals = self._table(m)
        # z may be scalar or an array; broadcast against the theta axis
        zz = np.asarray(z, dtype=complex)[..., None]
        vals = fvals / (zz - two_cos)
        return np.pi / m * vals.sum(axis=-1)

    def value(self, z):
        prev = self._trapezoid(self.n_start, z)
        m = self.n_start
        while m < self.n_max:
            m *= 2
            cur = self._trapezoid(m, z)
            if np.max(np.abs(cur - prev)) <= self.target:
                return cur
            prev = cur
        warnings.warn(
            "quadrature failed to reach its absolute error target",
            PrecisionWarning,
            stacklevel=2,
        )
        return prev

    def boundary(self, x):
        """Limit from the upper half-plane at real x in the gap (-2, 2).

        Principal value by singularity subtraction (the zero-mean kernel
        integrates to zero in the gap) plus the half-residue imaginary part.
        """
        theta0 = math.acos(x / 2.0)
        f0 = float(self.ffunc(np.array([theta0]))[0])
        sin0 = math.sin(theta0)

        def pv(m):
            theta, two_cos, fvals = self._table(m)
            denom = x - two_cos
            num = fvals - f0
            out = np.empty_like(fvals)
            near = np.abs(denom) < 1e-300
            if np.any(near):
                h = 1e-6
                fp = (self.ffunc(np.array([theta0 + h]))[0]
                      - self.ffunc(np.array([theta0 - h]))[0]) / (2.0 * h)
                out[near] = fp / (2.0 * sin0)
            out[~near] = num[~near] / denom[~near]
            return np.pi / m * out.sum()

        prev = pv(self.n_start)
        m = self.n_start
        while m < self.n_max:
            m *= 2
            cur = pv(m)
            if abs(cur - prev) <= self.target:
                prev = cur
                break
            prev = cur
        return prev - 1j * math.pi * f0 / (2.0 * sin0)


@lru_cache(maxsize=None)
def _ultra_quad(n):
    cn = float(scaled_norm_const(n)) / (2.0 * math.pi)
    scale = cn * 4.0**n

    def fvals(theta):
        return scale * np.sin(theta) ** (2 * n)

    return _PeriodicCauchyQuad(fvals)


def gn_quadrature(n: int, z):
    """Numerical Cauchy integral of the n-th density (independent oracle).

    Under t = 2cos(theta) the endpoint square-root singularity becomes a
    smooth periodic integrand for every n >= 1.  Defined for Im z > 0; real
    z in the gap are handled as boundary values (principal value plus the
    half-residue term), matching the limit from above.
    """
    check_index(n)
    arr = _as_complex(z)
    _require_slit_plane(arr)
    if np.any(arr.imag < 0.0):
        raise DomainError("quadrature oracle requires Im z >= 0")
    quad = _ultra_quad(n)
    if arr.ndim == 0:
        if arr.imag == 0.0:
            return quad.boundary(float(arr.real))
        return complex(quad.value(arr))
    out = np.empty(arr.shape, dtype=complex)
    gap = arr.imag == 0.0
    if np.any(~gap):
        out[~gap] = quad.value(arr[~gap])
    for idx in np.argwhere(gap):
        out[tuple(idx)] = quad.boundary(float(arr[tuple(idx)].real))
    return out


# ---------------------------------------------------------------------------
# identity residuals

def check_derivative_identity(n: int, z) -> IdentityResidual:
    """Residual of G'_{n+1}(z) = (n+1)/2 * (1 - z * G_n(z))."""
    check_index(n)
    zc = complex(z)
    lhs = gn_derivative(n + 1, zc)
    rhs = (n + 1) / 2.0 * (1.0 - zc * gn_closed(n, zc))
    # both sides grow polynomially below the axis, so normalize by their
    # magnitude once it exceeds unity
    scale = max(1.0, abs(lhs), abs(rhs))
    return IdentityResidual(zc, abs(lhs - rhs) / scale, "derivative-recursion")


def check_eq3(k: int, z) -> IdentityResidual:
    """Residual of the Catalan moment expansion of the weighted integral.

    (1/2pi) * int t^{2k} sqrt(4-t^2) / (z-t) dt versus
    z^{2k} G_1(z) - sum_{j<k} C_j z^{2(k-j)-1}.  The integral side is
    evaluated by the quadrature oracle, so Im z >= 0 is required.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    zc = complex(z)
    if zc.imag < 0:
        raise DomainError("the quadrature side requires Im z >= 0")
    quad = _eq3_quad(k)
    if zc.imag == 0.0:
        lhs = quad.boundary(zc.real)
    else:
        lhs = complex(quad.value(zc))
    rhs = zc ** (2 * k) * g1_continued(zc) - sum(
        catalan(j) * zc ** (2 * (k - j) - 1) for j in range(k)
    )
    return IdentityResidual(zc, abs(lhs - rhs), "catalan-moment-expansion")


@lru_cache(maxsize=None)
def _eq3_quad(k):
    def fvals(theta):
        return (2.0 / math.pi) * (2.0 * np.cos(theta)) ** (2 * k) * np.sin(theta) ** 2

    return _PeriodicCauchyQuad(fvals)


# ---------------------------------------------------------------------------
# the constant-ratio estimate

def _cut_distance(z: complex) -> float:
    x, y = z.real, z.imag
    d_right = abs(z - 2.0) if x < 2.0 else abs(y)
    d_left = abs(z + 2.0) if x > -2.0 else abs(y)
    return min(d_right, d_left)


def estimate_dn(n: int, sample, nodes: int = 128):
    """Empirical constant in the derivative/power relation and its spread.

    Computes the (n-1)-st derivative of the closed form at each sample point
    by trapezoid contour integration on a circle that stays inside the slit
    plane, forms r(z) = (-1)^n n! G^{(n-1)}(z) / G_1(z)^n, and returns
    (mean of Re r, max deviation of r from the mean).  A small spread
    certifies that the ratio is a constant d_n; its sign is reported, not
    assumed.
    """
    check_index(n)
    pts = [complex(p) for p in sample]
    if len(pts) < 2:
        raise ValueError("need at least 2 sample points")
    m = n - 1
    theta = np.arange(nodes) * (2.0 * np.pi / nodes)
    phase = np.exp(1j * theta)
    down = np.exp(-1j * m * theta)
    ratios = []
    for z in pts:
        r = min(0.25, 0.5 * _cut_distance(z))
        if r <= 0.0:
            raise DomainError(f"sample point {z} lies on the forbidden rays")
        ring = z + r * phase
        vals = gn_closed(n, ring)
        deriv = math.factorial(m) * np.mean(vals * down) / r**m
        ratios.append((-1) ** n * math.factorial(n) * deriv / g1_continued(z) ** n)
    ratios = np.asarray(ratios)
    center = ratios.mean()
    spread = float(np.max(np.abs(ratios - center)))
    return float(center.real), spread
